"""Resonant Jaynes-Cummings evolution with the atom starting excited.

Time is the dimensionless product lambda*t. Joint matrices use the
atom-major layout [[ee, eg], [ge, gg]] with n_max x n_max field blocks.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch
from .linalg import annihilation, expm
from .special import log_factorial
from .states import FieldParams, Kind, choose_n_max

DEFAULT_T_MAX = 50.0
DEFAULT_POINTS = 2001


def time_grid(t_max: float = DEFAULT_T_MAX, points: int = DEFAULT_POINTS) -> np.ndarray:
    """Evenly spaced lambda*t values on [0, t_max]."""
    if points < 2 or t_max <= 0:
        raise ValueError("need t_max > 0 and at least two points")
    return np.linspace(0.0, t_max, points)


def _check_grid(grid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size and (grid[0] < 0 or np.any(np.diff(grid) <= 0)):
        raise ValueError("time grid must be strictly increasing and start at >= 0")
    return grid


class Blocks:
    """Diagonal and one-off-diagonal data of the evolution operator blocks.

    C = cos(t sqrt(a a^dag)), C' = cos(t sqrt(a^dag a)),
    S = -i a^dag sin(t sqrt(a a^dag))/sqrt(a a^dag),
    S' = -i a sin(t sqrt(a^dag a))/sqrt(a^dag a).
    Only the diagonals of C, C' and the off-diagonals of S, S' are stored.
    """

    def __init__(self, t: float, n_max: int):
        if t < 0:
            raise ValueError("t must be >= 0")
        n = np.arange(n_max, dtype=float)
        self.t = t
        self.n_max = n_max
        self.c = np.cos(t * np.sqrt(n + 1.0))
        self.c_prime = np.cos(t * np.sqrt(n))
        # S|n> = -i sin(t sqrt(n+1)) |n+1>, S'|n> = -i sin(t sqrt(n)) |n-1>
        self.s = np.sin(t * np.sqrt(n + 1.0))

    def apply_s(self, x: np.ndarray) -> np.ndarray:
        """S @ x (x a vector or matrix); the top level maps out of the space."""
        y = np.zeros_like(x, dtype=complex)
        y[1:] = -1j * (self.s[:-1] * x[:-1].T).T
        return y

    def right_s_dag(self, x: np.ndarray) -> np.ndarray:
        """x @ S^dag, which equals -x @ S'."""
        y = np.zeros_like(x, dtype=complex)
        y[:, 1:] = 1j * x[:, :-1] * self.s[:-1]
        return y

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        n_max = self.n_max
        c = np.diag(self.c).astype(complex)
        c_prime = np.diag(self.c_prime).astype(complex)
        s = np.zeros((n_max, n_max), dtype=complex)
        s_prime = np.zeros((n_max, n_max), dtype=complex)
        idx = np.arange(n_max - 1)
        s[idx + 1, idx] = -1j * self.s[:-1]
        s_prime[idx, idx + 1] = -1j * self.s[:-1]
        return c, s, c_prime, s_prime


def evolution_blocks(t: float, n_max: int):
    """Dense (C, S, C', S') on ``n_max`` Fock levels at time ``t``.

    The n = 0 value of sin(t sqrt(n))/sqrt(n) is its limit t; it multiplies
    a|0> = 0, so S' has no entry for it.
    """
    return Blocks(t, n_max).matrices()


def evolution_operator(t: float, n_max: int) -> np.ndarray:
    """U(t) = [[C, S'], [S, C']] as a 2 n_max square matrix."""
    c, s, c_prime, s_prime = evolution_blocks(t, n_max)
    return np.block([[c, s_prime], [s, c_prime]])


def interaction_hamiltonian(n_max: int) -> np.ndarray:
    """sigma_+ a + sigma_- a^dag (lambda = 1) in the atom-major basis (e, g)."""
    a = annihilation(n_max)
    sigma_plus = np.array([[0.0, 1.0], [0.0, 0.0]])
    return np.kron(sigma_plus, a) + np.kron(sigma_plus.T, a.conj().T)


def evolution_oracle(t: float, n_max: int, padding: int = 40) -> np.ndarray:
    """exp(-i H_I t) on ``n_max + padding`` levels, restricted to the first
    ``n_max`` levels of each atomic block."""
    dim = n_max + padding
    u = expm(-1j * t * interaction_hamiltonian(dim))
    keep = np.concatenate([np.arange(n_max), dim + np.arange(n_max)])
    return u[np.ix_(keep, keep)]


def evolve_joint(rho_field: np.ndarray, t: float) -> np.ndarray:
    """Joint atom-field density at time ``t`` for rho_atom(0) = |e><e|.

    Blocks: ee = C rho C, eg = -C rho S', ge = S rho C, gg = -S rho S'.
    """
    rho = np.asarray(rho_field)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"field density must be square, got {rho.shape}")
    b = Blocks(t, rho.shape[0])
    c_rho = b.c[:, None] * rho
    s_rho = b.apply_s(rho)
    ee = c_rho * b.c[None, :]
    eg = b.right_s_dag(c_rho)
    ge = s_rho * b.c[None, :]
    gg = b.right_s_dag(s_rho)
    return np.block([[ee, eg], [ge, gg]])


def split_blocks(joint: np.ndarray):
    joint = np.asarray(joint)
    dim = joint.shape[0]
    if joint.ndim != 2 or dim != joint.shape[1] or dim % 2:
        raise DimensionMismatch(f"joint density must be square with even size, got {joint.shape}")
    n = dim // 2
    return joint[:n, :n], joint[:n, n:], joint[n:, :n], joint[n:, n:]


def reduce_to_atom(joint: np.ndarray) -> np.ndarray:
    """Partial trace over the field; rows and columns ordered (e, g)."""
    ee, eg, ge, gg = split_blocks(joint)
    return np.array([[np.trace(ee), np.trace(eg)], [np.trace(ge), np.trace(gg)]])


def inversion_series(pcd, grid) -> np.ndarray:
    """W(t) = sum_n P(n) cos(2 t sqrt(n + 1))."""
    p = np.asarray(pcd, dtype=float)
    grid = _check_grid(grid)
    freq = 2.0 * np.sqrt(np.arange(1, len(p) + 1, dtype=float))
    return np.cos(np.outer(grid, freq)) @ p


def inversion_mscs_closed(params: FieldParams, grid, n_max: int | None = None) -> np.ndarray:
    """Atomic inversion of the mixture with the even/odd photon sums kept
    separate:

        sum_k [q e^-Nc Nc^2k/(2k)! + (1-q)/sqrt(1+Ns) (2k)!/(2^2k k!^2)
               (Ns/(1+Ns))^k] cos(2t sqrt(2k+1))
            + q e^-Nc Nc^(2k+1)/(2k+1)! cos(2t sqrt(2k+2))
    """
    if params.kind is not Kind.MSCS:
        raise ValueError("closed-form inversion applies to MSCS only")
    grid = _check_grid(grid)
    if n_max is None:
        n_max = choose_n_max(params)
    q, n_c, n_s = params.q, params.n_c, params.n_s
    k = np.arange((n_max + 1) // 2, dtype=float)
    even_n, odd_n = 2 * k, 2 * k + 1

    def poisson(n):
        if n_c == 0:
            return (n == 0).astype(float)
        return np.exp(-n_c + n * math.log(n_c) - log_factorial(n))

    if n_s == 0:
        squeezed = (k == 0).astype(float)
    else:
        squeezed = np.exp(-0.5 * math.log1p(n_s) + log_factorial(even_n)
                          - even_n * math.log(2.0) - 2.0 * log_factorial(k)
                          + k * math.log(n_s / (1.0 + n_s)))
    even_w = q * poisson(even_n) + (1.0 - q) * squeezed
    odd_w = q * poisson(odd_n)
    odd_w = odd_w[: n_max // 2]
    w = np.cos(2.0 * np.outer(grid, np.sqrt(even_n + 1.0))) @ even_w
    w += np.cos(2.0 * np.outer(grid, np.sqrt(odd_n[: n_max // 2] + 1.0))) @ odd_w
    return w


def inversion_trace(rho_field: np.ndarray, grid) -> np.ndarray:
    """W(t) = Tr[rho_atom(t) sigma_z] from the evolved joint density."""
    grid = _check_grid(grid)
    out = np.empty(grid.size)
    for i, t in enumerate(grid):
        atom = reduce_to_atom(evolve_joint(rho_field, t))
        out[i] = (atom[0, 0] - atom[1, 1]).real
    return out
