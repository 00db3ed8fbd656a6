"""Pure single-mode states in a truncated number basis.

Conventions: S(zeta) = exp((zeta* a^2 - zeta a^dag^2)/2) with
zeta = r exp(i theta), D(alpha) = exp(alpha a^dag - alpha* a), and the
squeezed coherent state is D(alpha) S(zeta)|0>. For real alpha and
theta = 0 the X1 = (a + a^dag)/2 quadrature is the squeezed one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, TruncationError
from .linalg import annihilation, expm
from .special import log_factorial

DEFAULT_TAIL_TOL = 1e-10


@dataclass(frozen=True)
class SqueezeParam:
    """Squeeze magnitude ``r >= 0`` and phase ``theta`` (radians)."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if not (self.r >= 0.0 and math.isfinite(self.r)):
            raise ValueError(f"squeeze magnitude must be finite and >= 0, got {self.r}")

    @classmethod
    def from_photons(cls, n_s: float, theta: float = 0.0) -> "SqueezeParam":
        """Squeeze parameter with mean photon number ``sinh(r)**2 == n_s``."""
        if n_s < 0:
            raise ValueError("n_s must be >= 0")
        return cls(math.asinh(math.sqrt(n_s)), theta)

    @property
    def n_s(self) -> float:
        return math.sinh(self.r) ** 2

    @property
    def mu(self) -> float:
        return math.cosh(self.r)

    @property
    def nu(self) -> float:
        return math.sinh(self.r)

    @property
    def zeta(self) -> complex:
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True, eq=False)
class FockVector:
    """Amplitudes c_n = <n|psi> for n = 0 .. n_max-1.

    ``tail_mass`` is the probability discarded by the cutoff,
    1 - sum |c_n|^2 up to rounding.
    """

    amplitudes: np.ndarray
    tail_mass: float

    @property
    def n_max(self) -> int:
        return len(self.amplitudes)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


def default_n_max(n_c: float, n_s: float) -> int:
    """Starting cutoff ceil(N + 10 sqrt(N + 1)) + 20 with N = n_c + n_s.

    This is only a first guess; callers that need a certified tail use
    :func:`required_n_max`.
    """
    total = n_c + n_s
    return int(math.ceil(total + 10.0 * math.sqrt(total + 1.0))) + 20


def required_n_max(probabilities, n_c: float, n_s: float,
                   tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    """Smallest cutoff, at least :func:`default_n_max`, whose tail mass is
    below ``tail_tol``.

    ``probabilities(n)`` must return the first ``n`` photon-number
    probabilities of a normalized state. The trial length is doubled until
    the tail of the trial itself is resolved.
    """
    start = default_n_max(n_c, n_s)
    length = 2 * start
    for _ in range(12):
        p = np.asarray(probabilities(length))
        tail = 1.0 - np.cumsum(p)
        ok = np.nonzero(tail < tail_tol)[0]
        if ok.size and ok[0] + 1 < length:
            return max(start, int(ok[0]) + 1)
        length *= 2
    raise TruncationError(f"could not reach tail mass {tail_tol:g} for n_c={n_c}, n_s={n_s}")


def _check_tail(amps: np.ndarray, tail_tol: float, what: str) -> float:
    if not np.all(np.isfinite(amps)):
        raise NonConvergence(f"{what}: non-finite amplitudes")
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    if tail > tail_tol:
        raise TruncationError(
            f"{what}: tail mass {tail:.3e} beyond n_max={len(amps)} exceeds {tail_tol:.1e}")
    return max(tail, 0.0)


def coherent_amplitudes(alpha: complex, n_max: int,
                        tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Coherent state amplitudes exp(-|alpha|^2/2) alpha^n / sqrt(n!)."""
    n = np.arange(n_max)
    amps = np.zeros(n_max, dtype=complex)
    mag = abs(alpha)
    if mag == 0.0:
        amps[0] = 1.0
    else:
        log_mod = -0.5 * mag * mag + n * math.log(mag) - 0.5 * log_factorial(n)
        amps[:] = np.exp(log_mod + 1j * n * np.angle(alpha))
    return FockVector(amps, _check_tail(amps, tail_tol, "coherent state"))


def squeezed_vacuum_amplitudes(zeta: SqueezeParam, n_max: int,
                               tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Squeezed vacuum S(zeta)|0>; odd amplitudes are exactly zero.

    c_{2m} = (-exp(i theta) tanh r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r)
    """
    amps = np.zeros(n_max, dtype=complex)
    if zeta.r == 0.0:
        amps[0] = 1.0
    else:
        m = np.arange((n_max + 1) // 2)
        log_mod = (-0.5 * math.log(math.cosh(zeta.r)) + m * math.log(math.tanh(zeta.r))
                   + 0.5 * log_factorial(2 * m) - m * math.log(2.0) - log_factorial(m))
        amps[::2] = np.exp(log_mod + 1j * m * (math.pi + zeta.theta))
    return FockVector(amps, _check_tail(amps, tail_tol, "squeezed vacuum"))


def _squeezed_coherent_recurrence(alpha: complex, zeta: SqueezeParam, length: int) -> np.ndarray:
    # [(a - alpha) cosh r + (a^dag - alpha*) e^{i theta} sinh r] |psi> = 0, projected on <n|
    mu = math.cosh(zeta.r)
    nu = complex(math.cos(zeta.theta), math.sin(zeta.theta)) * math.sinh(zeta.r)
    gamma = alpha * mu + np.conj(alpha) * nu
    c = np.zeros(length, dtype=complex)
    c[0] = np.exp(-0.5 * abs(alpha) ** 2
                  - 0.5 * np.conj(alpha) ** 2 * (nu / mu)) / math.sqrt(mu)
    if length > 1:
        c[1] = gamma * c[0] / mu
    sq = np.sqrt(np.arange(length, dtype=float))
    for n in range(1, length - 1):
        c[n + 1] = (gamma * c[n] - nu * sq[n] * c[n - 1]) / (mu * sq[n + 1])
    return c


def squeezed_coherent_amplitudes(alpha: complex, zeta: SqueezeParam, n_max: int,
                                 tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Amplitudes of D(alpha) S(zeta)|0> by three-term recurrence.

    The recurrence is run past ``n_max`` so that a recurrence blow-up
    (total norm above one) is told apart from an honest truncation.

    Raises
    ------
    TruncationError
        Tail mass beyond ``n_max`` exceeds ``tail_tol``.
    NonConvergence
        The extended norm deviates from one by more than ``tail_tol``.
    """
    if zeta.r == 0.0:
        return coherent_amplitudes(alpha, n_max, tail_tol)
    ext = _squeezed_coherent_recurrence(alpha, zeta, 2 * n_max + 64)
    amps = ext[:n_max].copy()
    tail = _check_tail(amps, tail_tol, "squeezed coherent state")
    total = float(np.sum(np.abs(ext) ** 2))
    if not math.isfinite(total) or abs(total - 1.0) > tail_tol:
        raise NonConvergence(f"recurrence norm {total!r} deviates from 1")
    return FockVector(amps, tail)


def oracle_state_vector(alpha: complex, zeta: SqueezeParam, n_max: int, padding: int = 40,
                        tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Brute-force D(alpha) S(zeta)|0> from matrix exponentials of the
    truncated generators, cut back to ``n_max``.

    The working space has ``n_max + max(padding, n_max)`` levels; with only
    a fixed pad the truncated squeeze generator leaks ~1e-7 at r = 1.5.
    """
    dim = n_max + max(padding, n_max)
    a = annihilation(dim)
    ad = a.conj().T
    z = zeta.zeta
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1.0
    psi = expm(0.5 * (np.conj(z) * (a @ a) - z * (ad @ ad))) @ vac
    psi = expm(alpha * ad - np.conj(alpha) * a) @ psi
    amps = psi[:n_max].copy()
    return FockVector(amps, _check_tail(amps, tail_tol, "oracle state"))
