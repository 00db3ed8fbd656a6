"""Field observables: quadratures, Mandel's Q and the Wigner function.

Quadratures are X1 = (a + a^dag)/2 and X2 = (a - a^dag)/(2i), taken in
the frame rotating at the field frequency, a -> a exp(-i omega t). The
Wigner function is normalized so that the coherent state |gamma> gives
(2/pi) exp(-2|alpha - gamma|^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, GridTooSmall
from .linalg import annihilation, expm
from .states import FieldParams, Kind

DEFAULT_RE_RANGE = (-2.0, 8.0)
DEFAULT_IM_RANGE = (-5.0, 5.0)
DEFAULT_STEP = 0.05
MIN_CAPTURED_MASS = 0.999


def _require_mscs(params: FieldParams):
    if params.kind is not Kind.MSCS:
        raise ValueError("expected MSCS parameters")


@dataclass(frozen=True)
class QuadratureReport:
    mean_x1: float
    mean_x2: float
    var_x1: float
    var_x2: float
    omega_t: float

    @property
    def product(self) -> float:
        """sqrt(var_x1 var_x2), bounded below by 1/4."""
        return math.sqrt(self.var_x1 * self.var_x2)


def quadrature_means_mscs(params: FieldParams, omega_t: float) -> tuple[float, float]:
    """(q|alpha| cos(wt - phi), -q|alpha| sin(wt - phi))."""
    _require_mscs(params)
    amp = params.q * abs(params.alpha)
    phase = omega_t - params.alpha_phase
    return amp * math.cos(phase), -amp * math.sin(phase)


def quadrature_variances_mscs(params: FieldParams, omega_t: float) -> tuple[float, float]:
    """q/4 + (1-q)/4 [cosh^2 r + sinh^2 r -/+ 2 cosh r sinh r cos(2wt - theta)].

    These are the convex sums of the component variances. The variance of
    the mixture itself also carries the mean-shift term returned by
    :func:`mixture_variance_correction`.
    """
    _require_mscs(params)
    q, r = params.q, params.zeta.r
    ch, sh = math.cosh(r), math.sinh(r)
    cross = 2.0 * ch * sh * math.cos(2.0 * omega_t - params.theta)
    base = ch * ch + sh * sh
    return q / 4 + (1 - q) / 4 * (base - cross), q / 4 + (1 - q) / 4 * (base + cross)


def mixture_variance_correction(params: FieldParams, omega_t: float) -> tuple[float, float]:
    """q(1-q) (<X_i>_coh - <X_i>_sq)^2; the squeezed vacuum has zero mean."""
    _require_mscs(params)
    q = params.q
    phase = omega_t - params.alpha_phase
    amp = abs(params.alpha)
    return (q * (1 - q) * (amp * math.cos(phase)) ** 2,
            q * (1 - q) * (amp * math.sin(phase)) ** 2)


def quadrature_report(params: FieldParams, omega_t: float = 0.0) -> QuadratureReport:
    m1, m2 = quadrature_means_mscs(params, omega_t)
    v1, v2 = quadrature_variances_mscs(params, omega_t)
    return QuadratureReport(m1, m2, v1, v2, omega_t)


def quadrature_operators(n_max: int, omega_t: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    a = annihilation(n_max) * np.exp(-1j * omega_t)
    ad = a.conj().T
    return 0.5 * (a + ad), (a - ad) / 2j


def quadrature_moments_trace(rho: np.ndarray, omega_t: float = 0.0) -> QuadratureReport:
    """Means and variances of X1, X2 from Tr(rho X) and Tr(rho X^2).

    The ladder operators are built one level larger than ``rho`` so that
    X^2 has no truncation artefact in the last retained level.
    """
    n_max = rho.shape[0]
    x1, x2 = quadrature_operators(n_max + 1, omega_t)
    pad = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    pad[:n_max, :n_max] = rho
    stats = []
    for x in (x1, x2):
        m = np.trace(pad @ x).real
        stats.append((m, np.trace(pad @ x @ x).real - m * m))
    (m1, v1), (m2, v2) = stats
    return QuadratureReport(m1, m2, v1, v2, omega_t)


def quadrature_discrepancy(params: FieldParams, rho: np.ndarray, omega_t: float = 0.0) -> dict:
    """Compare the convex-sum variances against the trace of the mixture.

    ``residual_*`` is trace - (convex sum + mean-shift correction) and
    should be at rounding level; ``shift_*`` is the size of the omitted
    mean-shift term.
    """
    closed = quadrature_report(params, omega_t)
    traced = quadrature_moments_trace(rho, omega_t)
    c1, c2 = mixture_variance_correction(params, omega_t)
    report = {
        "omega_t": omega_t,
        "var_x1_convex": closed.var_x1,
        "var_x2_convex": closed.var_x2,
        "var_x1_trace": traced.var_x1,
        "var_x2_trace": traced.var_x2,
        "shift_x1": c1,
        "shift_x2": c2,
        "residual_x1": traced.var_x1 - closed.var_x1 - c1,
        "residual_x2": traced.var_x2 - closed.var_x2 - c2,
        "mean_residual": max(abs(traced.mean_x1 - closed.mean_x1),
                             abs(traced.mean_x2 - closed.mean_x2)),
    }
    return {k: float(v) for k, v in report.items()}


def mandel_q(pcd) -> float:
    """Q = <(dn)^2>/<n> - 1, evaluated as (<n(n-1)> - <n>^2)/<n>."""
    p = np.asarray(pcd, dtype=float)
    n = np.arange(len(p), dtype=float)
    mean = float(n @ p)
    if mean <= 0.0:
        raise DegenerateInput("Mandel Q is undefined for <n> = 0")
    fact2 = float((n * (n - 1.0)) @ p)
    return (fact2 - mean * mean) / mean


def mandel_q_mscs_moments(params: FieldParams) -> float:
    """Q from the component moments: Poisson <n(n-1)> = Nc^2, squeezed
    vacuum <n(n-1)> = 3 Ns^2 + Ns."""
    _require_mscs(params)
    q, nc, ns = params.q, params.n_c, params.n_s
    mean = q * nc + (1 - q) * ns
    if mean <= 0.0:
        raise DegenerateInput("Mandel Q is undefined for <n> = 0")
    fact2 = q * nc * nc + (1 - q) * (3 * ns * ns + ns)
    return (fact2 - mean * mean) / mean


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """Wigner values on a rectangular grid; ``values[i, j]`` sits at
    alpha = re[j] + 1j * im[i]."""

    re: np.ndarray
    im: np.ndarray
    values: np.ndarray

    @property
    def step(self) -> float:
        return float(self.re[1] - self.re[0])

    @property
    def re_range(self) -> tuple[float, float]:
        return float(self.re[0]), float(self.re[-1])

    @property
    def im_range(self) -> tuple[float, float]:
        return float(self.im[0]), float(self.im[-1])

    def integral(self) -> float:
        return float(np.trapezoid(np.trapezoid(self.values, self.re, axis=1), self.im))

    def marginal_re(self) -> np.ndarray:
        """Density over Re(alpha), integrated over Im(alpha)."""
        return np.trapezoid(self.values, self.im, axis=0)


def grid_axis(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(count)


def _squeezed_wigner(alpha: np.ndarray, r: float, theta: float) -> np.ndarray:
    z = alpha * math.cosh(r) + np.conj(alpha) * np.exp(1j * theta) * math.sinh(r)
    return 2.0 / math.pi * np.exp(-2.0 * np.abs(z) ** 2)


def wigner_mscs_values(params: FieldParams, alpha) -> np.ndarray:
    """q (2/pi) exp(-2|alpha - gamma|^2) + (1-q) (2/pi) exp(-2|alpha cosh r + alpha* e^{i theta} sinh r|^2).

    For theta = 0 the squeezed term is (2/pi) exp(-2[x^2 e^{2r} + y^2 e^{-2r}]),
    narrow along Re(alpha) like the X1 variance.
    """
    _require_mscs(params)
    alpha = np.asarray(alpha, dtype=complex)
    coh = 2.0 / math.pi * np.exp(-2.0 * np.abs(alpha - params.alpha) ** 2)
    return params.q * coh + (1 - params.q) * _squeezed_wigner(alpha, params.zeta.r, params.theta)


def wigner_mscs_printed_values(params: FieldParams, alpha) -> np.ndarray:
    """Variant with exp(-|alpha cosh r - alpha* e^{i theta} sinh r|^2) in the
    squeezed term; kept only to measure how far it is from the oracle."""
    _require_mscs(params)
    alpha = np.asarray(alpha, dtype=complex)
    coh = 2.0 / math.pi * np.exp(-2.0 * np.abs(alpha - params.alpha) ** 2)
    r = params.zeta.r
    z = alpha * math.cosh(r) - np.conj(alpha) * np.exp(1j * params.theta) * math.sinh(r)
    return params.q * coh + (1 - params.q) * 2.0 / math.pi * np.exp(-np.abs(z) ** 2)


def wigner_mscs(params: FieldParams, re_range=DEFAULT_RE_RANGE, im_range=DEFAULT_IM_RANGE,
                step: float = DEFAULT_STEP, min_mass: float = MIN_CAPTURED_MASS) -> PhaseSpaceGrid:
    """MSCS Wigner function on a grid.

    Raises
    ------
    GridTooSmall
        If the grid quadrature captures less than ``min_mass``.
    """
    re = grid_axis(*re_range, step)
    im = grid_axis(*im_range, step)
    values = wigner_mscs_values(params, re[None, :] + 1j * im[:, None])
    grid = PhaseSpaceGrid(re, im, values)
    mass = grid.integral()
    if mass < min_mass:
        raise GridTooSmall(f"grid captures {mass:.5f} of the Wigner mass (< {min_mass})")
    return grid


def wigner_displaced_parity(rho: np.ndarray, alphas, padding: int | None = None) -> np.ndarray:
    """W(alpha) = (2/pi) sum_n (-1)^n <n| D(-alpha) rho D(-alpha)^dag |n>.

    Works from the density matrix alone, in a working space large enough
    to hold the displaced state.
    """
    rho = np.asarray(rho)
    alphas = np.atleast_1d(np.asarray(alphas, dtype=complex))
    n_max = rho.shape[0]
    out = np.empty(alphas.shape)
    for idx, alpha in np.ndenumerate(alphas):
        pad = padding
        if pad is None:
            pad = max(n_max, int((math.sqrt(n_max) + abs(alpha) + 6.0) ** 2) + 20 - n_max)
        dim = n_max + pad
        a = annihilation(dim)
        disp = expm(-alpha * a.conj().T + np.conj(alpha) * a)
        big = np.zeros((dim, dim), dtype=complex)
        big[:n_max, :n_max] = rho
        moved = disp @ big @ disp.conj().T
        parity = (-1.0) ** np.arange(dim)
        out[idx] = 2.0 / math.pi * float(np.real(parity @ np.diag(moved)))
    return out
