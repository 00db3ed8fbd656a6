"""Field states: pure squeezed coherent (PSCS) and the coherent/squeezed
vacuum mixture (MSCS), their density matrices and photon counting
distributions."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import TruncationError
from .fock import (
    DEFAULT_TAIL_TOL,
    SqueezeParam,
    coherent_amplitudes,
    required_n_max,
    squeezed_coherent_amplitudes,
    squeezed_vacuum_amplitudes,
)
from .special import log_factorial, log_hermite, poisson_pmf

log = logging.getLogger(__name__)


class Kind(str, Enum):
    PSCS = "PSCS"
    MSCS = "MSCS"


def mixing_weight(alpha_r: float, zeta: SqueezeParam) -> float:
    """Coherent weight q that gives the mixture the same coherent-state
    overlap <alpha|rho|alpha> as the pure squeezed coherent state.

        q = sech r (1 - E) / (1 - sech r E),  E = exp(-alpha_r^2 (1 + tanh r))

    At r = 0 and alpha_r = 0 the expression is 0/0; the r = 0 value q = 1
    is returned and a warning logged.
    """
    if alpha_r < 0:
        raise ValueError("alpha_r must be >= 0")
    r = zeta.r
    if r == 0.0:
        if alpha_r == 0.0:
            log.warning("mixing weight is 0/0 at alpha = 0, r = 0; using q = 1")
        return 1.0
    sech = 1.0 / math.cosh(r)
    # 1 - E computed with expm1 so tiny alpha_r keeps full precision
    one_minus_e = -math.expm1(-alpha_r * alpha_r * (1.0 + math.tanh(r)))
    return sech * one_minus_e / (1.0 - sech + sech * one_minus_e)


@dataclass(frozen=True)
class FieldParams:
    """Physical parameters of the field.

    ``q`` is only used for MSCS; when left as ``None`` it is derived from
    :func:`mixing_weight` with the real part of alpha.
    """

    n_c: float
    n_s: float
    kind: Kind = Kind.MSCS
    q: float | None = None
    alpha_phase: float = 0.0
    theta: float = 0.0
    zeta: SqueezeParam = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_c < 0 or self.n_s < 0:
            raise ValueError("n_c and n_s must be >= 0")
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "zeta", SqueezeParam.from_photons(self.n_s, self.theta))
        if self.kind is Kind.MSCS:
            q = self.q
            if q is None:
                q = mixing_weight(abs(self.alpha.real), self.zeta)
            if not 0.0 <= q <= 1.0:
                raise ValueError(f"q must lie in [0, 1], got {q}")
            object.__setattr__(self, "q", float(q))

    @classmethod
    def pscs(cls, n_c, n_s, **kw) -> "FieldParams":
        return cls(n_c, n_s, Kind.PSCS, **kw)

    @classmethod
    def mscs(cls, n_c, n_s, q=None, **kw) -> "FieldParams":
        return cls(n_c, n_s, Kind.MSCS, q, **kw)

    @property
    def alpha(self) -> complex:
        return math.sqrt(self.n_c) * cmath.exp(1j * self.alpha_phase)

    @property
    def hermite_form_valid(self) -> bool:
        return self.alpha_phase == 0.0 and self.theta == 0.0


def _require(params: FieldParams, kind: Kind):
    if params.kind is not kind:
        raise ValueError(f"expected {kind.value} parameters, got {params.kind.value}")


def pcd(params: FieldParams, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    """Photon counting distribution for either kind of field."""
    if params.kind is Kind.PSCS:
        return pscs_pcd_amplitude(params, n_max, tail_tol)
    return mscs_pcd(params, n_max, tail_tol)


def choose_n_max(params: FieldParams, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    """Cutoff whose discarded photon-number mass is below ``tail_tol``.

    For the mixture each component is held to the tolerance separately.
    """
    if params.kind is Kind.PSCS:
        return required_n_max(lambda n: pscs_pcd_amplitude(params, n, tail_tol=1.0),
                              params.n_c, params.n_s, tail_tol)
    parts = []
    if params.q > 0.0:
        parts.append(lambda n: poisson_pmf(params.n_c, n))
    if params.q < 1.0:
        parts.append(lambda n: squeezed_vacuum_pcd(params.n_s, n))
    return max(required_n_max(f, params.n_c, params.n_s, tail_tol) for f in parts)


def _check_pcd_tail(p: np.ndarray, tail_tol: float, what: str) -> np.ndarray:
    tail = 1.0 - float(p.sum())
    if tail > tail_tol:
        raise TruncationError(f"{what}: tail mass {tail:.3e} beyond n_max={len(p)}")
    return p


def field_vectors(params: FieldParams, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL
                  ) -> list[tuple[float, np.ndarray]]:
    """Ensemble decomposition [(weight, ket), ...] of the field state."""
    if params.kind is Kind.PSCS:
        psi = squeezed_coherent_amplitudes(params.alpha, params.zeta, n_max, tail_tol)
        return [(1.0, psi.amplitudes)]
    out = []
    if params.q > 0.0:
        out.append((params.q, coherent_amplitudes(params.alpha, n_max, tail_tol).amplitudes))
    if params.q < 1.0:
        out.append((1.0 - params.q,
                    squeezed_vacuum_amplitudes(params.zeta, n_max, tail_tol).amplitudes))
    return out


def pscs_density(params: FieldParams, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    """|alpha, zeta><alpha, zeta| on ``n_max`` levels."""
    _require(params, Kind.PSCS)
    (_, psi), = field_vectors(params, n_max, tail_tol)
    return np.outer(psi, psi.conj())


def mscs_density(params: FieldParams, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    """q|alpha><alpha| + (1 - q)|zeta><zeta| on ``n_max`` levels."""
    _require(params, Kind.MSCS)
    rho = np.zeros((n_max, n_max), dtype=complex)
    for w, psi in field_vectors(params, n_max, tail_tol):
        rho += w * np.outer(psi, psi.conj())
    return rho


def density(params: FieldParams, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    if params.kind is Kind.PSCS:
        return pscs_density(params, n_max, tail_tol)
    return mscs_density(params, n_max, tail_tol)


def check_density(rho: np.ndarray, tail_tol: float = DEFAULT_TAIL_TOL,
                  herm_tol: float = 1e-12, psd_tol: float = 1e-10) -> None:
    """Raise ``ValueError`` unless ``rho`` is Hermitian, PSD and has trace
    in [1 - tail_tol, 1]."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > herm_tol:
        raise ValueError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if not (1.0 - tail_tol - 1e-12 <= tr <= 1.0 + 1e-12):
        raise ValueError(f"trace {tr!r} outside [1 - {tail_tol:g}, 1]")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] < -psd_tol:
        raise ValueError("density matrix has a negative eigenvalue")


def pscs_pcd_amplitude(params: FieldParams, n_max: int,
                       tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    """P(n) = |<n|alpha, zeta>|^2 from the recurrence amplitudes."""
    _require(params, Kind.PSCS)
    psi = squeezed_coherent_amplitudes(params.alpha, params.zeta, n_max, tail_tol)
    return psi.probabilities


def pscs_pcd_hermite(params: FieldParams, n_max: int, prefactor_power: int | None = None
                     ) -> np.ndarray:
    """Hermite closed form of the PSCS photon counting distribution.

        P(n) = (nu/2mu)^k H_n(beta / sqrt(2 mu nu))^2 exp(-beta^2 (1 - nu/mu)) / (n! mu)

    with mu = cosh r, nu = sinh r, beta = sqrt(N_c) (mu + nu). The standard
    result has k = n (``prefactor_power=None``); pass ``prefactor_power=2``
    to evaluate the variant with a fixed square. Valid for real alpha and
    theta = 0 only.
    """
    _require(params, Kind.PSCS)
    if not params.hermite_form_valid:
        raise ValueError("Hermite closed form needs real alpha and theta = 0")
    mu, nu = params.zeta.mu, params.zeta.nu
    n = np.arange(n_max)
    if nu == 0.0:
        return poisson_pmf(params.n_c, n_max)
    beta = math.sqrt(params.n_c) * (mu + nu)
    sign, log_h = log_hermite(n_max, beta / math.sqrt(2.0 * mu * nu))
    power = n if prefactor_power is None else prefactor_power
    log_p = (power * math.log(nu / (2.0 * mu)) + 2.0 * log_h
             - beta * beta * (1.0 - nu / mu) - log_factorial(n) - math.log(mu))
    return np.where(sign == 0, 0.0, np.exp(log_p))


def pscs_closed_form_report(params: FieldParams, n_max: int) -> dict:
    """Max-abs deviation of both Hermite closed-form variants from the
    amplitude-based PCD (the amplitude result is authoritative)."""
    ref = pscs_pcd_amplitude(params, n_max, tail_tol=1.0)
    fixed = pscs_pcd_hermite(params, n_max, prefactor_power=2)
    standard = pscs_pcd_hermite(params, n_max)
    return {
        "n_c": params.n_c,
        "n_s": params.n_s,
        "max_abs_dev_fixed_square": float(np.max(np.abs(fixed - ref))),
        "max_abs_dev_power_n": float(np.max(np.abs(standard - ref))),
        "sum_fixed_square": float(fixed.sum()),
    }


def squeezed_vacuum_pcd(n_s: float, n_max: int) -> np.ndarray:
    """(1/sqrt(1+N_s)) n!/(2^n ((n/2)!)^2) (N_s/(1+N_s))^(n/2) on even n."""
    p = np.zeros(n_max)
    if n_s == 0.0:
        p[0] = 1.0
        return p
    n = np.arange(0, n_max, 2)
    log_p = (-0.5 * math.log1p(n_s) + log_factorial(n) - n * math.log(2.0)
             - 2.0 * log_factorial(n // 2) + 0.5 * n * math.log(n_s / (1.0 + n_s)))
    p[::2] = np.exp(log_p)
    return p


def mscs_pcd(params: FieldParams, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    """Closed-form MSCS photon counting distribution.

    Odd n carry only the Poisson term; even n add the squeezed vacuum term.
    """
    _require(params, Kind.MSCS)
    q = params.q
    p = q * poisson_pmf(params.n_c, n_max) + (1.0 - q) * squeezed_vacuum_pcd(params.n_s, n_max)
    return _check_pcd_tail(p, tail_tol, "MSCS PCD")


def mean_photon_mscs(params: FieldParams) -> float:
    _require(params, Kind.MSCS)
    return params.q * params.n_c + (1.0 - params.q) * params.n_s


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))

