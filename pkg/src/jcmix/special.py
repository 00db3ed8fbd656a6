"""Hermite polynomials and log-space helpers for Fock amplitudes."""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

_RESCALE = 1e150


def hermite_poly(n: int, x: float) -> float:
    """Physicists' Hermite polynomial H_n(x) by upward recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    h_prev, h = 0.0, 1.0
    for k in range(n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def log_hermite(n_terms: int, x: float) -> tuple[np.ndarray, np.ndarray]:
    """Sign and log-magnitude of H_0(x) .. H_{n_terms-1}(x).

    The recurrence is carried with a running scale factor so that values
    far beyond the double range (H_n grows like n!) stay representable.

    Returns
    -------
    sign : ndarray
        -1, 0 or +1 for each order.
    log_abs : ndarray
        log|H_n(x)|, ``-inf`` where H_n(x) == 0.
    """
    sign = np.zeros(n_terms)
    log_abs = np.full(n_terms, -np.inf)
    h_prev, h, offset = 0.0, 1.0, 0.0
    for k in range(n_terms):
        if h != 0.0:
            sign[k] = np.sign(h)
            log_abs[k] = np.log(abs(h)) + offset
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
        big = max(abs(h), abs(h_prev))
        if big > _RESCALE:
            h /= big
            h_prev /= big
            offset += np.log(big)
    return sign, log_abs


def log_factorial(n):
    """log(n!) for scalar or array ``n``."""
    return gammaln(np.asarray(n, dtype=float) + 1.0)


def poisson_pmf(mean: float, n_terms: int) -> np.ndarray:
    """Poisson probabilities P(0) .. P(n_terms-1), evaluated in log space."""
    n = np.arange(n_terms)
    if mean == 0.0:
        out = np.zeros(n_terms)
        out[0] = 1.0
        return out
    return np.exp(-mean + n * np.log(mean) - log_factorial(n))
