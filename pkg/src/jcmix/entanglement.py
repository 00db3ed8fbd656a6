"""Atom-field entanglement: partial transpose over the atom and negativity."""

from __future__ import annotations

import numpy as np

from .dynamics import Blocks, _check_grid, evolve_joint, split_blocks
from .linalg import hermitian_eigenvalues, hermitian_eigh

NEG_THRESHOLD = 1e-10


def partial_transpose_atom(joint: np.ndarray) -> np.ndarray:
    """Transpose the atomic indices: ((s,n),(s',m)) -> ((s',n),(s,m)).

    In the atom-major layout this swaps the eg and ge blocks without
    transposing them.
    """
    ee, eg, ge, gg = split_blocks(joint)
    return np.block([[ee, ge], [eg, gg]])


def negativity_from_spectrum(evals, threshold: float = NEG_THRESHOLD) -> float:
    """sum_k (|l_k| - l_k)/2, with eigenvalues in (-threshold, 0) read as zero."""
    evals = np.asarray(evals)
    neg = evals[evals <= -threshold]
    return float(-neg.sum())


def negativity(joint: np.ndarray, threshold: float = NEG_THRESHOLD) -> float:
    """Negativity of the joint atom-field state."""
    return negativity_from_spectrum(hermitian_eigenvalues(partial_transpose_atom(joint)),
                                    threshold)


def log_negativity(n: float) -> float:
    return float(np.log2(2.0 * n + 1.0))


def _ensemble(rho_field: np.ndarray, rel_cut: float = 1e-14):
    w, v = hermitian_eigh(rho_field)
    keep = w > rel_cut * max(w.max(), 0.0)
    return w[keep], v[:, keep]


def _low_rank_negativity(weights, kets, blocks: Blocks, threshold: float) -> float:
    # rho(t) = sum_k w_k |x_k><x_k| with x_k = |e> C psi_k + |g> S psi_k; the
    # partial transpose is supported on the span of all C psi_k and S psi_k
    upper = blocks.c[:, None] * kets
    lower = blocks.apply_s(kets)
    basis, sv, _ = np.linalg.svd(np.hstack([upper, lower]), full_matrices=False)
    basis = basis[:, sv > 1e-13 * sv[0]]
    ye = basis.conj().T @ upper
    yg = basis.conj().T @ lower
    sw = np.sqrt(weights)
    ye, yg = ye * sw, yg * sw
    # PT block (a, b) = sum_k w_k y_{k,b} y_{k,a}^dag
    pt = np.block([[ye @ ye.conj().T, yg @ ye.conj().T],
                   [ye @ yg.conj().T, yg @ yg.conj().T]])
    return negativity_from_spectrum(hermitian_eigenvalues(pt), threshold)


def negativity_series(rho_field: np.ndarray, grid, method: str = "auto",
                      threshold: float = NEG_THRESHOLD) -> np.ndarray:
    """N(t) over a time grid.

    ``method="dense"`` evolves the full joint density and diagonalizes its
    partial transpose at every time. ``"low_rank"`` decomposes the field
    density once and diagonalizes the partial transpose on the subspace
    it is supported on, which is exact and far cheaper for the rank-1 and
    rank-2 fields used here. ``"auto"`` picks ``low_rank`` when the field
    rank is below a quarter of its dimension.
    """
    grid = _check_grid(grid)
    rho = np.asarray(rho_field)
    out = np.empty(grid.size)
    if method == "auto":
        weights, kets = _ensemble(rho)
        method = "low_rank" if 4 * len(weights) <= rho.shape[0] else "dense"
    elif method == "low_rank":
        weights, kets = _ensemble(rho)
    elif method != "dense":
        raise ValueError(f"unknown method {method!r}")
    for i, t in enumerate(grid):
        if method == "dense":
            out[i] = negativity(evolve_joint(rho, t), threshold)
        else:
            out[i] = _low_rank_negativity(weights, kets, Blocks(t, rho.shape[0]), threshold)
    return out
