"""Dense linear-algebra helpers: ladder operators, matrix exponential,
Hermitian eigensolvers."""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import NonConvergence, NotHermitian

HERMITIAN_TOL = 1e-10


def annihilation(dim: int) -> np.ndarray:
    """Truncated annihilation operator a on span{|0>, ..., |dim-1>}."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).T.copy()


def number_op(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def expm(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (Pade scaling and squaring)."""
    return scipy.linalg.expm(m)


def _hermitian_part(m: np.ndarray, tol: float) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise NotHermitian(f"max |M - M^H| = {dev:.3e} exceeds {tol:.1e}")
    return 0.5 * (m + m.conj().T)


def hermitian_eigh(m: np.ndarray, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix."""
    h = _hermitian_part(m, tol)
    return np.linalg.eigh(h)


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITIAN_TOL,
                          method: str = "lapack") -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in ascending order.

    Parameters
    ----------
    m : array_like
        Square complex matrix, Hermitian to within ``tol`` elementwise.
        It is symmetrized before the decomposition.
    method : {"lapack", "jacobi"}
        ``"jacobi"`` runs the cyclic complex Jacobi sweep in pure NumPy;
        only practical for small matrices.

    Raises
    ------
    NotHermitian
        If the Hermiticity pre-check fails.
    NonConvergence
        If the eigenvalue sum misses the trace by more than 1e-8.
    """
    h = _hermitian_part(m, tol)
    if method == "lapack":
        evals = np.linalg.eigvalsh(h)
    elif method == "jacobi":
        evals, _ = jacobi_eigh(h)
    else:
        raise ValueError(f"unknown method {method!r}")
    trace = float(np.real(np.trace(h)))
    if abs(evals.sum() - trace) > 1e-8 * max(1.0, np.abs(evals).sum()):
        raise NonConvergence("eigenvalue sum does not reproduce the trace")
    return evals


def jacobi_eigh(m: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60
                ) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Each rotation removes the phase of the pivot element and then applies
    the real symmetric Jacobi rotation. Sweeps stop when the off-diagonal
    Frobenius norm drops below ``tol`` times the matrix norm.

    Returns eigenvalues in ascending order and the matching eigenvectors
    as columns.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), np.finfo(float).tiny)

    def off(x):
        return np.sqrt(max(np.linalg.norm(x) ** 2 - np.sum(np.abs(np.diag(x)) ** 2), 0.0))

    for _ in range(max_sweeps):
        if off(a) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                mag = abs(b)
                if mag <= 1e-300:
                    continue
                phase = b / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ rot
    else:
        if off(a) > tol * scale:
            raise NonConvergence("Jacobi sweeps did not converge")
    evals = np.real(np.diag(a))
    order = np.argsort(evals)
    return evals[order], v[:, order]
