"""Minimal dense linear algebra: column statistics and a symmetric eigensolver.

Matrices are plain 2-D ``numpy.ndarray`` of float64 in row-major order.
Everything here is deterministic: fixed sweep order, no pivot randomisation,
so identical input bits always produce identical output bits.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ConvergenceError

#: Columns whose sample standard deviation falls below this are treated as
#: constant: their scale becomes 1 and they contribute zero correlation.
SD_FLOOR = 1e-12

#: Cyclic Jacobi stops once the off-diagonal Frobenius norm drops below
#: ``JACOBI_TOL`` times the Frobenius norm of the input.
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    return a


def mean_vector(m) -> np.ndarray:
    """Column means of ``m`` (rows are observations)."""
    a = _as_matrix(m)
    if a.shape[0] < 1:
        raise ValueError("mean_vector needs at least one row")
    return a.mean(axis=0)


def covariance_matrix(m) -> np.ndarray:
    """Sample covariance (divisor n-1) of the columns of ``m``.

    The result is symmetrised explicitly so downstream symmetry checks hold
    to machine precision.
    """
    a = _as_matrix(m)
    n = a.shape[0]
    if n < 2:
        raise ValueError("covariance needs at least two rows")
    centered = a - a.mean(axis=0)
    cov = centered.T @ centered / (n - 1)
    return (cov + cov.T) / 2.0


def column_std(m) -> np.ndarray:
    """Per-column sample standard deviation (divisor n-1)."""
    a = _as_matrix(m)
    if a.shape[0] < 2:
        raise ValueError("column_std needs at least two rows")
    return a.std(axis=0, ddof=1)


def correlation_matrix(m) -> np.ndarray:
    """Correlation of the columns of ``m`` as covariance of z-scores.

    Columns with standard deviation below ``SD_FLOOR`` are scaled by 1
    instead, which zeroes their row and column (constant features carry no
    correlation information).
    """
    a = _as_matrix(m)
    if a.shape[0] < 2:
        raise ValueError("correlation needs at least two rows")
    sd = column_std(a)
    scale = np.where(sd < SD_FLOOR, 1.0, sd)
    z = (a - a.mean(axis=0)) / scale
    return covariance_matrix(z)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix, eigenvalues sorted descending.

    Column ``j`` of ``eigenvectors`` pairs with ``eigenvalues[j]``.  Each
    column is sign-fixed so its entry of largest magnitude (lowest index on
    ties) is nonnegative.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _check_symmetric(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix is not square: {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    if a.size and float(np.max(np.abs(a - a.T))) > 1e-9 * scale:
        raise ValueError("matrix is not symmetric within 1e-9")


def jacobi_eigen(a) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Rotations are applied in fixed row-major order over the upper triangle;
    convergence is declared when the off-diagonal Frobenius norm falls below
    ``JACOBI_TOL`` times the input Frobenius norm.  Raises
    ``ConvergenceError`` if that has not happened after
    ``JACOBI_MAX_SWEEPS`` sweeps.
    """
    a = _as_matrix(a)
    _check_symmetric(a)
    n = a.shape[0]
    if n == 0:
        raise ValueError("cannot decompose an empty matrix")

    work = a.copy()
    vecs = np.eye(n)
    fnorm = math.sqrt(float(np.sum(work * work)))
    threshold = JACOBI_TOL * fnorm

    if n == 1 or fnorm == 0.0:
        return _finish(work, vecs)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = _offdiag_norm(work)
        if off <= threshold:
            return _finish(work, vecs)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(work[p, q])
                if apq == 0.0:
                    continue
                diff = float(work[q, q] - work[p, p])
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff  # asymptotic root, avoids theta overflow
                else:
                    theta = diff / (2.0 * apq)
                    sign = 1.0 if theta >= 0.0 else -1.0
                    t = sign / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                row_p = work[p, :].copy()
                row_q = work[q, :].copy()
                work[p, :] = c * row_p - s * row_q
                work[q, :] = s * row_p + c * row_q
                col_p = work[:, p].copy()
                col_q = work[:, q].copy()
                work[:, p] = c * col_p - s * col_q
                work[:, q] = s * col_p + c * col_q
                work[p, q] = 0.0
                work[q, p] = 0.0

                vcol_p = vecs[:, p].copy()
                vcol_q = vecs[:, q].copy()
                vecs[:, p] = c * vcol_p - s * vcol_q
                vecs[:, q] = s * vcol_p + c * vcol_q

    raise ConvergenceError(
        f"Jacobi sweeps did not converge after {JACOBI_MAX_SWEEPS} sweeps; "
        f"remaining off-diagonal norm {_offdiag_norm(work):.3e}"
    )


def _offdiag_norm(m: np.ndarray) -> float:
    # summed from the off-diagonal entries themselves; subtracting the
    # diagonal mass from the total cancels catastrophically near convergence
    off = m.copy()
    np.fill_diagonal(off, 0.0)
    return math.sqrt(float(np.sum(off * off)))


def _finish(work: np.ndarray, vecs: np.ndarray) -> EigenDecomposition:
    values = np.diag(work).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vecs = vecs[:, order].copy()
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        lead = int(np.argmax(np.abs(col)))  # lowest index wins ties
        if col[lead] < 0.0:
            vecs[:, j] = -col
    values.flags.writeable = False
    vecs.flags.writeable = False
    return EigenDecomposition(eigenvalues=values, eigenvectors=vecs)
