"""
Dense linear algebra kernels and distribution functions

Every matrix here is a float64 numpy array. SPD solves go through a Cholesky
factor with a relative pivot check so that exactly collinear designs are
rejected while strongly-but-not-perfectly correlated ones are solved.
"""
from typing import Sequence

import numpy as np
from scipy import linalg, special

from app.exceptions import DimensionMismatch, NotPositiveDefinite, ZeroVariance

# Pivots below PIVOT_TOLERANCE * max(diag(A)) count as zero
PIVOT_TOLERANCE = 1e-12
SYMMETRY_TOLERANCE = 1e-10


def as_matrix(values, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D float array"""
    a = np.asarray(values, dtype=float)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def as_vector(values, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float array"""
    v = np.asarray(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def symmetrize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def _check_square_symmetric(a: np.ndarray) -> None:
    if a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(a.shape[-2], a.shape[-1], what="matrix columns")
    scale = max(float(np.max(np.abs(a))), 1.0)
    if np.max(np.abs(a - np.swapaxes(a, -1, -2))) > SYMMETRY_TOLERANCE * scale:
        raise ValueError("matrix is not symmetric")


def _check_pivots(a: np.ndarray, factor: np.ndarray) -> None:
    pivots = np.diagonal(factor, axis1=-2, axis2=-1) ** 2
    largest = np.max(np.diagonal(a, axis1=-2, axis2=-1), axis=-1, keepdims=True)
    bad = pivots <= PIVOT_TOLERANCE * largest
    if np.any(bad):
        index = np.argwhere(bad)[0]
        raise NotPositiveDefinite(int(index[-1]), float(pivots[tuple(index)]))


def cholesky_factor(a) -> np.ndarray:
    """Lower Cholesky factor of an SPD matrix, rejecting near-zero pivots"""
    a = as_matrix(a)
    _check_square_symmetric(a)
    try:
        factor = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(-1, float("nan"))
    _check_pivots(a, factor)
    return factor


def solve_spd(a, b) -> np.ndarray:
    """
    Solve A X = B for symmetric positive definite A

    Args:
        a: k x k SPD matrix
        b: k-vector or k x m matrix

    Returns:
        X with the same shape as b

    Raises:
        NotPositiveDefinite: a pivot falls below the relative tolerance
    """
    factor = cholesky_factor(a)
    rhs = np.asarray(b, dtype=float)
    if rhs.shape[0] != factor.shape[0]:
        raise DimensionMismatch(factor.shape[0], rhs.shape[0], what="right-hand side")
    return linalg.cho_solve((factor, True), rhs)


def inverse_spd(a) -> np.ndarray:
    """Inverse of an SPD matrix via its Cholesky factor"""
    a = as_matrix(a)
    return symmetrize(solve_spd(a, np.eye(a.shape[0])))


def solve_spd_batch(a, b) -> np.ndarray:
    """Solve a stack of SPD systems A[i] X[i] = B[i] with the same pivot rule"""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_square_symmetric(a)
    try:
        factor = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(-1, float("nan"))
    _check_pivots(a, factor)
    vector_rhs = b.ndim == a.ndim - 1
    rhs = b[..., np.newaxis] if vector_rhs else b
    half = np.linalg.solve(factor, rhs)
    x = np.linalg.solve(np.swapaxes(factor, -1, -2), half)
    return x[..., 0] if vector_rhs else x


def correlation_matrix(x, names: Sequence[str] = ()) -> np.ndarray:
    """Sample Pearson correlation of the columns of x"""
    x = as_matrix(x)
    centered = x - x.mean(axis=0)
    lengths = np.sqrt(np.sum(centered ** 2, axis=0))
    for j, length in enumerate(lengths):
        if not length > 0:
            raise ZeroVariance(names[j] if j < len(names) else f"column {j}")
    unit = centered / lengths
    r = np.clip(symmetrize(unit.T @ unit), -1.0, 1.0)
    np.fill_diagonal(r, 1.0)
    return r


def t_two_sided_p(t: float, df: float) -> float:
    """Two-sided Student t p-value, 2 * (1 - CDF(|t|))"""
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if np.isnan(t):
        return float("nan")
    if np.isinf(t):
        return 0.0
    return float(special.betainc(0.5 * df, 0.5, df / (df + t * t)))


def t_quantile(p: float, df: float) -> float:
    """Quantile of Student t, used for confidence intervals"""
    return float(special.stdtrit(df, p))


def f_upper_p(f: float, df1: float, df2: float) -> float:
    """Upper-tail probability of the F distribution"""
    if f < 0:
        raise ValueError(f"F statistic must be non-negative, got {f}")
    if np.isinf(f):
        return 0.0
    return float(special.betainc(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f)))
