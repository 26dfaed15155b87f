"""
Ordinary least squares via the normal equations

(XᵀX)⁻¹ is kept on every fit because effect variances and prediction
variances are quadratic forms in it.
"""
from typing import Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from app.exceptions import InsufficientRows, NotNested, NotPositiveDefinite, SingularDesign
from app.models import CoefficientTest, Dataset, FitResult, PartialFTest
from app.services import numerics
from app.services.metrics import track_fit, track_singular_design


def fit(d: Dataset, columns: Optional[Sequence[str]] = None, intercept: bool = True) -> FitResult:
    """
    Least squares fit of the response on a subset of predictors

    Args:
        d: dataset
        columns: predictor names to include (default: all, in dataset order)
        intercept: add a column of ones

    Raises:
        InsufficientRows: n <= number of coefficients
        SingularDesign: XᵀX is not numerically positive definite
    """
    columns = tuple(d.predictor_names) if columns is None else tuple(columns)
    x = d.X[:, d.indices(columns)]
    return fit_arrays(x, d.y, columns, intercept)


def fit_arrays(x: np.ndarray, y: np.ndarray, columns: Sequence[str], intercept: bool = True) -> FitResult:
    """Fit on raw arrays; `columns` names the columns of x"""
    n = x.shape[0]
    design = np.column_stack([np.ones(n), x]) if intercept else x
    p = design.shape[1]
    if n <= p:
        raise InsufficientRows(n, p)

    xtx = design.T @ design
    try:
        coefficients = numerics.solve_spd(xtx, design.T @ y)
        # One refinement step on the residual keeps Xᵀr at rounding level
        coefficients = coefficients + numerics.solve_spd(xtx, design.T @ (y - design @ coefficients))
        xtx_inv = numerics.inverse_spd(xtx)
    except NotPositiveDefinite as e:
        track_singular_design()
        raise SingularDesign(columns, reason=str(e))
    fitted = design @ coefficients
    residuals = y - fitted

    df_residual = n - p
    rss = float(residuals @ residuals)
    # Without an intercept the sums of squares are taken about zero, as R does
    center = y.mean() if intercept else 0.0
    tss = float(np.sum((y - center) ** 2))
    ess = float(np.sum((fitted - center) ** 2))
    sigma2 = rss / df_residual

    r2 = 1.0 - rss / tss if tss > 0 else 1.0
    r2 = min(max(r2, 0.0), 1.0)
    df_total = n - 1 if intercept else n
    adj_r2 = 1.0 - (1.0 - r2) * df_total / df_residual
    df_model = p - 1 if intercept else p
    if df_model > 0:
        regression_ss = tss - rss
        f_stat = np.inf if rss == 0 else (regression_ss / df_model) / sigma2
        f_stat = max(float(f_stat), 0.0)
        f_p = numerics.f_upper_p(f_stat, df_model, df_residual)
    else:
        f_stat, f_p = float("nan"), float("nan")

    track_fit(intercept)
    return FitResult(
        column_ids=tuple(columns),
        has_intercept=intercept,
        coefficients=coefficients,
        coef_covariance=sigma2 * xtx_inv,
        xtx_inverse=xtx_inv,
        residuals=residuals,
        fitted=fitted,
        response=y,
        n=n,
        df_residual=df_residual,
        sigma_hat=float(np.sqrt(sigma2)),
        rss=rss,
        ess=ess,
        tss=tss,
        r2=float(r2),
        adj_r2=float(adj_r2),
        f_stat=float(f_stat),
        f_p=float(f_p),
    )


def _t_ratio(estimate: float, se: float) -> float:
    if se > 0:
        return estimate / se
    if estimate == 0:
        return 0.0
    return float(np.copysign(np.inf, estimate))


def coef_tests(f: FitResult, level: float = 0.95) -> List[CoefficientTest]:
    """Estimate, standard error, t value and two-sided p per coefficient"""
    ses = np.sqrt(np.clip(np.diag(f.coef_covariance), 0.0, None))
    q = numerics.t_quantile(0.5 + level / 2.0, f.df_residual)
    rows = []
    for term, est, se in zip(f.term_names, f.coefficients, ses):
        t = _t_ratio(float(est), float(se))
        rows.append(
            CoefficientTest(
                term=term,
                estimate=float(est),
                se=float(se),
                t=t,
                p=numerics.t_two_sided_p(t, f.df_residual),
                ci_low=float(est - q * se),
                ci_high=float(est + q * se),
            )
        )
    return rows


def vif(d: Dataset, columns: Optional[Sequence[str]] = None) -> Dict[str, float]:
    """
    Variance inflation factors 1 / (1 - R²_j)

    R²_j comes from regressing column j on the other listed columns plus an
    intercept. A lone column has VIF 1.
    """
    columns = tuple(d.predictor_names) if columns is None else tuple(columns)
    x = d.X[:, d.indices(columns)]
    result = {}
    for j, name in enumerate(columns):
        others = [c for i, c in enumerate(columns) if i != j]
        if not others:
            result[name] = 1.0
            continue
        aux = fit_arrays(np.delete(x, j, axis=1), x[:, j], others, intercept=True)
        result[name] = np.inf if aux.r2 >= 1.0 else 1.0 / (1.0 - aux.r2)
    logger.debug(f"VIF over {len(columns)} columns: max {max(result.values()):.3f}")
    return result


def partial_f_test(full: FitResult, reduced: FitResult) -> PartialFTest:
    """
    F test for dropping the columns of `full` that `reduced` lacks

    Raises:
        NotNested: reduced is not a sub-model of full on the same rows
    """
    if not set(reduced.column_ids) <= set(full.column_ids):
        raise NotNested("reduced model has columns the full model lacks")
    if full.has_intercept != reduced.has_intercept:
        raise NotNested("both fits must agree on the intercept")
    if full.n != reduced.n or not np.array_equal(full.response, reduced.response):
        raise NotNested("fits use different responses")

    dropped = tuple(c for c in full.column_ids if c not in reduced.column_ids)
    q = len(dropped)
    if q == 0:
        return PartialFTest(
            dropped=(), f=0.0, p=1.0, df_num=0, df_den=full.df_residual,
            rss_full=full.rss, rss_reduced=reduced.rss,
        )
    numerator = max(reduced.rss - full.rss, 0.0) / q
    denominator = full.rss / full.df_residual
    if denominator == 0:
        f = 0.0 if numerator == 0 else np.inf
    else:
        f = numerator / denominator
    return PartialFTest(
        dropped=dropped,
        f=float(f),
        p=numerics.f_upper_p(float(f), q, full.df_residual),
        df_num=q,
        df_den=full.df_residual,
        rss_full=full.rss,
        rss_reduced=reduced.rss,
    )
