from typing import Tuple

import numpy as np
from pydantic import field_validator

from . import FrozenModel

INTERCEPT = "(Intercept)"


def _frozen(v):
    a = np.array(v, dtype=float)
    a.setflags(write=False)
    return a


class FitResult(FrozenModel):
    """Ordinary least squares fit of one dataset on a subset of its predictors"""

    column_ids: Tuple[str, ...]
    has_intercept: bool
    coefficients: np.ndarray
    coef_covariance: np.ndarray
    xtx_inverse: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    response: np.ndarray
    n: int
    df_residual: int
    sigma_hat: float
    rss: float
    ess: float
    tss: float
    r2: float
    adj_r2: float
    f_stat: float
    f_p: float

    @field_validator(
        'coefficients', 'coef_covariance', 'xtx_inverse', 'residuals', 'fitted', 'response',
        mode='before',
    )
    @classmethod
    def freeze_arrays(cls, v):
        return _frozen(v)

    @property
    def term_names(self) -> Tuple[str, ...]:
        return ((INTERCEPT,) if self.has_intercept else ()) + self.column_ids

    @property
    def p(self) -> int:
        """Number of estimated coefficients including the intercept"""
        return len(self.coefficients)

    @property
    def sigma2(self) -> float:
        return self.sigma_hat ** 2

    def slopes(self) -> np.ndarray:
        return self.coefficients[1:] if self.has_intercept else self.coefficients

    def term_index(self, column: str) -> int:
        return self.column_ids.index(column) + (1 if self.has_intercept else 0)

    def residual_summary(self) -> Tuple[float, float, float, float, float]:
        """Min, 1Q, median, 3Q, max of the residuals (R's quantile type 7)"""
        q = np.quantile(self.residuals, [0.0, 0.25, 0.5, 0.75, 1.0])
        return tuple(float(v) for v in q)


class CoefficientTest(FrozenModel):
    """One row of the coefficient table"""

    term: str
    estimate: float
    se: float
    t: float
    p: float
    ci_low: float
    ci_high: float


class PartialFTest(FrozenModel):
    """Nested-model F test for jointly dropping columns"""

    dropped: Tuple[str, ...]
    f: float
    p: float
    df_num: int
    df_den: int
    rss_full: float
    rss_reduced: float
