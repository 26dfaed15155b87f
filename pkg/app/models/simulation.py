from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import Field, field_validator

from . import FrozenModel


class SimConfig(FrozenModel):
    """Parameters of the six-predictor model with two correlated pairs"""

    n: int = Field(default=12, description="Rows of the design")
    w1: float = Field(default=0.7, description="Mixing weight of the first pair")
    w2: float = Field(default=0.8, description="Mixing weight of the second pair")
    gamma: float = Field(default=2.0, description="Scale of the even-numbered columns")
    beta: Tuple[float, ...] = Field(
        default=(3.0, 0.0, 0.0, 1.0, 2.0, 0.0, 3.0), description="Intercept then six slopes"
    )
    sigma: float = Field(default=1.0, description="Error standard deviation")
    seed: int = Field(default=20180917, description="Root seed")
    reps: int = Field(default=1000, description="Monte Carlo replicates")

    @field_validator('n')
    @classmethod
    def validate_n(cls, v):
        if v <= 7:
            raise ValueError("n must exceed 7 to fit seven coefficients")
        return v

    @field_validator('reps')
    @classmethod
    def validate_reps(cls, v):
        if v < 1:
            raise ValueError("reps must be at least 1")
        return v

    @field_validator('sigma')
    @classmethod
    def validate_sigma(cls, v):
        if v < 0:
            raise ValueError("sigma must be non-negative")
        return v

    @field_validator('beta')
    @classmethod
    def validate_beta(cls, v):
        if len(v) != 7:
            raise ValueError("beta holds the intercept and six slopes")
        return tuple(float(b) for b in v)

    @property
    def beta_vector(self) -> np.ndarray:
        return np.asarray(self.beta, dtype=float)


class McEffectRow(FrozenModel):
    """Monte Carlo summary of one effect estimator"""

    label: str
    exact: Optional[float] = None
    mc_mean: float
    mc_var: float
    mc_se: float
    mean_est_var: float
    var_est_var: float
    reps: int


class RidgeResult(FrozenModel):
    """Ridge fit at the cross-validated penalty, on the original scale"""

    coefficients: np.ndarray
    lambda_star: float
    lambda_grid: np.ndarray
    cv_mse: np.ndarray

    @field_validator('coefficients', 'lambda_grid', 'cv_mse', mode='before')
    @classmethod
    def freeze(cls, v):
        a = np.array(v, dtype=float)
        a.setflags(write=False)
        return a

    def predict(self, x) -> float:
        return float(self.coefficients[0] + np.dot(self.coefficients[1:], np.asarray(x, dtype=float)))


class PredictorComparisonRow(FrozenModel):
    """Least squares vs ridge predictor of E(y) at one point"""

    label: str
    point: Tuple[float, ...]
    exact: float
    ls_bias: float
    ls_mse: float
    ls_mean_var_hat: float
    ridge_bias: float
    ridge_mse: float
    reps: int


class SelectionStabilityReport(FrozenModel):
    """How often each model is chosen across replicated responses"""

    reps: int
    correct_model: Tuple[str, ...]
    traditional_counts: Dict[str, int]
    grouped_counts: Dict[str, int]
    traditional_correct: int
    grouped_correct: int
    traditional_split_groups: int

    @property
    def traditional_distinct(self) -> int:
        return len(self.traditional_counts)

    @property
    def grouped_distinct(self) -> int:
        return len(self.grouped_counts)
