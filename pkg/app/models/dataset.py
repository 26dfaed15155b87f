from typing import Sequence, Tuple

import numpy as np
from pydantic import field_validator, model_validator

from app.exceptions import DuplicateName, MissingColumn
from . import FrozenModel


class Dataset(FrozenModel):
    """Named response vector plus named predictor matrix (no intercept column)"""

    predictor_names: Tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    response_name: str = "y"

    @field_validator('X', 'y', mode='before')
    @classmethod
    def coerce_array(cls, v):
        a = np.array(v, dtype=float)
        if not np.all(np.isfinite(a)):
            raise ValueError("data must be finite (no missing values)")
        a.setflags(write=False)
        return a

    @field_validator('predictor_names', mode='before')
    @classmethod
    def unique_names(cls, v):
        names = tuple(str(n) for n in v)
        seen = set()
        for name in names:
            if name in seen:
                raise DuplicateName(name)
            seen.add(name)
        return names

    @model_validator(mode='after')
    def check_shapes(self):
        if self.X.ndim != 2 or self.y.ndim != 1:
            raise ValueError("X must be n x k and y a length-n vector")
        if self.X.shape[0] != self.y.shape[0]:
            raise ValueError(f"X has {self.X.shape[0]} rows but y has {self.y.shape[0]}")
        if self.X.shape[1] != len(self.predictor_names):
            raise ValueError(
                f"X has {self.X.shape[1]} columns but {len(self.predictor_names)} names"
            )
        return self

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def k(self) -> int:
        return int(self.X.shape[1])

    def index_of(self, name: str) -> int:
        try:
            return self.predictor_names.index(name)
        except ValueError:
            raise MissingColumn(name)

    def indices(self, columns: Sequence[str]) -> list:
        return [self.index_of(c) for c in columns]

    def column(self, name: str) -> np.ndarray:
        return self.X[:, self.index_of(name)]

    def subset(self, columns: Sequence[str]) -> "Dataset":
        """Dataset restricted to the given predictors, in the given order"""
        idx = self.indices(columns)
        return Dataset(
            predictor_names=tuple(columns),
            X=self.X[:, idx],
            y=self.y,
            response_name=self.response_name,
        )

    def with_signs(self, signs: Sequence[int]) -> "Dataset":
        """Copy with each predictor multiplied by +1 or -1"""
        s = np.asarray(signs, dtype=float)
        if s.shape != (self.k,) or not np.all(np.abs(s) == 1.0):
            raise ValueError("signs must be a +1/-1 vector with one entry per predictor")
        return Dataset(
            predictor_names=self.predictor_names,
            X=self.X * s,
            y=self.y,
            response_name=self.response_name,
        )

    def with_response(self, y) -> "Dataset":
        """Same predictors, new response"""
        return Dataset(predictor_names=self.predictor_names, X=self.X, y=y, response_name=self.response_name)


class ScalingInfo(FrozenModel):
    """
    Column means and centered lengths used by the standardized model.

    scales[i] is sqrt(sum_j (x_ji - mean_i)^2), the length of the centered
    column, not a sample standard deviation.
    """

    predictor_names: Tuple[str, ...]
    means: np.ndarray
    scales: np.ndarray
    response_mean: float

    @field_validator('means', 'scales', mode='before')
    @classmethod
    def coerce_vector(cls, v):
        a = np.array(v, dtype=float).reshape(-1)
        a.setflags(write=False)
        return a

    @model_validator(mode='after')
    def check_scales(self):
        if np.any(self.scales <= 0):
            raise ValueError("all scales must be positive")
        if self.means.shape != self.scales.shape or len(self.predictor_names) != self.scales.shape[0]:
            raise ValueError("means, scales and names must have equal length")
        return self

    def scale_of(self, name: str) -> float:
        try:
            return float(self.scales[self.predictor_names.index(name)])
        except ValueError:
            raise MissingColumn(name)
