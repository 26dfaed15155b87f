from typing import Optional, Tuple

import numpy as np
from pydantic import field_validator, model_validator

from app.exceptions import WeightNormalizationError
from . import FrozenModel

WEIGHT_TOLERANCE = 1e-12


class GroupStructure(FrozenModel):
    """
    Partition of the predictors into strongly correlated groups.

    signs[i] is the sign predictor i receives in the all-positive-correlation
    (APC) arrangement of its group; singletons always carry +1.
    """

    predictor_names: Tuple[str, ...]
    groups: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]
    threshold_used: float

    @model_validator(mode='after')
    def check_partition(self):
        k = len(self.predictor_names)
        covered = sorted(i for g in self.groups for i in g)
        if covered != list(range(k)):
            raise ValueError("groups must cover every predictor exactly once")
        if any(len(g) == 0 for g in self.groups):
            raise ValueError("groups must be non-empty")
        if len(self.signs) != k or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must hold +1 or -1 for every predictor")
        for g in self.groups:
            if len(g) == 1 and self.signs[g[0]] != 1:
                raise ValueError("singleton groups carry sign +1")
        return self

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    def members(self, group: int) -> Tuple[int, ...]:
        return self.groups[group]

    def member_names(self, group: int) -> Tuple[str, ...]:
        return tuple(self.predictor_names[i] for i in self.groups[group])

    def member_signs(self, group: int) -> Tuple[int, ...]:
        return tuple(self.signs[i] for i in self.groups[group])

    def find_group(self, names) -> Optional[int]:
        """Group id whose members are exactly the given names, if any"""
        wanted = set(names)
        for gid in range(self.n_groups):
            if set(self.member_names(gid)) == wanted:
                return gid
        return None

    def multi_member_groups(self) -> Tuple[int, ...]:
        return tuple(gid for gid, g in enumerate(self.groups) if len(g) > 1)

    def label(self, group: int) -> str:
        """Members with APC sign annotation, e.g. {x1, x3 (-)}"""
        parts = []
        for i in self.groups[group]:
            name = self.predictor_names[i]
            parts.append(name if self.signs[i] == 1 else f"{name} (-)")
        return "{" + ", ".join(parts) + "}"


class GroupEffectSpec(FrozenModel):
    """
    Normalized group effect xi(w)

    Weights are in APC coordinates of `group`. With group None the weights
    apply to the named columns as they stand (a free linear combination).
    """

    group: Optional[int] = None
    members: Tuple[str, ...]
    weights: np.ndarray
    label: str

    @field_validator('weights', mode='before')
    @classmethod
    def coerce_weights(cls, v):
        w = np.array(v, dtype=float).reshape(-1)
        w.setflags(write=False)
        return w

    @model_validator(mode='after')
    def check_normalized(self):
        if len(self.weights) != len(self.members):
            raise WeightNormalizationError(
                f"{self.label}: {len(self.weights)} weights for {len(self.members)} members"
            )
        total = float(np.sum(np.abs(self.weights)))
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise WeightNormalizationError(
                f"{self.label}: sum of |w| is {total:.12g}, expected 1"
            )
        return self


class EffectEstimate(FrozenModel):
    """Estimate and t test of one group effect"""

    label: str
    group: Optional[int] = None
    members: Tuple[str, ...]
    weights: Tuple[float, ...]
    raw_weights: Tuple[float, ...]
    estimate: float
    se: float
    t: float
    p: float
    df: int
    null_value: float = 0.0
    ci_low: float
    ci_high: float
    kappa: Optional[float] = None
    standardized_variance: Optional[float] = None
    estimable: Optional[bool] = None
