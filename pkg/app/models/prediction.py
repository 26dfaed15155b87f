from typing import Dict, Optional, Tuple

from . import FrozenModel


class PredictionReport(FrozenModel):
    """Predicted mean response at one point, with feasible-region diagnostics"""

    label: str
    point: Tuple[float, ...]
    standardized: Tuple[float, ...]
    adjusted: Tuple[float, ...]
    y_hat: Optional[float] = None
    var_hat: Optional[float] = None
    per_group_spread: Dict[str, float]
    extrapolation_flags: Tuple[bool, ...]
    tolerance: float
    feasible: bool
