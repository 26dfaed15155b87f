"""
Prediction of the mean response and the feasible prediction region

A point is inside the feasible region when, after standardization and APC
sign adjustment, the coordinates of every correlated group are nearly equal
and no coordinate leaves [-1, 1].
"""
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from loguru import logger

from app.exceptions import ArgumentError, DimensionMismatch
from app.models import FitResult, GroupStructure, PredictionReport, ScalingInfo
from app.services.data import standardize_point

DEFAULT_TOLERANCE = 0.1


def _augmented(f: FitResult, x) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    k = len(f.column_ids)
    if v.shape[0] != k:
        raise DimensionMismatch(k, v.shape[0], what="prediction point")
    return np.concatenate(([1.0], v)) if f.has_intercept else v


def predict(f: FitResult, x) -> Tuple[float, float]:
    """
    Predicted E(y | x) and its estimated variance sigma² x+ (XᵀX)⁻¹ x+ᵀ

    Args:
        f: fit whose columns define the order of x
        x: predictor values, one per fitted column

    Raises:
        DimensionMismatch: x has the wrong length
    """
    xp = _augmented(f, x)
    y_hat = float(xp @ f.coefficients)
    var_hat = max(float(xp @ f.coef_covariance @ xp), 0.0)
    return y_hat, var_hat


def feasibility(
    s: ScalingInfo,
    structure: GroupStructure,
    x,
    tolerance: float = DEFAULT_TOLERANCE,
    label: str = "x",
) -> PredictionReport:
    """
    Feasible-region verdict for x (no prediction attached)

    Spreads are max - min of the sign-adjusted standardized coordinates
    within each multi-member group.
    """
    if tolerance < 0:
        raise ArgumentError("tolerance must be non-negative")
    if tuple(s.predictor_names) != tuple(structure.predictor_names):
        raise ArgumentError("scaling and group structure describe different predictors")
    point = np.asarray(x, dtype=float).reshape(-1)
    standardized = standardize_point(point, s)
    adjusted = standardized * np.asarray(structure.signs, dtype=float)

    spreads = {}
    for gid in structure.multi_member_groups():
        values = adjusted[list(structure.members(gid))]
        spreads[structure.label(gid)] = float(values.max() - values.min())
    flags = tuple(bool(abs(v) > 1.0) for v in standardized)
    feasible = all(v <= tolerance for v in spreads.values()) and not any(flags)
    if any(flags):
        outside = [n for n, flag in zip(structure.predictor_names, flags) if flag]
        logger.warning(f"Point {label} extrapolates on {outside}")

    return PredictionReport(
        label=label,
        point=tuple(float(v) for v in point),
        standardized=tuple(float(v) for v in standardized),
        adjusted=tuple(float(v) for v in adjusted),
        per_group_spread=spreads,
        extrapolation_flags=flags,
        tolerance=float(tolerance),
        feasible=bool(feasible),
    )


def assess_prediction(
    f: FitResult,
    s: ScalingInfo,
    structure: GroupStructure,
    x,
    tolerance: float = DEFAULT_TOLERANCE,
    label: str = "x",
) -> PredictionReport:
    """Prediction plus feasibility for a fit on all predictors of `structure`"""
    if tuple(f.column_ids) != tuple(structure.predictor_names):
        raise ArgumentError("feasibility needs a fit on every predictor, in dataset order")
    y_hat, var_hat = predict(f, x)
    report = feasibility(s, structure, x, tolerance, label)
    return report.model_copy(update={"y_hat": y_hat, "var_hat": var_hat})


def assess_points(
    f: FitResult,
    s: ScalingInfo,
    structure: GroupStructure,
    points: Iterable[Tuple[str, Sequence[float]]],
    tolerance: float = DEFAULT_TOLERANCE,
) -> List[PredictionReport]:
    reports = [assess_prediction(f, s, structure, x, tolerance, label) for label, x in points]
    logger.info(f"Assessed {len(reports)} points, {sum(r.feasible for r in reports)} feasible")
    return reports


def on_group_lines(report: PredictionReport, atol: float = 1e-9) -> bool:
    """True when every group's adjusted coordinates coincide, the most reliable case"""
    return all(v <= atol for v in report.per_group_spread.values())
