"""
Correlated predictor groups and group effects

A group effect xi(w) = sum_i w_i * beta~_i is a weighted combination of the
coefficients of one strongly correlated group, taken in the group's APC
(all positive correlation) coordinates, so beta~_i = sign_i * beta_i.
Effect weights always satisfy sum |w_i| = 1.
"""
import itertools
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from app.exceptions import ApcInfeasible, ArgumentError, ColumnsMissing, MissingColumn
from app.models import Dataset, EffectEstimate, FitResult, GroupEffectSpec, GroupStructure, ScalingInfo
from app.services import numerics

DEFAULT_THRESHOLD = 0.8
# Between-group correlations at or above this share of the threshold are reported
BETWEEN_GROUP_WARNING = 0.8
# Relative slack on the estimability comparison
ESTIMABILITY_SLACK = 1e-9


def apc_arrangement(r, group: Sequence[int], response_corr=None) -> Tuple[int, ...]:
    """
    Signs that make every pairwise correlation in `group` positive

    An arrangement is unique up to negating the whole group. With
    `response_corr` (each predictor's correlation with y) the sign is fixed so
    that sum_i s_i r_iy >= 0, which does not depend on the sign any column came
    in with. Without it, or on an exact tie, the first member keeps +1.

    Raises:
        ApcInfeasible: some sign-adjusted pair is still not positively correlated
    """
    r = numerics.as_matrix(r, "correlation matrix")
    group = tuple(group)
    if len(group) < 2:
        raise ArgumentError("APC arrangement needs a group of at least two members")
    first = group[0]
    signs = [1] + [int(np.sign(r[first, j])) for j in group[1:]]
    if 0 in signs:
        raise ApcInfeasible(group)
    for (a, sa), (b, sb) in itertools.combinations(zip(group, signs), 2):
        if not sa * sb * r[a, b] > 0:
            raise ApcInfeasible(group)
    if response_corr is not None:
        ry = np.asarray(response_corr, dtype=float)
        if sum(s * ry[i] for i, s in zip(group, signs)) < 0:
            signs = [-s for s in signs]
    return tuple(signs)


def _signs_for(r: np.ndarray, groups: Sequence[Tuple[int, ...]], k: int, response_corr=None) -> Tuple[int, ...]:
    signs = [1] * k
    for g in groups:
        if len(g) > 1:
            for i, s in zip(g, apc_arrangement(r, g, response_corr)):
                signs[i] = s
    return tuple(signs)


def response_correlations(d: Dataset) -> Optional[np.ndarray]:
    """Correlation of every predictor with the response; None when y is constant"""
    if np.ptp(d.y) == 0:
        return None
    full = numerics.correlation_matrix(np.column_stack([d.X, d.y]), (*d.predictor_names, d.response_name))
    return full[-1, :-1]


def detect_groups(
    r, names: Sequence[str], threshold: float = DEFAULT_THRESHOLD, response_corr=None
) -> GroupStructure:
    """
    Connected components of the graph joining predictors with |r_ij| >= threshold

    Args:
        r: k x k correlation matrix
        names: predictor names in matrix order
        threshold: edge cutoff in (0, 1)
        response_corr: optional correlations with y orienting each APC arrangement

    Returns:
        GroupStructure with groups ordered by their first member and APC signs
    """
    if not 0 < threshold < 1:
        raise ArgumentError(f"threshold must lie in (0, 1), got {threshold}")
    r = numerics.as_matrix(r, "correlation matrix")
    k = r.shape[0]
    if len(names) != k:
        raise ArgumentError(f"{len(names)} names for a {k} x {k} correlation matrix")

    adjacency = np.abs(r) >= threshold
    np.fill_diagonal(adjacency, False)
    _, labels = connected_components(csr_matrix(adjacency), directed=False)
    by_label = {}
    for i, label in enumerate(labels):
        by_label.setdefault(int(label), []).append(i)
    groups = sorted((tuple(members) for members in by_label.values()), key=lambda g: g[0])

    structure = GroupStructure(
        predictor_names=tuple(names),
        groups=tuple(groups),
        signs=_signs_for(r, groups, k, response_corr),
        threshold_used=float(threshold),
    )
    _warn_between_groups(r, structure)
    logger.info(
        f"Detected {structure.n_groups} groups at threshold {threshold}: "
        + ", ".join(structure.label(g) for g in range(structure.n_groups))
    )
    return structure


def _warn_between_groups(r: np.ndarray, structure: GroupStructure) -> None:
    band = BETWEEN_GROUP_WARNING * structure.threshold_used
    for a, b in itertools.combinations(range(structure.n_groups), 2):
        for i in structure.members(a):
            for j in structure.members(b):
                if abs(r[i, j]) >= band:
                    logger.warning(
                        f"{structure.predictor_names[i]} and {structure.predictor_names[j]} sit in "
                        f"different groups but |r| = {abs(r[i, j]):.5f} >= {band:.5f}"
                    )


def singleton_structure(names: Sequence[str]) -> GroupStructure:
    """Every predictor in its own group; selection over it is the traditional search"""
    k = len(names)
    return GroupStructure(
        predictor_names=tuple(names),
        groups=tuple((i,) for i in range(k)),
        signs=(1,) * k,
        threshold_used=1.0,
    )


def structure_from_partition(
    r, names: Sequence[str], partition: Iterable[Sequence[str]], response_corr=None
) -> GroupStructure:
    """
    Structure from user-declared groups of names

    Predictors not mentioned become singletons. APC signs are computed from `r`.
    """
    names = tuple(names)
    index = {name: i for i, name in enumerate(names)}
    groups, seen = [], set()
    for block in partition:
        members = []
        for name in block:
            if name not in index:
                raise MissingColumn(name)
            if name in seen:
                raise ArgumentError(f"{name} is declared in more than one group")
            seen.add(name)
            members.append(index[name])
        if members:
            groups.append(tuple(sorted(members)))
    groups.extend((i,) for i, name in enumerate(names) if name not in seen)
    groups.sort(key=lambda g: g[0])
    r = numerics.as_matrix(r, "correlation matrix")
    return GroupStructure(
        predictor_names=names,
        groups=tuple(groups),
        signs=_signs_for(r, groups, len(names), response_corr),
        threshold_used=float("nan"),
    )


def group_effect_spec(
    structure: GroupStructure, group: int, weights, label: Optional[str] = None
) -> GroupEffectSpec:
    """Spec over one group; raises WeightNormalizationError unless sum |w| = 1"""
    if not 0 <= group < structure.n_groups:
        raise ArgumentError(f"group {group} does not exist ({structure.n_groups} groups)")
    return GroupEffectSpec(
        group=group,
        members=structure.member_names(group),
        weights=weights,
        label=label or f"xi{structure.label(group)}",
    )


def column_effect_spec(columns: Sequence[str], weights, label: Optional[str] = None) -> GroupEffectSpec:
    """Spec over arbitrary columns in their own coordinates"""
    columns = tuple(columns)
    return GroupEffectSpec(
        group=None,
        members=columns,
        weights=weights,
        label=label or "xi{" + ", ".join(columns) + "}",
    )


def average_effect(structure: GroupStructure, group: int, label: Optional[str] = None) -> GroupEffectSpec:
    """xi_a: uniform weights 1/q"""
    q = len(structure.members(group))
    return group_effect_spec(structure, group, np.full(q, 1.0 / q), label or f"avg{structure.label(group)}")


def variability_weights(s: ScalingInfo, structure: GroupStructure, group: int,
                        label: Optional[str] = None) -> GroupEffectSpec:
    """xi_w: weights proportional to the members' centered column lengths"""
    lengths = np.array([s.scale_of(name) for name in structure.member_names(group)])
    return group_effect_spec(structure, group, lengths / lengths.sum(), label or f"vwa{structure.label(group)}")


def _renormalize(w: np.ndarray) -> np.ndarray:
    total = float(np.sum(np.abs(w)))
    if total == 0:
        raise ArgumentError("perturbation cancels every weight")
    return w / total


def perturb_weights(spec: GroupEffectSpec, delta: float, label: Optional[str] = None) -> GroupEffectSpec:
    """Shift the first weight by -delta and the second by +delta, then renormalize"""
    if len(spec.weights) < 2:
        raise ArgumentError("perturbation needs at least two weights")
    direction = np.zeros(len(spec.weights))
    direction[0], direction[1] = -1.0, 1.0
    return _shifted(spec, delta, direction, label or f"{spec.label}+{delta:g}")


def _shifted(spec: GroupEffectSpec, delta: float, direction: np.ndarray, label: str) -> GroupEffectSpec:
    w = _renormalize(np.asarray(spec.weights) + delta * direction)
    return GroupEffectSpec(group=spec.group, members=spec.members, weights=w, label=label)


def effect_vector(spec: GroupEffectSpec, structure: GroupStructure, f: FitResult) -> np.ndarray:
    """
    Coefficient vector c with xi(w) = c' beta over the fit's terms

    Raises:
        ColumnsMissing: a member of the spec is not a fitted column
    """
    missing = [m for m in spec.members if m not in f.column_ids]
    if missing:
        raise ColumnsMissing(missing)
    c = np.zeros(f.p)
    for name, w in zip(spec.members, spec.weights):
        sign = 1 if spec.group is None else structure.signs[structure.predictor_names.index(name)]
        c[f.term_index(name)] = w * sign
    return c


def raw_weights(spec: GroupEffectSpec, structure: GroupStructure) -> Tuple[float, ...]:
    """Spec weights expressed on the unadjusted columns"""
    if spec.group is None:
        return tuple(float(w) for w in spec.weights)
    signs = [structure.signs[structure.predictor_names.index(m)] for m in spec.members]
    return tuple(float(w * s) for w, s in zip(spec.weights, signs))


def standardized_effect(
    std_fit: FitResult, spec: GroupEffectSpec, structure: GroupStructure, s: ScalingInfo
) -> Tuple[float, np.ndarray, float]:
    """
    Express xi(w) as kappa * xi'(w') in the standardized model

    Returns:
        (kappa, w', estimated variance of xi'(w') under std_fit)
    """
    if std_fit.has_intercept:
        raise ArgumentError("estimability is judged on the standardized (no intercept) fit")
    scales = np.array([s.scale_of(m) for m in spec.members])
    scaled = np.asarray(spec.weights) / scales
    kappa = float(np.sum(np.abs(scaled)))
    w_std = scaled / kappa
    std_spec = GroupEffectSpec(group=spec.group, members=spec.members, weights=w_std, label=spec.label)
    c = effect_vector(std_spec, structure, std_fit)
    return kappa, w_std, float(c @ std_fit.coef_covariance @ c)


def estimability(
    std_fit: FitResult,
    spec: GroupEffectSpec,
    structure: GroupStructure,
    s: ScalingInfo,
    c_threshold: float = 1.0,
) -> bool:
    """Var(xi'(w')) <= c_threshold * sigma'^2 on the standardized fit"""
    _, _, variance = standardized_effect(std_fit, spec, structure, s)
    return variance <= c_threshold * std_fit.sigma2 * (1.0 + ESTIMABILITY_SLACK)


def _t_stat(estimate: float, se: float) -> float:
    if se > 0:
        return estimate / se
    return 0.0 if estimate == 0 else float(np.copysign(np.inf, estimate))


def estimate_effect(
    f: FitResult,
    spec: GroupEffectSpec,
    structure: GroupStructure,
    null_value: float = 0.0,
    level: float = 0.95,
    std_fit: Optional[FitResult] = None,
    scaling: Optional[ScalingInfo] = None,
    c_threshold: float = 1.0,
) -> EffectEstimate:
    """
    Minimum-variance unbiased estimate of xi(w) with a t test against null_value

    Passing the standardized fit and its scaling also fills kappa, the
    standardized variance and the estimability flag.
    """
    c = effect_vector(spec, structure, f)
    estimate = float(c @ f.coefficients)
    se = float(np.sqrt(max(c @ f.coef_covariance @ c, 0.0)))
    t = _t_stat(estimate - null_value, se)
    q = numerics.t_quantile(0.5 + level / 2.0, f.df_residual)

    kappa = std_var = estimable = None
    if std_fit is not None and scaling is not None:
        kappa, _, std_var = standardized_effect(std_fit, spec, structure, scaling)
        estimable = bool(std_var <= c_threshold * std_fit.sigma2 * (1.0 + ESTIMABILITY_SLACK))

    return EffectEstimate(
        label=spec.label,
        group=spec.group,
        members=spec.members,
        weights=tuple(float(w) for w in spec.weights),
        raw_weights=raw_weights(spec, structure),
        estimate=estimate,
        se=se,
        t=t,
        p=numerics.t_two_sided_p(t, f.df_residual),
        df=f.df_residual,
        null_value=null_value,
        ci_low=estimate - q * se,
        ci_high=estimate + q * se,
        kappa=kappa,
        standardized_variance=std_var,
        estimable=estimable,
    )


def linear_combination(
    f: FitResult, structure: GroupStructure, group: int, coefficients, label: Optional[str] = None
) -> Tuple[float, EffectEstimate]:
    """
    Split an arbitrary combination c over a group into c_t * xi(w)

    Returns:
        (c_t, estimate of the normalized effect xi(w)); the combination itself is c_t times it
    """
    c = np.asarray(coefficients, dtype=float).reshape(-1)
    c_t = float(np.sum(np.abs(c)))
    if c_t == 0:
        raise ArgumentError("combination has no non-zero coefficient")
    spec = group_effect_spec(structure, group, c / c_t, label)
    return c_t, estimate_effect(f, spec, structure)


def neighborhood_scan(
    f: FitResult,
    spec: GroupEffectSpec,
    structure: GroupStructure,
    deltas: Sequence[float],
    direction=None,
) -> List[Tuple[float, float]]:
    """
    Estimated variance of xi(w + delta * direction) for each delta

    The default direction moves weight from the first member to the second.
    Weights are renormalized at every step.
    """
    if direction is None:
        direction = np.zeros(len(spec.weights))
        direction[0], direction[1] = -1.0, 1.0
    direction = np.asarray(direction, dtype=float)
    scan = []
    for delta in deltas:
        shifted = _shifted(spec, float(delta), direction, spec.label)
        c = effect_vector(shifted, structure, f)
        scan.append((float(delta), float(c @ f.coef_covariance @ c)))
    return scan


def true_effect_value(slopes, spec: GroupEffectSpec, structure: GroupStructure) -> float:
    """xi(w) evaluated at known slopes (ordered as structure.predictor_names)"""
    slopes = np.asarray(slopes, dtype=float).reshape(-1)
    if slopes.shape[0] != len(structure.predictor_names):
        raise ArgumentError("slopes must cover every predictor")
    total = 0.0
    for name, w in zip(spec.members, raw_weights(spec, structure)):
        total += w * slopes[structure.predictor_names.index(name)]
    return float(total)
