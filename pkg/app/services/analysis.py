"""
Analysis pipeline shared by the CLI and the HTTP surface

Each run_* function takes a dataset (or a simulation preset) and returns a
ReportDocument; rendering is left to app.services.report.
"""
from typing import List, Optional, Sequence, Tuple

from loguru import logger

from app.exceptions import ArgumentError, InvalidSpec
from app.fixtures import SIM_EFFECTS, SIM_POINTS, XD, sim_xd
from app.models import (
    Dataset,
    GroupEffectSpec,
    GroupStructure,
    ReportDocument,
    ScalingInfo,
    SelectionMethod,
    SimConfig,
    SimulationPreset,
)
from app.services import groups, numerics, ols, predict, selection, simulate
from app.services.data import scaling_info, standardize
from app.validators import EffectSpecEntry
from config.settings import get_settings


def _columns_label(columns: Sequence[str]) -> str:
    return "{" + ", ".join(columns) + "}"


def build_structure(
    d: Dataset, threshold: Optional[float] = None, partition: Optional[Sequence[Sequence[str]]] = None
) -> GroupStructure:
    """Detected groups, or the declared partition when one is given"""
    r = numerics.correlation_matrix(d.X, d.predictor_names)
    ry = groups.response_correlations(d)
    if partition:
        return groups.structure_from_partition(r, d.predictor_names, partition, ry)
    threshold = get_settings().group_threshold if threshold is None else threshold
    return groups.detect_groups(r, d.predictor_names, threshold, ry)


def resolve_effects(
    entries: Sequence[EffectSpecEntry], structure: GroupStructure, s: ScalingInfo
) -> List[GroupEffectSpec]:
    """
    Turn spec-file entries into validated GroupEffectSpec values

    Group entries must name exactly the members of one group; explicit
    weights follow the order the entry lists the members in.
    """
    specs = []
    for entry in entries:
        if entry.columns is not None:
            missing = [c for c in entry.columns if c not in structure.predictor_names]
            if missing:
                raise InvalidSpec(f"Unknown columns {missing}")
            spec = groups.column_effect_spec(entry.columns, entry.weights, entry.label)
        else:
            gid = structure.find_group(entry.group)
            if gid is None:
                raise InvalidSpec(
                    f"{_columns_label(entry.group)} is not a group; groups are "
                    + ", ".join(structure.label(g) for g in range(structure.n_groups))
                )
            if entry.weights == "avg":
                spec = groups.average_effect(structure, gid, entry.label)
            elif entry.weights == "vwa":
                spec = groups.variability_weights(s, structure, gid, entry.label)
            else:
                by_name = dict(zip(entry.group, entry.weights))
                ordered = [by_name[m] for m in structure.member_names(gid)]
                spec = groups.group_effect_spec(structure, gid, ordered, entry.label)
        if entry.delta is not None:
            spec = groups.perturb_weights(spec, entry.delta, entry.label)
        specs.append(spec)
    return specs


def run_fit(d: Dataset, source: Optional[str] = None, intercept: bool = True) -> ReportDocument:
    f = ols.fit(d, intercept=intercept)
    doc = ReportDocument(command="fit", source=source)
    doc.add_table(
        "coefficients",
        "Coefficients",
        ["term", "estimate", "se", "t", "p", "ci_low", "ci_high"],
        [[c.term, c.estimate, c.se, c.t, c.p, c.ci_low, c.ci_high] for c in ols.coef_tests(f)],
    )
    doc.add_values(
        "summary",
        "Model summary",
        {
            "n": f.n,
            "sigma_hat": f.sigma_hat,
            "df_residual": f.df_residual,
            "r2": f.r2,
            "adj_r2": f.adj_r2,
            "f_stat": f.f_stat,
            "f_df1": f.p - (1 if intercept else 0),
            "f_df2": f.df_residual,
            "f_p": f.f_p,
        },
    )
    doc.add_values(
        "residuals",
        "Residuals",
        dict(zip(("min", "q1", "median", "q3", "max"), f.residual_summary())),
    )
    factors = ols.vif(d)
    doc.add_table("vif", "Variance inflation factors", ["column", "vif"], [[k, v] for k, v in factors.items()])
    logger.info(f"Fit {len(f.column_ids)} predictors on {f.n} rows: R² {f.r2:.4f}, sigma {f.sigma_hat:.4f}")
    return doc


def run_groups(d: Dataset, source: Optional[str] = None, threshold: Optional[float] = None) -> ReportDocument:
    r = numerics.correlation_matrix(d.X, d.predictor_names)
    structure = build_structure(d, threshold)
    s = scaling_info(d)
    doc = ReportDocument(command="groups", source=source)
    doc.add_table(
        "correlation",
        "Correlation matrix",
        ["column", *d.predictor_names],
        [[name, *[float(v) for v in r[i]]] for i, name in enumerate(d.predictor_names)],
    )
    rows = []
    for gid in range(structure.n_groups):
        members = structure.members(gid)
        weights = groups.variability_weights(s, structure, gid).weights
        within = [abs(r[i, j]) for i in members for j in members if i < j]
        rows.append([
            gid,
            structure.label(gid),
            len(members),
            structure.member_signs(gid),
            tuple(float(w) for w in weights),
            min(within) if within else None,
        ])
    doc.add_table(
        "groups",
        f"Groups at threshold {structure.threshold_used:g}",
        ["group", "members", "size", "signs", "vwa_weights", "min_abs_r"],
        rows,
        notes=["(-) marks a member whose sign is flipped in the APC arrangement"],
    )
    return doc


def run_select(
    d: Dataset,
    source: Optional[str] = None,
    method: SelectionMethod = SelectionMethod.ALL_SUBSETS,
    p_rej: Optional[float] = None,
    grouped: bool = True,
    threshold: Optional[float] = None,
    partition: Optional[Sequence[Sequence[str]]] = None,
) -> ReportDocument:
    settings = get_settings()
    detected = build_structure(d, threshold, partition)
    structure = detected if grouped else groups.singleton_structure(d.predictor_names)
    doc = ReportDocument(command="select", source=source)

    if method == SelectionMethod.BACKWARD:
        p_rej = settings.p_reject if p_rej is None else p_rej
        report = selection.backward(d, structure, p_rej)
        doc.add_table(
            "trace",
            f"Backward elimination (p_rej = {p_rej:g})",
            ["step", "dropped", "f", "p", "remaining"],
            [[i, _columns_label(s.columns), s.f, s.p, _columns_label(s.remaining)]
             for i, s in enumerate(report.trace, start=1)],
        )
    else:
        report = selection.all_subsets(d, structure, reference=detected, max_groups=settings.max_groups)
        doc.add_table(
            "candidates",
            "Candidate models by adjusted R²",
            ["rank", "columns", "size", "r2", "adj_r2", "group_based"],
            [[i, _columns_label(c.columns), c.size, c.r2, c.adj_r2, c.group_based]
             for i, c in enumerate(report.ranked, start=1)],
            notes=[f"singular, skipped: {_columns_label(cols)}" for cols in report.skipped],
        )
    doc.add_values(
        "chosen",
        "Chosen model",
        {
            "method": method.value,
            "grouped": grouped,
            "columns": _columns_label(report.chosen.columns),
            "adj_r2": report.chosen.adj_r2,
            "candidates": len(report.ranked),
        },
    )
    return doc


def run_effects(
    d: Dataset,
    entries: Sequence[EffectSpecEntry],
    source: Optional[str] = None,
    threshold: Optional[float] = None,
    partition: Optional[Sequence[Sequence[str]]] = None,
    c_threshold: Optional[float] = None,
) -> ReportDocument:
    settings = get_settings()
    c_threshold = settings.estimability_threshold if c_threshold is None else c_threshold
    structure = build_structure(d, threshold, partition)
    f = ols.fit(d)
    std_data, s = standardize(d)
    std_fit = ols.fit(std_data, intercept=False)
    specs = resolve_effects(entries, structure, s)

    rows = []
    for entry, spec in zip(entries, specs):
        e = groups.estimate_effect(
            f, spec, structure, null_value=entry.null_value,
            std_fit=std_fit, scaling=s, c_threshold=c_threshold,
        )
        rows.append([
            e.label, _columns_label(e.members), e.weights, e.raw_weights, e.estimate, e.se, e.t, e.p,
            e.ci_low, e.ci_high, e.kappa, e.standardized_variance, e.estimable,
        ])
    doc = ReportDocument(command="effects", source=source)
    doc.add_table(
        "effects",
        "Group effects",
        ["label", "members", "weights", "raw_weights", "estimate", "se", "t", "p",
         "ci_low", "ci_high", "kappa", "std_variance", "estimable"],
        rows,
        notes=["weights are in APC coordinates; raw_weights apply to the columns as given"],
    )
    doc.add_values(
        "summary",
        "Error variance",
        {
            "sigma_hat": f.sigma_hat,
            "df_residual": f.df_residual,
            "std_sigma_hat": std_fit.sigma_hat,
            "std_df_residual": std_fit.df_residual,
            "c_threshold": c_threshold,
        },
    )
    return doc


def run_predict(
    d: Dataset,
    points: Sequence[Tuple[str, Sequence[float]]],
    source: Optional[str] = None,
    tolerance: Optional[float] = None,
    threshold: Optional[float] = None,
    partition: Optional[Sequence[Sequence[str]]] = None,
) -> ReportDocument:
    tolerance = get_settings().feasibility_tolerance if tolerance is None else tolerance
    structure = build_structure(d, threshold, partition)
    f = ols.fit(d)
    reports = predict.assess_points(f, scaling_info(d), structure, points, tolerance)
    doc = ReportDocument(command="predict", source=source)
    doc.add_table(
        "predictions",
        f"Predictions (feasibility tolerance {tolerance:g})",
        ["point", "y_hat", "var_hat", "feasible", "spreads", "extrapolated", "standardized"],
        [[
            r.label, r.y_hat, r.var_hat, r.feasible, r.per_group_spread,
            [n for n, flag in zip(structure.predictor_names, r.extrapolation_flags) if flag],
            r.standardized,
        ] for r in reports],
    )
    return doc


def run_simulate(
    preset: SimulationPreset,
    seed: Optional[int] = None,
    reps: Optional[int] = None,
    threshold: Optional[float] = None,
) -> ReportDocument:
    """Monte Carlo experiments on the fixed simulation design"""
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    if reps is None:
        reps = settings.selection_reps if preset == SimulationPreset.SELECTION_STABILITY else settings.mc_reps
    if reps < 1:
        raise ArgumentError("reps must be at least 1")
    cfg = SimConfig(seed=seed, reps=reps)
    d = sim_xd(seed)
    structure = build_structure(d, threshold)
    doc = ReportDocument(command=f"simulate {preset.value}", source="sim-xd")

    if preset in (SimulationPreset.TABLE1, SimulationPreset.TABLE2):
        specs = resolve_effects(SIM_EFFECTS, structure, scaling_info(d))
        if preset == SimulationPreset.TABLE1:
            specs = specs + simulate.coefficient_specs(d.predictor_names)
        rows = simulate.monte_carlo_effects(XD, cfg, specs, structure, experiment=preset.value)
        if preset == SimulationPreset.TABLE1:
            doc.add_table(
                "effects",
                f"Estimated effects over {reps} replicates",
                ["label", "exact", "mc_mean", "mc_se", "mc_var"],
                [[r.label, r.exact, r.mc_mean, r.mc_se, r.mc_var] for r in rows],
            )
        else:
            doc.add_table(
                "variances",
                f"Observed and estimated variances over {reps} replicates",
                ["label", "mc_var", "mc_se", "mean_est_var", "var_est_var"],
                [[r.label, r.mc_var, r.mc_se, r.mean_est_var, r.var_est_var] for r in rows],
            )
    elif preset == SimulationPreset.PREDICT_COMPARE:
        grid = simulate.default_lambda_grid(
            settings.ridge_lambda_min, settings.ridge_lambda_max, settings.ridge_lambda_count
        )
        rows = simulate.compare_predictors(XD, cfg, SIM_POINTS, grid, settings.ridge_folds)
        doc.add_table(
            "comparison",
            f"Least squares vs ridge predictors of E(y) over {reps} replicates",
            ["point", "exact", "ls_bias", "ls_mse", "ls_mean_var_hat", "ridge_bias", "ridge_mse"],
            [[r.label, r.exact, r.ls_bias, r.ls_mse, r.ls_mean_var_hat, r.ridge_bias, r.ridge_mse] for r in rows],
        )
    else:
        report = simulate.selection_stability(XD, cfg, structure)
        doc.add_values(
            "summary",
            f"Selection over {reps} replicates",
            {
                "correct_model": _columns_label(report.correct_model),
                "traditional_correct": report.traditional_correct,
                "grouped_correct": report.grouped_correct,
                "traditional_distinct": report.traditional_distinct,
                "grouped_distinct": report.grouped_distinct,
                "traditional_split_groups": report.traditional_split_groups,
            },
        )
        doc.add_table("traditional", "Traditional picks", ["model", "count"],
                      [[k, v] for k, v in report.traditional_counts.items()])
        doc.add_table("grouped", "Group-based picks", ["model", "count"],
                      [[k, v] for k, v in report.grouped_counts.items()])
    doc.add_values("settings", "Simulation settings", {"seed": seed, "reps": reps})
    return doc
