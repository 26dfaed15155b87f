"""
Seeded simulation of the six-predictor model with two correlated pairs

Design columns:
    x1 = z1,  x2 = gamma * (w1 z1 + (1 - w1) z2)
    x3 = z3,  x4 = gamma * (w2 z3 + (1 - w2) z4)
    x5 = z5,  x6 = gamma * z6
with z_i i.i.d. standard normal, and y = beta0 + X beta + sigma * eps.

Replicate r draws its noise from the r-th child of SeedSequence(seed), so
results do not depend on evaluation order.
"""
from collections import Counter
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from app.exceptions import ArgumentError, NotPositiveDefinite, SingularDesign
from app.models import (
    Dataset,
    GroupEffectSpec,
    GroupStructure,
    McEffectRow,
    PredictorComparisonRow,
    RidgeResult,
    SelectionStabilityReport,
    SimConfig,
)
from app.services import numerics, ols, selection
from app.services.data import back_transform, scaling_info
from app.services.groups import column_effect_spec, effect_vector, singleton_structure, true_effect_value
from app.services.metrics import track_replicates

X_NAMES = ("x1", "x2", "x3", "x4", "x5", "x6")
CORRECT_MODEL = ("x3", "x4", "x6")

SeedLike = Union[int, np.random.Generator, np.random.SeedSequence, None]


def replicate_generators(seed: int, reps: int) -> List[np.random.Generator]:
    """One independent generator per replicate"""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(reps)]


def generate_design(cfg: SimConfig, seed: SeedLike = None) -> np.ndarray:
    """n x 6 design drawn from cfg's mixing scheme (seed defaults to cfg.seed)"""
    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    z = rng.standard_normal((cfg.n, 6))
    x = np.empty_like(z)
    x[:, 0] = z[:, 0]
    x[:, 1] = cfg.gamma * (cfg.w1 * z[:, 0] + (1 - cfg.w1) * z[:, 1])
    x[:, 2] = z[:, 2]
    x[:, 3] = cfg.gamma * (cfg.w2 * z[:, 2] + (1 - cfg.w2) * z[:, 3])
    x[:, 4] = z[:, 4]
    x[:, 5] = cfg.gamma * z[:, 5]
    return x


def mean_response(x, beta) -> np.ndarray:
    """E(y) = beta0 + x beta_slopes for one point or a matrix of rows"""
    beta = np.asarray(beta, dtype=float)
    return beta[0] + np.asarray(x, dtype=float) @ beta[1:]


def generate_response(x, beta, sigma: float, seed: SeedLike) -> np.ndarray:
    x = numerics.as_matrix(x, "design")
    beta = np.asarray(beta, dtype=float)
    if beta.shape[0] != x.shape[1] + 1:
        raise ArgumentError(f"beta needs {x.shape[1] + 1} entries, got {beta.shape[0]}")
    rng = np.random.default_rng(seed)
    return mean_response(x, beta) + sigma * rng.standard_normal(x.shape[0])


def simulated_dataset(x, y, names: Sequence[str] = X_NAMES) -> Dataset:
    return Dataset(predictor_names=tuple(names), X=x, y=y)


def _responses(x: np.ndarray, cfg: SimConfig) -> np.ndarray:
    """reps x n matrix of responses, row r from replicate generator r"""
    gens = replicate_generators(cfg.seed, cfg.reps)
    return np.vstack([generate_response(x, cfg.beta_vector, cfg.sigma, g) for g in gens])


def _sample_var(values: np.ndarray) -> np.ndarray:
    ddof = 1 if values.shape[0] > 1 else 0
    return values.var(axis=0, ddof=ddof)


def coefficient_specs(names: Sequence[str] = X_NAMES) -> List[GroupEffectSpec]:
    """Individual slopes written as one-column effects, labelled beta1..betak"""
    return [column_effect_spec([name], [1.0], label=f"beta{i}") for i, name in enumerate(names, start=1)]


def monte_carlo_effects(
    x,
    cfg: SimConfig,
    specs: Sequence[GroupEffectSpec],
    structure: GroupStructure,
    experiment: str = "effects",
) -> List[McEffectRow]:
    """
    Sampling behaviour of effect estimators over replicated responses at fixed x

    All replicates share x, so every replicate fit is B = (X'X)^-1 X' y taken
    in one product; per-replicate sigma² follows from the residuals.
    """
    x = numerics.as_matrix(x, "design")
    names = structure.predictor_names
    ys = _responses(x, cfg)
    base = ols.fit_arrays(x, ys[0], names, intercept=True)

    design = np.column_stack([np.ones(x.shape[0]), x])
    coefs = ys @ (base.xtx_inverse @ design.T).T
    residuals = ys - coefs @ design.T
    sigma2 = np.sum(residuals ** 2, axis=1) / base.df_residual

    slopes = cfg.beta_vector[1:]
    rows = []
    for spec in specs:
        c = effect_vector(spec, structure, base)
        estimates = coefs @ c
        est_var = sigma2 * float(c @ base.xtx_inverse @ c)
        mc_var = float(_sample_var(estimates))
        rows.append(
            McEffectRow(
                label=spec.label,
                exact=true_effect_value(slopes, spec, structure),
                mc_mean=float(estimates.mean()),
                mc_var=mc_var,
                mc_se=float(np.sqrt(mc_var / cfg.reps)),
                mean_est_var=float(est_var.mean()),
                var_est_var=float(_sample_var(est_var)),
                reps=cfg.reps,
            )
        )
    track_replicates(experiment, cfg.reps)
    logger.info(f"Monte Carlo '{experiment}': {cfg.reps} replicates, {len(rows)} effects")
    return rows


def default_lambda_grid(lower: float = 0.01, upper: float = 1000.0, count: int = 50) -> np.ndarray:
    """count log-spaced penalties in [lower, upper]"""
    if not 0 < lower < upper or count < 1:
        raise ArgumentError("lambda grid needs 0 < lower < upper and count >= 1")
    return np.logspace(np.log10(lower), np.log10(upper), count)


def _standardized_ridge(xs: np.ndarray, yc: np.ndarray, lambdas: np.ndarray) -> np.ndarray:
    """Rows are (X'X + lambda I)^-1 X'y for each lambda, standardized coordinates"""
    k = xs.shape[1]
    gram = xs.T @ xs
    systems = gram[np.newaxis, :, :] + lambdas[:, np.newaxis, np.newaxis] * np.eye(k)
    rhs = np.broadcast_to(xs.T @ yc, (len(lambdas), k))
    try:
        return numerics.solve_spd_batch(systems, rhs)
    except NotPositiveDefinite as e:
        raise SingularDesign([f"column {j}" for j in range(k)], reason=str(e))


def ridge_coefficients(d: Dataset, lambdas) -> np.ndarray:
    """
    Closed-form ridge path on the original scale

    Returns:
        len(lambdas) x (k + 1) array of (intercept, slopes)
    """
    lambdas = np.atleast_1d(np.asarray(lambdas, dtype=float))
    if np.any(lambdas < 0):
        raise ArgumentError("ridge penalties must be non-negative")
    info = scaling_info(d)
    xs = (d.X - info.means) / info.scales
    path = _standardized_ridge(xs, d.y - info.response_mean, lambdas)
    return np.vstack([back_transform(b, info) for b in path])


def fold_assignment(n: int, folds: int, seed: SeedLike) -> np.ndarray:
    """Fold id per row: a seeded permutation dealt round-robin"""
    if folds < 2 or folds > n:
        raise ArgumentError(f"folds must lie in [2, {n}], got {folds}")
    order = np.random.default_rng(seed).permutation(n)
    assignment = np.empty(n, dtype=int)
    assignment[order] = np.arange(n) % folds
    return assignment


def cv_curve(d: Dataset, lambdas, assignment: np.ndarray) -> np.ndarray:
    """Mean squared prediction error per lambda; each fold re-standardizes its training rows"""
    lambdas = np.asarray(lambdas, dtype=float)
    sq_error = np.zeros(len(lambdas))
    for fold in np.unique(assignment):
        test = assignment == fold
        train = Dataset(predictor_names=d.predictor_names, X=d.X[~test], y=d.y[~test])
        path = ridge_coefficients(train, lambdas)
        predictions = path[:, :1] + path[:, 1:] @ d.X[test].T
        sq_error += np.sum((predictions - d.y[test]) ** 2, axis=1)
    return sq_error / d.n


def ridge_fit(
    d: Dataset,
    lambda_grid=None,
    folds: int = 5,
    seed: SeedLike = 0,
) -> RidgeResult:
    """Ridge coefficients at the penalty minimizing k-fold CV error (first minimum on ties)"""
    grid = default_lambda_grid() if lambda_grid is None else np.asarray(lambda_grid, dtype=float)
    if grid.size == 0 or np.any(grid <= 0):
        raise ArgumentError("lambda grid must hold positive values")
    curve = cv_curve(d, grid, fold_assignment(d.n, folds, seed))
    best = int(np.argmin(curve))
    coefficients = ridge_coefficients(d, grid[best:best + 1])[0]
    return RidgeResult(coefficients=coefficients, lambda_star=float(grid[best]), lambda_grid=grid, cv_mse=curve)


def compare_predictors(
    x,
    cfg: SimConfig,
    points: Sequence[Tuple[str, Sequence[float]]],
    lambda_grid=None,
    folds: int = 5,
    names: Sequence[str] = X_NAMES,
) -> List[PredictorComparisonRow]:
    """Bias and MSE of least squares and ridge predictors of E(y) at fixed points"""
    x = numerics.as_matrix(x, "design")
    grid = default_lambda_grid() if lambda_grid is None else np.asarray(lambda_grid, dtype=float)
    labels = [label for label, _ in points]
    targets = np.array([np.asarray(p, dtype=float) for _, p in points])
    exact = mean_response(targets, cfg.beta_vector)

    ls_pred = np.empty((cfg.reps, len(points)))
    ls_var = np.empty((cfg.reps, len(points)))
    ridge_pred = np.empty((cfg.reps, len(points)))
    template = simulated_dataset(x, np.zeros(x.shape[0]), names)
    for r, gen in enumerate(replicate_generators(cfg.seed, cfg.reps)):
        d = template.with_response(generate_response(x, cfg.beta_vector, cfg.sigma, gen))
        fit = ols.fit(d)
        augmented = np.column_stack([np.ones(len(points)), targets])
        ls_pred[r] = augmented @ fit.coefficients
        ls_var[r] = np.einsum("ij,jk,ik->i", augmented, fit.coef_covariance, augmented)
        ridge = ridge_fit(d, grid, folds, seed=gen)
        ridge_pred[r] = augmented @ ridge.coefficients
    track_replicates("predict-compare", cfg.reps)

    rows = []
    for j, label in enumerate(labels):
        rows.append(
            PredictorComparisonRow(
                label=label,
                point=tuple(float(v) for v in targets[j]),
                exact=float(exact[j]),
                ls_bias=float(ls_pred[:, j].mean() - exact[j]),
                ls_mse=float(np.mean((ls_pred[:, j] - exact[j]) ** 2)),
                ls_mean_var_hat=float(ls_var[:, j].mean()),
                ridge_bias=float(ridge_pred[:, j].mean() - exact[j]),
                ridge_mse=float(np.mean((ridge_pred[:, j] - exact[j]) ** 2)),
                reps=cfg.reps,
            )
        )
    logger.info(f"Compared least squares and ridge at {len(rows)} points over {cfg.reps} replicates")
    return rows


def _model_key(columns: Sequence[str]) -> str:
    return "{" + ", ".join(columns) + "}"


def selection_stability(
    x,
    cfg: SimConfig,
    structure: GroupStructure,
    correct_model: Sequence[str] = CORRECT_MODEL,
) -> SelectionStabilityReport:
    """
    Traditional vs group-based all-subsets selection over replicated responses

    Counts how often each model is picked, how often the correct model is
    picked, and how many traditional picks split a correlated group.
    """
    x = numerics.as_matrix(x, "design")
    names = structure.predictor_names
    singletons = singleton_structure(names)
    traditional: Counter = Counter()
    grouped: Counter = Counter()
    split = 0
    template = simulated_dataset(x, np.zeros(x.shape[0]), names)
    for gen in replicate_generators(cfg.seed, cfg.reps):
        d = template.with_response(generate_response(x, cfg.beta_vector, cfg.sigma, gen))
        t_pick = selection.all_subsets(d, singletons).chosen.columns
        g_pick = selection.all_subsets(d, structure).chosen.columns
        traditional[_model_key(t_pick)] += 1
        grouped[_model_key(g_pick)] += 1
        if not selection.respects_groups(t_pick, structure):
            split += 1
    track_replicates("selection-stability", cfg.reps)

    correct = _model_key(correct_model)
    report = SelectionStabilityReport(
        reps=cfg.reps,
        correct_model=tuple(correct_model),
        traditional_counts=_sorted_counts(traditional),
        grouped_counts=_sorted_counts(grouped),
        traditional_correct=traditional[correct],
        grouped_correct=grouped[correct],
        traditional_split_groups=split,
    )
    logger.info(
        f"Selection stability over {cfg.reps} replicates: correct model "
        f"{report.traditional_correct} (traditional) vs {report.grouped_correct} (grouped)"
    )
    return report


def _sorted_counts(counts: Counter) -> Dict[str, int]:
    """Most frequent first, ties by model name"""
    return dict(sorted(counts.items(), key=lambda item: (-item[1], item[0])))
