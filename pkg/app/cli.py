"""
Command-line front end

    collinear fit --fixture hald-renamed
    collinear groups --input data.csv --response y --threshold 0.8
    collinear select --fixture hald-augmented --method backward --singleton
    collinear effects --fixture hald-renamed --format json
    collinear predict --fixture hald-renamed --tolerance 0.1
    collinear simulate --preset table1 --reps 1000 --seed 1

Reports go to stdout, logs to stderr. Exit codes: 0 ok, 2 input error,
3 numerical failure, 4 invalid arguments.
"""
import functools
import sys
from typing import Callable, List, Optional

import click
from loguru import logger

from app.exceptions import ArgumentError, CollinearException
from app.fixtures import EFFECT_PRESETS, FIXTURES, POINT_PRESETS, load_fixture
from app.models import Dataset, OutputFormat, ReportDocument, SelectionMethod, SimulationPreset
from app.services import analysis
from app.services.data import load_csv
from app.services.metrics import command_duration_seconds, export_textfile
from app.services.report import render
from app.utils import configure_logging
from app.validators import load_effect_specs, load_points
from config import parse_name_list
from config.settings import get_settings

settings = get_settings()


def _output_options(func: Callable) -> Callable:
    func = click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]),
                        default=OutputFormat.TEXT.value, show_default=True, help="Report format")(func)
    func = click.option("--decimals", type=click.IntRange(0, 12), default=None,
                        help="Decimals in text output [default: settings.decimals]")(func)
    func = click.option("--metrics-file", type=click.Path(dir_okay=False), default=None,
                        help="Write Prometheus metrics here after the command")(func)
    return func


def _data_options(func: Callable) -> Callable:
    func = click.option("--fixture", type=click.Choice(sorted(FIXTURES)), default=None,
                        help="Embedded dataset")(func)
    func = click.option("--input", "input_path", type=click.Path(dir_okay=False), default=None,
                        help="CSV file with a header row")(func)
    func = click.option("--response", default="y", show_default=True, help="Response column of --input")(func)
    func = click.option("--seed", type=int, default=None,
                        help="Seed for the sim-xd response [default: COLLINEAR_SEED]")(func)
    return _output_options(func)


def _group_options(func: Callable) -> Callable:
    func = click.option("--threshold", type=click.FloatRange(0, 1, min_open=True, max_open=True), default=None,
                        help="|r| linking two predictors [default: settings.group_threshold]")(func)
    func = click.option("--group", "declared", multiple=True,
                        help="Declare a group as comma-separated names (repeatable); replaces detection")(func)
    return func


def _load_dataset(fixture: Optional[str], input_path: Optional[str], response: str, seed: Optional[int]) -> Dataset:
    if (fixture is None) == (input_path is None):
        raise ArgumentError("Give exactly one of --fixture or --input")
    if fixture is not None:
        return load_fixture(fixture, seed if seed is not None else settings.seed)
    return load_csv(input_path, response)


def _partition(declared) -> Optional[List[List[str]]]:
    groups = [parse_name_list(g) for g in declared]
    groups = [g for g in groups if g]
    return groups or None


def _emit(document: ReportDocument, fmt: str, decimals: Optional[int]) -> None:
    decimals = settings.decimals if decimals is None else decimals
    click.echo(render(document, OutputFormat(fmt), decimals), nl=False)


def reports_errors(command: str) -> Callable:
    """Run a command body, mapping toolkit exceptions to exit codes"""
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            metrics_file = kwargs.get("metrics_file") or settings.metrics_textfile
            try:
                with command_duration_seconds.labels(command=command).time():
                    document = func(*args, **kwargs)
                _emit(document, kwargs.get("fmt", OutputFormat.TEXT.value), kwargs.get("decimals"))
            except CollinearException as e:
                logger.error(f"{command} failed: {e}")
                click.echo(f"Error: {e}", err=True)
                sys.exit(e.exit_code)
            finally:
                export_textfile(metrics_file)
        return wrapper
    return decorator


@click.group()
@click.version_option(settings.app_version, prog_name=settings.app_name)
@click.option("--log-level", default=None, help="Log level [default: settings.log_level]")
@click.option("--log-json/--no-log-json", default=None, help="Serialized JSON log records")
def cli(log_level: Optional[str], log_json: Optional[bool]):
    """Regression analysis for strongly correlated predictors"""
    configure_logging(
        (log_level or settings.log_level).upper(),
        settings.log_json if log_json is None else log_json,
        settings.log_file,
    )


@cli.command()
@_data_options
@click.option("--no-intercept", is_flag=True, help="Fit without an intercept column")
@reports_errors("fit")
def fit(fixture, input_path, response, seed, fmt, decimals, metrics_file, no_intercept):
    """Least squares fit with coefficient tests and VIFs"""
    d = _load_dataset(fixture, input_path, response, seed)
    return analysis.run_fit(d, source=fixture or input_path, intercept=not no_intercept)


@cli.command()
@_data_options
@click.option("--threshold", type=click.FloatRange(0, 1, min_open=True, max_open=True), default=None,
              help="|r| linking two predictors [default: settings.group_threshold]")
@reports_errors("groups")
def groups(fixture, input_path, response, seed, fmt, decimals, metrics_file, threshold):
    """Correlation matrix, detected groups and their APC arrangements"""
    d = _load_dataset(fixture, input_path, response, seed)
    return analysis.run_groups(d, source=fixture or input_path, threshold=threshold)


@cli.command()
@_data_options
@_group_options
@click.option("--method", type=click.Choice([m.value for m in SelectionMethod]),
              default=SelectionMethod.ALL_SUBSETS.value, show_default=True)
@click.option("--p-rej", type=click.FloatRange(0, 1, min_open=True, max_open=True), default=None,
              help="Backward elimination reject p-value [default: settings.p_reject]")
@click.option("--grouped/--singleton", default=True, show_default=True,
              help="Treat each correlated group as one unit, or every predictor alone")
@reports_errors("select")
def select(fixture, input_path, response, seed, fmt, decimals, metrics_file,
           threshold, declared, method, p_rej, grouped):
    """Variable selection by all-subsets adjusted R² or backward elimination"""
    d = _load_dataset(fixture, input_path, response, seed)
    return analysis.run_select(
        d, source=fixture or input_path, method=SelectionMethod(method), p_rej=p_rej,
        grouped=grouped, threshold=threshold, partition=_partition(declared),
    )


@cli.command()
@_data_options
@_group_options
@click.option("--spec", "spec_path", type=click.Path(dir_okay=False), default=None,
              help="JSON effect spec [default: the fixture's preset]")
@click.option("--c-threshold", type=click.FloatRange(0, min_open=True), default=None,
              help="Estimability bound on Var/sigma² [default: settings.estimability_threshold]")
@reports_errors("effects")
def effects(fixture, input_path, response, seed, fmt, decimals, metrics_file,
            threshold, declared, spec_path, c_threshold):
    """Estimates, t tests and estimability of group effects"""
    d = _load_dataset(fixture, input_path, response, seed)
    partition = _partition(declared)
    if spec_path is not None:
        spec_file = load_effect_specs(spec_path)
        entries = spec_file.effects
        partition = spec_file.groups or partition
    elif fixture in EFFECT_PRESETS:
        entries = EFFECT_PRESETS[fixture]
    else:
        raise ArgumentError("--spec is required unless a fixture with preset effects is used")
    return analysis.run_effects(
        d, entries, source=fixture or input_path, threshold=threshold,
        partition=partition, c_threshold=c_threshold,
    )


@cli.command()
@_data_options
@_group_options
@click.option("--points", "points_path", type=click.Path(dir_okay=False), default=None,
              help="JSON prediction points [default: the fixture's preset]")
@click.option("--tolerance", type=click.FloatRange(0), default=None,
              help="Largest within-group spread of a feasible point [default: settings.feasibility_tolerance]")
@reports_errors("predict")
def predict(fixture, input_path, response, seed, fmt, decimals, metrics_file,
            threshold, declared, points_path, tolerance):
    """Predicted mean responses with variances and feasibility verdicts"""
    d = _load_dataset(fixture, input_path, response, seed)
    if points_path is not None:
        points = load_points(points_path).as_pairs()
    elif fixture in POINT_PRESETS:
        points = POINT_PRESETS[fixture]
    else:
        raise ArgumentError("--points is required unless a fixture with preset points is used")
    return analysis.run_predict(
        d, points, source=fixture or input_path, tolerance=tolerance,
        threshold=threshold, partition=_partition(declared),
    )


@cli.command()
@click.option("--preset", type=click.Choice([p.value for p in SimulationPreset]), required=True)
@click.option("--seed", type=int, default=None, help="Root seed [default: COLLINEAR_SEED]")
@click.option("--reps", type=click.IntRange(1), default=None, help="Replicates [default: from settings]")
@_output_options
@reports_errors("simulate")
def simulate(preset, seed, reps, fmt, decimals, metrics_file):
    """Monte Carlo studies on the fixed simulation design"""
    return analysis.run_simulate(SimulationPreset(preset), seed=seed, reps=reps)


if __name__ == "__main__":
    cli()
