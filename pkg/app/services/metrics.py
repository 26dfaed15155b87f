"""
Prometheus metrics for the collinear toolkit

Tracks:
- OLS fits and singular designs
- Selection candidates evaluated and skipped
- Monte Carlo replicates per experiment
- Command and request durations
"""
import time
from functools import wraps
from pathlib import Path
from typing import Callable, Optional, Union

from loguru import logger
from prometheus_client import REGISTRY, Counter, Histogram, write_to_textfile

fits_total = Counter(
    'collinear_fits_total',
    'Least squares fits computed',
    ['intercept']  # true, false
)

singular_designs_total = Counter(
    'collinear_singular_designs_total',
    'Fits rejected because XtX was not positive definite'
)

selection_candidates_total = Counter(
    'collinear_selection_candidates_total',
    'Candidate models considered by variable selection',
    ['result']  # fitted, skipped
)

mc_replicates_total = Counter(
    'collinear_mc_replicates_total',
    'Monte Carlo replicates completed',
    ['experiment']
)

command_duration_seconds = Histogram(
    'collinear_command_duration_seconds',
    'Wall time of one analysis command',
    ['command'],
    buckets=[0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0, 30.0, 60.0]
)


def track_fit(intercept: bool):
    fits_total.labels(intercept=str(intercept).lower()).inc()


def track_singular_design():
    singular_designs_total.inc()


def track_candidate(skipped: bool = False):
    """Track one selection candidate"""
    selection_candidates_total.labels(result='skipped' if skipped else 'fitted').inc()


def track_replicates(experiment: str, count: int = 1):
    mc_replicates_total.labels(experiment=experiment).inc(count)


def time_command(command: str) -> Callable:
    """Decorator observing the wrapped call's duration under `command`"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                command_duration_seconds.labels(command=command).observe(time.perf_counter() - start)
        return wrapper
    return decorator


def export_textfile(path: Optional[Union[str, Path]]) -> None:
    """Write the default registry in node-exporter textfile format"""
    if not path:
        return
    write_to_textfile(str(path), REGISTRY)
    logger.debug(f"Metrics written to {path}")
