"""
Dataset ingestion and the standardized-model transforms

Standardization follows the length-one convention: each predictor is
centered and divided by the length of the centered column, the response is
only centered, and the standardized model is fit without an intercept.
"""
from pathlib import Path
from typing import Tuple, Union

import numpy as np
import pandas as pd
from loguru import logger

from app.exceptions import (
    DimensionMismatch,
    DuplicateName,
    EmptyDataset,
    InputError,
    MissingColumn,
    ParseError,
    ZeroVariance,
)
from app.models import Dataset, ScalingInfo

# Relative size below which a centered column length counts as zero
ZERO_LENGTH_TOLERANCE = 1e-12


def load_csv(path: Union[str, Path], response_column: str = "y") -> Dataset:
    """
    Read a comma-separated file with one header row

    Args:
        path: CSV file path
        response_column: name of the response column

    Returns:
        Dataset whose predictors are the remaining columns in file order

    Raises:
        ParseError: a cell is blank or not numeric (row is the 1-based file line)
        MissingColumn: the response column is not in the header
        DuplicateName: the header repeats a name
    """
    try:
        raw = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, skip_blank_lines=True)
    except FileNotFoundError:
        raise InputError(f"File not found: {path}")
    except pd.errors.EmptyDataError:
        raise EmptyDataset(f"{path} is empty")
    except pd.errors.ParserError as e:
        raise InputError(f"Malformed CSV {path}: {e}")

    header = [str(h).strip() for h in raw.iloc[0].tolist()]
    seen = set()
    for name in header:
        if name in seen:
            raise DuplicateName(name)
        seen.add(name)
    body = raw.iloc[1:].reset_index(drop=True)
    body.columns = header
    if body.empty:
        raise EmptyDataset(f"{path} has a header but no rows")
    frame = _parse_numeric(body)
    logger.info(f"Loaded {path}: {frame.shape[0]} rows, {frame.shape[1]} columns")
    return load_frame(frame, response_column)


def _parse_numeric(body: pd.DataFrame) -> pd.DataFrame:
    stripped = body.apply(lambda col: col.str.strip())
    parsed = stripped.apply(pd.to_numeric, errors="coerce")
    bad = parsed.isna() | ~np.isfinite(parsed.to_numpy(dtype=float, na_value=np.nan))
    if bad.to_numpy().any():
        i, j = np.argwhere(bad.to_numpy())[0]
        # +2: header line plus 1-based numbering
        raise ParseError(row=int(i) + 2, col=str(body.columns[j]), value=str(body.iat[i, j]))
    return parsed.astype(float)


def load_frame(frame: pd.DataFrame, response_column: str = "y") -> Dataset:
    """Build a Dataset from a numeric DataFrame"""
    if response_column not in frame.columns:
        raise MissingColumn(response_column)
    predictors = [str(c) for c in frame.columns if c != response_column]
    if frame.shape[0] == 0 or not predictors:
        raise EmptyDataset("dataset needs at least one row and one predictor")
    return Dataset(
        predictor_names=tuple(predictors),
        X=frame[predictors].to_numpy(dtype=float),
        y=frame[response_column].to_numpy(dtype=float),
        response_name=str(response_column),
    )


def to_frame(d: Dataset) -> pd.DataFrame:
    frame = pd.DataFrame(d.X, columns=list(d.predictor_names))
    frame.insert(0, d.response_name, d.y)
    return frame


def scaling_info(d: Dataset) -> ScalingInfo:
    """Column means and centered lengths of the predictors"""
    means = d.X.mean(axis=0)
    centered = d.X - means
    scales = np.sqrt(np.sum(centered ** 2, axis=0))
    magnitude = np.maximum(np.max(np.abs(d.X), axis=0), 1.0) * np.sqrt(d.n)
    for j, s in enumerate(scales):
        if not s > ZERO_LENGTH_TOLERANCE * magnitude[j]:
            raise ZeroVariance(d.predictor_names[j])
    return ScalingInfo(
        predictor_names=d.predictor_names,
        means=means,
        scales=scales,
        response_mean=float(d.y.mean()),
    )


def standardize(d: Dataset) -> Tuple[Dataset, ScalingInfo]:
    """Center and length-normalize every predictor; center the response"""
    info = scaling_info(d)
    standardized = Dataset(
        predictor_names=d.predictor_names,
        X=(d.X - info.means) / info.scales,
        y=d.y - info.response_mean,
        response_name=d.response_name,
    )
    return standardized, info


def back_transform(std_coefs, s: ScalingInfo) -> np.ndarray:
    """
    Map standardized-model slopes to the original scale

    Returns:
        Vector (intercept, slope_1, ..., slope_k)
    """
    b = np.asarray(std_coefs, dtype=float).reshape(-1)
    if b.shape[0] != s.scales.shape[0]:
        raise DimensionMismatch(s.scales.shape[0], b.shape[0], what="standardized coefficients")
    slopes = b / s.scales
    intercept = s.response_mean - float(np.dot(s.means, slopes))
    return np.concatenate(([intercept], slopes))


def standardize_point(x, s: ScalingInfo) -> np.ndarray:
    """x'_i = (x_i - mean_i) / s_i"""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape[0] != s.scales.shape[0]:
        raise DimensionMismatch(s.scales.shape[0], v.shape[0], what="point")
    return (v - s.means) / s.scales


def unstandardize_point(x_std, s: ScalingInfo) -> np.ndarray:
    """Inverse of standardize_point: x_i = mean_i + x'_i * s_i"""
    v = np.asarray(x_std, dtype=float).reshape(-1)
    if v.shape[0] != s.scales.shape[0]:
        raise DimensionMismatch(s.scales.shape[0], v.shape[0], what="point")
    return s.means + v * s.scales
