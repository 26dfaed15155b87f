from typing import Any, Dict, List, Optional

import pandas as pd
from fastapi import APIRouter
from pydantic import BaseModel, Field, model_validator

from app.exceptions import ArgumentError
from app.fixtures import EFFECT_PRESETS, FIXTURES, POINT_PRESETS, load_fixture
from app.models import Dataset, ReportDocument, SelectionMethod
from app.services import analysis
from app.services.data import load_frame
from app.services.metrics import time_command
from app.services.report import to_plain
from app.validators import EffectSpecEntry, PointEntry
from config.settings import get_settings

settings = get_settings()
router = APIRouter()


class DataRequest(BaseModel):
    """Dataset for one analysis: an embedded fixture or inline rows"""
    fixture: Optional[str] = Field(None, description=f"One of {sorted(FIXTURES)}")
    columns: Optional[List[str]] = Field(None, description="Column names of the inline rows")
    rows: Optional[List[List[float]]] = Field(None, description="Inline data rows", max_length=100_000)
    response: str = Field("y", description="Response column of the inline rows")
    seed: Optional[int] = Field(None, description="Seed for the sim-xd response")
    threshold: Optional[float] = Field(None, description="Group threshold", gt=0, lt=1)
    groups: Optional[List[List[str]]] = Field(None, description="Declared groups replacing detection")

    @model_validator(mode='after')
    def check_source(self):
        if (self.fixture is None) == (self.rows is None):
            raise ValueError("Give exactly one of 'fixture' or 'rows'")
        if self.rows is not None and not self.columns:
            raise ValueError("Inline rows need 'columns'")
        return self


class SelectRequest(DataRequest):
    method: SelectionMethod = SelectionMethod.ALL_SUBSETS
    p_rej: Optional[float] = Field(None, gt=0, lt=1)
    grouped: bool = True


class EffectsRequest(DataRequest):
    effects: Optional[List[EffectSpecEntry]] = Field(None, description="Effect specs; defaults to the fixture preset")
    c_threshold: Optional[float] = Field(None, gt=0)


class PredictRequest(DataRequest):
    points: Optional[List[PointEntry]] = Field(None, description="Points; defaults to the fixture preset")
    tolerance: Optional[float] = Field(None, ge=0)


def _dataset(request: DataRequest) -> Dataset:
    if request.fixture is not None:
        return load_fixture(request.fixture, request.seed if request.seed is not None else settings.seed)
    frame = pd.DataFrame(request.rows, columns=request.columns)
    return load_frame(frame, request.response)


def _source(request: DataRequest) -> str:
    return request.fixture or "inline"


def _respond(document: ReportDocument) -> Dict[str, Any]:
    return to_plain(document.model_dump())


@router.post("/fit")
@time_command("http_fit")
def fit(request: DataRequest):
    """Least squares fit with coefficient tests and VIFs"""
    return _respond(analysis.run_fit(_dataset(request), source=_source(request)))


@router.post("/groups")
@time_command("http_groups")
def groups(request: DataRequest):
    """Correlation matrix and detected groups"""
    return _respond(analysis.run_groups(_dataset(request), source=_source(request), threshold=request.threshold))


@router.post("/select")
@time_command("http_select")
def select(request: SelectRequest):
    """All-subsets or backward selection"""
    return _respond(analysis.run_select(
        _dataset(request), source=_source(request), method=request.method, p_rej=request.p_rej,
        grouped=request.grouped, threshold=request.threshold, partition=request.groups,
    ))


@router.post("/effects")
@time_command("http_effects")
def effects(request: EffectsRequest):
    """Group effect estimates and estimability"""
    entries = request.effects or EFFECT_PRESETS.get(request.fixture)
    if not entries:
        raise ArgumentError("'effects' is required unless a fixture with preset effects is used")
    return _respond(analysis.run_effects(
        _dataset(request), entries, source=_source(request), threshold=request.threshold,
        partition=request.groups, c_threshold=request.c_threshold,
    ))


@router.post("/predict")
@time_command("http_predict")
def predict(request: PredictRequest):
    """Predictions with feasibility verdicts"""
    if request.points:
        points = [(p.label, p.values) for p in request.points]
    else:
        points = POINT_PRESETS.get(request.fixture)
    if not points:
        raise ArgumentError("'points' is required unless a fixture with preset points is used")
    return _respond(analysis.run_predict(
        _dataset(request), points, source=_source(request), tolerance=request.tolerance,
        threshold=request.threshold, partition=request.groups,
    ))
