"""
Input validators for effect specs, prediction points and declared groups

Validator classes raise ValueError; the file loaders at the bottom turn
every failure into InvalidSpec so callers see one exception type.
"""
import json
import math
import re
from pathlib import Path
from typing import List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from app.exceptions import InvalidSpec

WEIGHT_KEYWORDS = ("avg", "vwa")


class ColumnNameValidator:
    """Validate predictor names referenced from spec files"""

    ALLOWED_PATTERN = re.compile(r'^[^\s,{}()]+$')

    @staticmethod
    def validate(value: str) -> str:
        """
        Validate one column name

        Args:
            value: Column name as written in the header

        Returns:
            The stripped name

        Raises:
            ValueError: If the name is empty or contains separators
        """
        name = str(value).strip()
        if not name:
            raise ValueError("Column name cannot be empty")
        if not ColumnNameValidator.ALLOWED_PATTERN.match(name):
            raise ValueError(f"Invalid column name '{value}'. Whitespace, commas and brackets are not allowed.")
        if len(name) > 64:
            raise ValueError("Column name too long (max 64 chars)")
        return name


class WeightVectorValidator:
    """Validate explicit weights or a weight keyword"""

    @staticmethod
    def validate(value, size: Optional[int] = None) -> Union[str, List[float]]:
        """
        Args:
            value: 'avg', 'vwa' or a list of numbers
            size: expected length for a list

        Returns:
            The keyword or the weights as floats

        Raises:
            ValueError: Unknown keyword, non-finite weight or wrong length
        """
        if isinstance(value, str):
            if value not in WEIGHT_KEYWORDS:
                raise ValueError(f"Unknown weight keyword '{value}'. Use one of {list(WEIGHT_KEYWORDS)} or a list.")
            return value
        weights = [float(w) for w in value]
        if not weights:
            raise ValueError("Weights cannot be empty")
        if not all(math.isfinite(w) for w in weights):
            raise ValueError("Weights must be finite numbers")
        if size is not None and len(weights) != size:
            raise ValueError(f"Expected {size} weights, got {len(weights)}")
        return weights


class PointValidator:
    """Validate a prediction point"""

    @staticmethod
    def validate(values: Sequence[float], size: Optional[int] = None) -> Tuple[float, ...]:
        point = tuple(float(v) for v in values)
        if not point:
            raise ValueError("Point cannot be empty")
        if not all(math.isfinite(v) for v in point):
            raise ValueError("Point coordinates must be finite")
        if size is not None and len(point) != size:
            raise ValueError(f"Point has {len(point)} coordinates, expected {size}")
        return point


class PartitionValidator:
    """Declared groups must be disjoint"""

    @staticmethod
    def validate(groups: Sequence[Sequence[str]]) -> List[List[str]]:
        seen = set()
        cleaned = []
        for block in groups:
            names = [ColumnNameValidator.validate(n) for n in block]
            if not names:
                raise ValueError("Declared groups cannot be empty")
            for name in names:
                if name in seen:
                    raise ValueError(f"Column '{name}' appears in more than one group")
                seen.add(name)
            cleaned.append(names)
        return cleaned


class EffectSpecEntry(BaseModel):
    """One effect in a spec file: a group (APC coordinates) or plain columns"""

    label: Optional[str] = Field(None, description="Display label", max_length=64)
    group: Optional[List[str]] = Field(None, description="Members of one detected or declared group")
    columns: Optional[List[str]] = Field(None, description="Columns of a free combination")
    weights: Union[Literal["avg", "vwa"], List[float]] = Field("vwa", description="Weights or keyword")
    delta: Optional[float] = Field(None, description="Shift weight from first to second member")
    null_value: float = Field(0.0, description="Hypothesized value for the t test")

    @field_validator('group', 'columns')
    @classmethod
    def validate_names(cls, v):
        if v is None:
            return v
        return [ColumnNameValidator.validate(n) for n in v]

    @field_validator('weights')
    @classmethod
    def validate_weights(cls, v):
        return WeightVectorValidator.validate(v)

    @model_validator(mode='after')
    def check_target(self):
        if (self.group is None) == (self.columns is None):
            raise ValueError("Give exactly one of 'group' or 'columns'")
        members = self.group if self.group is not None else self.columns
        if self.columns is not None and isinstance(self.weights, str):
            raise ValueError("Free combinations need explicit weights")
        if isinstance(self.weights, list):
            WeightVectorValidator.validate(self.weights, size=len(members))
        if self.delta is not None and len(members) < 2:
            raise ValueError("A delta shift needs at least two members")
        return self

    @property
    def members(self) -> List[str]:
        return self.group if self.group is not None else self.columns


class EffectSpecFile(BaseModel):
    """Contents of an effect spec file"""

    groups: Optional[List[List[str]]] = Field(None, description="Declared partition replacing detection")
    effects: List[EffectSpecEntry] = Field(..., min_length=1)

    @field_validator('groups')
    @classmethod
    def validate_groups(cls, v):
        return None if v is None else PartitionValidator.validate(v)


class PointEntry(BaseModel):
    label: str = Field(..., min_length=1, max_length=64)
    values: Tuple[float, ...]

    @field_validator('values')
    @classmethod
    def validate_values(cls, v):
        return PointValidator.validate(v)


class PointsFile(BaseModel):
    points: List[PointEntry] = Field(..., min_length=1)

    def as_pairs(self) -> List[Tuple[str, Tuple[float, ...]]]:
        return [(p.label, p.values) for p in self.points]


def _read_json(path: Union[str, Path]):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InvalidSpec(f"File not found: {path}")
    except json.JSONDecodeError as e:
        raise InvalidSpec(f"{path} is not valid JSON: {e}")


def parse_effect_specs(payload) -> EffectSpecFile:
    """Accepts {"effects": [...], "groups": [...]} or a bare list of effects"""
    if isinstance(payload, list):
        payload = {"effects": payload}
    try:
        return EffectSpecFile.model_validate(payload)
    except (ValidationError, ValueError) as e:
        raise InvalidSpec(f"Invalid effect spec: {e}")


def parse_points(payload) -> PointsFile:
    """Accepts {"points": [...]}, a list of {label, values} or a list of bare vectors"""
    if isinstance(payload, list):
        if payload and not isinstance(payload[0], dict):
            payload = [{"label": f"x{i}", "values": v} for i, v in enumerate(payload, start=1)]
        payload = {"points": payload}
    try:
        return PointsFile.model_validate(payload)
    except (ValidationError, ValueError) as e:
        raise InvalidSpec(f"Invalid points: {e}")


def load_effect_specs(path: Union[str, Path]) -> EffectSpecFile:
    return parse_effect_specs(_read_json(path))


def load_points(path: Union[str, Path]) -> PointsFile:
    return parse_points(_read_json(path))
