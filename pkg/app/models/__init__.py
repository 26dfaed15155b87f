from pydantic import BaseModel, ConfigDict
import enum


class FrozenModel(BaseModel):
    """Base for all immutable domain values; numpy arrays are allowed as fields"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class SelectionMethod(enum.Enum):
    ALL_SUBSETS = "all-subsets"
    BACKWARD = "backward"


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class SimulationPreset(enum.Enum):
    TABLE1 = "table1"
    TABLE2 = "table2"
    PREDICT_COMPARE = "predict-compare"
    SELECTION_STABILITY = "selection-stability"


# Import models to make them available from the package
# These imports must be at the end to avoid circular dependencies
from .dataset import Dataset, ScalingInfo  # noqa: E402,F401
from .fit import CoefficientTest, FitResult, PartialFTest  # noqa: E402,F401
from .groups import EffectEstimate, GroupEffectSpec, GroupStructure  # noqa: E402,F401
from .selection import CandidateModel, EliminationStep, SelectionReport  # noqa: E402,F401
from .prediction import PredictionReport  # noqa: E402,F401
from .simulation import (  # noqa: E402,F401
    McEffectRow,
    PredictorComparisonRow,
    RidgeResult,
    SelectionStabilityReport,
    SimConfig,
)
from .report import ReportDocument, ReportSection  # noqa: E402,F401
