from typing import Optional, Tuple

from . import FrozenModel, SelectionMethod


class CandidateModel(FrozenModel):
    """A model built from whole groups; columns are kept in predictor order"""

    included_groups: Tuple[int, ...]
    columns: Tuple[str, ...]
    adj_r2: float
    r2: float = float("nan")
    # Whether the columns respect a reference grouping (set when one is given)
    group_based: Optional[bool] = None

    @property
    def size(self) -> int:
        return len(self.columns)


class EliminationStep(FrozenModel):
    """One backward elimination step: the group dropped and its partial F test"""

    group: int
    columns: Tuple[str, ...]
    f: float
    p: float
    remaining: Tuple[str, ...]


class SelectionReport(FrozenModel):
    """Outcome of one variable selection run; ranked is best first"""

    method: SelectionMethod
    grouped: bool
    ranked: Tuple[CandidateModel, ...]
    chosen: CandidateModel
    trace: Tuple[EliminationStep, ...] = ()
    skipped: Tuple[Tuple[str, ...], ...] = ()
    p_reject: Optional[float] = None
