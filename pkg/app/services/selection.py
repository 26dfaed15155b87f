"""
Group-constrained variable selection

Each group of the structure enters or leaves a model as a unit. With a
singleton structure both searches reduce to their traditional forms.
"""
import itertools
from typing import List, Optional, Sequence, Tuple

from loguru import logger

from app.exceptions import ArgumentError, SingularDesign, TooManyGroups
from app.models import (
    CandidateModel,
    Dataset,
    EliminationStep,
    GroupStructure,
    SelectionMethod,
    SelectionReport,
)
from app.services import ols
from app.services.metrics import track_candidate

MAX_GROUPS = 20


def _columns_of(structure: GroupStructure, groups: Sequence[int]) -> Tuple[str, ...]:
    indices = sorted(i for g in groups for i in structure.members(g))
    return tuple(structure.predictor_names[i] for i in indices)


def respects_groups(columns: Sequence[str], structure: GroupStructure) -> bool:
    """True when every group of `structure` is wholly in or wholly out of `columns`"""
    present = set(columns)
    for gid in range(structure.n_groups):
        inside = [name in present for name in structure.member_names(gid)]
        if any(inside) and not all(inside):
            return False
    return True


def enumerate_candidates(structure: GroupStructure, max_groups: int = MAX_GROUPS) -> List[CandidateModel]:
    """
    All 2^G - 1 non-empty unions of groups, by size then group ids

    Raises:
        TooManyGroups: G exceeds max_groups
    """
    g = structure.n_groups
    if g < 1:
        raise ArgumentError("structure has no groups")
    if g > max_groups:
        raise TooManyGroups(g, max_groups)
    candidates = []
    for size in range(1, g + 1):
        for included in itertools.combinations(range(g), size):
            candidates.append(
                CandidateModel(
                    included_groups=included,
                    columns=_columns_of(structure, included),
                    adj_r2=float("nan"),
                )
            )
    return candidates


def _rank_key(c: CandidateModel):
    return (-c.adj_r2, c.size, c.columns)


def all_subsets(
    d: Dataset,
    structure: GroupStructure,
    reference: Optional[GroupStructure] = None,
    max_groups: int = MAX_GROUPS,
) -> SelectionReport:
    """
    Fit every candidate with an intercept and rank by adjusted R²

    Ties go to fewer columns, then to the lexicographically smaller column
    list. Candidates with a singular design are skipped and listed in the
    report. When `reference` is given each candidate is flagged with whether
    it respects that grouping.
    """
    ranked, skipped = [], []
    for candidate in enumerate_candidates(structure, max_groups):
        try:
            result = ols.fit(d, candidate.columns)
        except SingularDesign as e:
            logger.warning(f"Skipping candidate {list(candidate.columns)}: {e}")
            track_candidate(skipped=True)
            skipped.append(candidate.columns)
            continue
        track_candidate()
        ranked.append(
            candidate.model_copy(
                update={
                    "adj_r2": result.adj_r2,
                    "r2": result.r2,
                    "group_based": None if reference is None else respects_groups(candidate.columns, reference),
                }
            )
        )
    if not ranked:
        raise SingularDesign(d.predictor_names, reason="every candidate model is singular")
    ranked.sort(key=_rank_key)
    chosen = ranked[0]
    logger.info(
        f"All-subsets over {structure.n_groups} groups: {len(ranked)} fitted, {len(skipped)} skipped, "
        f"best {list(chosen.columns)} (adj R² {chosen.adj_r2:.8f})"
    )
    return SelectionReport(
        method=SelectionMethod.ALL_SUBSETS,
        grouped=any(len(g) > 1 for g in structure.groups),
        ranked=tuple(ranked),
        chosen=chosen,
        skipped=tuple(skipped),
    )


def backward(d: Dataset, structure: GroupStructure, p_rej: float = 0.1) -> SelectionReport:
    """
    Backward elimination one group at a time

    Each round tests dropping every remaining group with a partial F test and
    removes the group with the largest p-value while it exceeds p_rej. The
    last remaining group is never removed.
    """
    if not 0 < p_rej < 1:
        raise ArgumentError(f"p_rej must lie in (0, 1), got {p_rej}")
    remaining = list(range(structure.n_groups))
    full = ols.fit(d, _columns_of(structure, remaining))
    trace = []
    while len(remaining) > 1:
        tests = []
        for gid in remaining:
            reduced = ols.fit(d, _columns_of(structure, [g for g in remaining if g != gid]))
            tests.append((gid, ols.partial_f_test(full, reduced), reduced))
        # First maximum in group order keeps the result deterministic
        gid, test, reduced = max(tests, key=lambda item: item[1].p)
        logger.debug(f"Backward step: weakest group {structure.label(gid)} p = {test.p:.5g}")
        if not test.p > p_rej:
            break
        remaining.remove(gid)
        trace.append(
            EliminationStep(
                group=gid,
                columns=structure.member_names(gid),
                f=test.f,
                p=test.p,
                remaining=reduced.column_ids,
            )
        )
        full = reduced

    chosen = CandidateModel(
        included_groups=tuple(remaining),
        columns=full.column_ids,
        adj_r2=full.adj_r2,
        r2=full.r2,
    )
    logger.info(f"Backward elimination (p_rej={p_rej}) kept {list(chosen.columns)} after {len(trace)} drops")
    return SelectionReport(
        method=SelectionMethod.BACKWARD,
        grouped=any(len(g) > 1 for g in structure.groups),
        ranked=(chosen,),
        chosen=chosen,
        trace=tuple(trace),
        p_reject=p_rej,
    )
