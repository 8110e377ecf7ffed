"""Three-phase attribute reduction and Pawlak attribute classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from .context import (
    ContractError,
    FormalContext,
    bits,
    full_cols,
    full_rows,
)
from .graph import build_graph, minimal_attrs


class DegenerateContextError(ContractError):
    """A phase would leave no objects or no attributes."""


class NotClarifiedError(ContractError):
    pass


class PawlakClass(str, enum.Enum):
    ABSOLUTELY_NECESSARY = "ABSOLUTELY_NECESSARY"
    RELATIVELY_NECESSARY = "RELATIVELY_NECESSARY"
    ABSOLUTELY_UNNECESSARY = "ABSOLUTELY_UNNECESSARY"


def _restrict(ctx: FormalContext, objects: int, attributes: int, phase: str) -> FormalContext:
    if objects == 0 or attributes == 0:
        raise DegenerateContextError(f"{phase} leaves an empty set of objects or attributes")
    return ctx.subcontext(objects, attributes)


def phase1_remove_full(ctx: FormalContext) -> tuple[FormalContext, tuple[str, ...], tuple[str, ...]]:
    """Drop full rows and full columns, both computed on the input, in one pass."""
    rows, cols = full_rows(ctx), full_cols(ctx)
    out = _restrict(ctx, ctx.all_objects & ~rows, ctx.all_attributes & ~cols, "phase 1")
    # simultaneous removal cannot expose new full rows or columns
    assert full_rows(out) == 0 and full_cols(out) == 0
    return out, ctx.object_names(rows), ctx.attribute_names(cols)


def clarify(ctx: FormalContext, prefer: int | None = None) -> tuple[FormalContext, dict[str, str]]:
    """Keep one attribute per class of equal columns.

    The representative is the lowest index in its class, except that
    ``prefer`` (an attribute index) represents its own class when given.
    """
    reps: dict[int, int] = {}
    for a, col in enumerate(ctx.columns):
        reps.setdefault(col, a)
    if prefer is not None:
        reps[ctx.columns[prefer]] = prefer
    mapping = {
        ctx.attribute_labels[a]: ctx.attribute_labels[reps[col]]
        for a, col in enumerate(ctx.columns)
    }
    keep = bits(reps.values())
    return ctx.subcontext(ctx.all_objects, keep), mapping


def is_clarified(ctx: FormalContext) -> bool:
    return len(set(ctx.columns)) == ctx.n_attributes


def is_reducible(ctx: FormalContext, a: int) -> bool:
    """``a↓`` equals the intersection of every other column containing it."""
    if not 0 <= a < ctx.n_attributes:
        raise ContractError(f"attribute index {a} outside universe")
    col = ctx.columns[a]
    meet = ctx.all_objects
    for b, other in enumerate(ctx.columns):
        if b != a and col & ~other == 0:
            meet &= other
    return meet == col


def reduce(ctx: FormalContext) -> tuple[FormalContext, tuple[str, ...]]:
    if not is_clarified(ctx):
        raise NotClarifiedError("reduction needs a clarified context")
    reducible = bits(a for a in range(ctx.n_attributes) if is_reducible(ctx, a))
    out = _restrict(ctx, ctx.all_objects, ctx.all_attributes & ~reducible, "reduction")
    return out, ctx.attribute_names(reducible)


@dataclass(frozen=True)
class PipelineResult:
    stages: tuple[FormalContext, FormalContext, FormalContext, FormalContext]
    removed_full_rows: tuple[str, ...]
    removed_full_cols: tuple[str, ...]
    clarification_map: dict[str, str]
    reduced_away: tuple[str, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "stages": [
                {
                    "objects": list(s.object_labels),
                    "attributes": list(s.attribute_labels),
                    "shape": [s.n_objects, s.n_attributes],
                }
                for s in self.stages
            ],
            "phase1": {
                "removed_full_rows": list(self.removed_full_rows),
                "removed_full_cols": list(self.removed_full_cols),
            },
            "phase2": {
                "clarification_map": self.clarification_map,
                "removed": [k for k, v in self.clarification_map.items() if k != v],
            },
            "phase3": {"reduced_away": list(self.reduced_away)},
        }


def run_pipeline(ctx: FormalContext) -> PipelineResult:
    ctx1, rows, cols = phase1_remove_full(ctx)
    ctx2, mapping = clarify(ctx1)
    ctx3, reduced = reduce(ctx2)
    return PipelineResult((ctx, ctx1, ctx2, ctx3), rows, cols, mapping, reduced)


def classify_pawlak(ctx: FormalContext) -> dict[str, PawlakClass]:
    result = {}
    for a, label in enumerate(ctx.attribute_labels):
        if not is_reducible(ctx, a):
            result[label] = PawlakClass.ABSOLUTELY_NECESSARY
            continue
        clarified, _ = clarify(ctx, prefer=a)
        if not is_reducible(clarified, clarified.attribute_index(label)):
            result[label] = PawlakClass.RELATIVELY_NECESSARY
        else:
            result[label] = PawlakClass.ABSOLUTELY_UNNECESSARY
    return result


def full_row_via_minimal(ctx: FormalContext, o: int) -> bool:
    """Full-row test that only looks at the inclusion-minimal attributes."""
    if not 0 <= o < ctx.n_objects:
        raise ContractError(f"object index {o} outside universe")
    minimal = minimal_attrs(build_graph(ctx))
    return ctx.rows[o] & minimal == minimal
