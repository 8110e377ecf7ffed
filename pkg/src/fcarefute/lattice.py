"""Concept enumeration and the pivot partition of the non-trivial concepts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .context import (
    ContractError,
    FormalConcept,
    FormalContext,
    attribute_concept,
    close_extent,
    close_intent,
    derive_up,
)
from .graph import build_graph, lower_cone

ConceptSet = tuple[FormalConcept, ...]

MAX_BRUTEFORCE_ATTRIBUTES = 20


def extent_key(n_objects: int):
    # lexicographic over the bit vector, object 0 first
    def key(c: FormalConcept) -> tuple[int, ...]:
        return tuple(c.extent >> o & 1 for o in range(n_objects))

    return key


def canonical(ctx: FormalContext, concepts: Iterable[FormalConcept]) -> ConceptSet:
    unique = {c.extent: c for c in concepts}
    return tuple(sorted(unique.values(), key=extent_key(ctx.n_objects)))


def _guard(ctx: FormalContext) -> None:
    if ctx.n_attributes > MAX_BRUTEFORCE_ATTRIBUTES:
        raise ContractError(
            f"refusing 2^{ctx.n_attributes} subsets; limit is {MAX_BRUTEFORCE_ATTRIBUTES} attributes"
        )


def enumerate_bruteforce(ctx: FormalContext) -> ConceptSet:
    """Close every attribute subset and keep one concept per extent."""
    _guard(ctx)
    return canonical(ctx, (close_intent(ctx, b) for b in range(1 << ctx.n_attributes)))


def enumerate_lectic(ctx: FormalContext) -> ConceptSet:
    """Next Closure over attribute intents in lectic order."""
    m = ctx.n_attributes
    full = ctx.all_attributes

    def closure(b: int) -> int:
        return close_intent(ctx, b).intent

    intent = closure(0)
    found = [intent]
    while intent != full:
        for i in range(m - 1, -1, -1):
            bit = 1 << i
            if intent & bit:
                continue
            prefix = bit - 1
            candidate = closure((intent & prefix) | bit)
            if candidate & prefix == intent & prefix:
                intent = candidate
                break
        else:  # pragma: no cover - Next Closure always advances before reaching the full set
            raise AssertionError("lectic enumeration stalled")
        found.append(intent)
    return canonical(ctx, (close_intent(ctx, b) for b in found))


def concept_leq(c1: FormalConcept, c2: FormalConcept) -> bool:
    return c1.extent & ~c2.extent == 0


def top_concept(ctx: FormalContext) -> FormalConcept:
    return close_extent(ctx, ctx.all_objects)


def bottom_concept(ctx: FormalContext) -> FormalConcept:
    return close_intent(ctx, ctx.all_attributes)


def core_set_A(ctx: FormalContext, concepts: ConceptSet | None = None) -> ConceptSet:
    """All concepts except top, bottom and the attribute concepts."""
    if concepts is None:
        concepts = enumerate_lectic(ctx)
    excluded = {top_concept(ctx).extent, bottom_concept(ctx).extent}
    excluded.update(attribute_concept(ctx, a).extent for a in range(ctx.n_attributes))
    return tuple(c for c in concepts if c.extent not in excluded)


@dataclass(frozen=True)
class FSTPartition:
    pivot: int
    F: ConceptSet
    S: ConceptSet
    T: ConceptSet

    def all(self) -> ConceptSet:
        return self.F + self.S + self.T


def partition_fst(
    ctx: FormalContext, c1: int, concepts: ConceptSet | None = None
) -> FSTPartition:
    """Split the core set by how each intent meets the pivot and its lower cone.

    F: pivot in the intent, nothing from the cone. S: pivot and at least one
    cone attribute. T: pivot absent.
    """
    if not 0 <= c1 < ctx.n_attributes:
        raise ContractError(f"pivot index {c1} outside universe")
    cone = lower_cone(build_graph(ctx), c1)
    F, S, T = [], [], []
    for c in core_set_A(ctx, concepts):
        if not c.intent >> c1 & 1:
            T.append(c)
        elif c.intent & cone:
            S.append(c)
        else:
            F.append(c)
    return FSTPartition(c1, tuple(F), tuple(S), tuple(T))


def extent_set(concepts: Iterable[FormalConcept]) -> frozenset[int]:
    return frozenset(c.extent for c in concepts)


def extents_from_preweight_intersections(ctx: FormalContext) -> frozenset[int]:
    """Intersections of pre-weights over every non-empty attribute set, plus O.

    These coincide with the extents of the lattice, which is why precomputing
    them amounts to enumerating every concept.
    """
    _guard(ctx)
    m = ctx.n_attributes
    table = [ctx.all_objects] * (1 << m)
    for b in range(1, 1 << m):
        low = b & -b
        table[b] = table[b ^ low] & ctx.columns[low.bit_length() - 1]
    return frozenset(table)


def is_intersection_closed(extents: Iterable[int]) -> bool:
    pool = set(extents)
    return all(x & y in pool for x in pool for y in pool)


def concept_from_extent(ctx: FormalContext, extent: int) -> FormalConcept:
    return FormalConcept(extent, derive_up(ctx, extent))
