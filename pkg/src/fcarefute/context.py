"""Formal contexts and the derivation operators.

Object and attribute sets are plain ``int`` bitmasks: bit ``i`` set means
index ``i`` is a member. Labels are only used at the edges (construction,
rendering, serialization).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class ContractError(ValueError):
    """Raised when an operation is called outside its precondition."""


def bits(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members(mask: int) -> Iterator[int]:
    """Yield the indices set in ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FormalContext:
    """A finite formal context (O, P, I).

    ``rows[o]`` is the attribute bitmask of object ``o``. Instances are
    immutable; column masks are precomputed.
    """

    object_labels: tuple[str, ...]
    attribute_labels: tuple[str, ...]
    rows: tuple[int, ...]
    columns: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "object_labels", tuple(self.object_labels))
        object.__setattr__(self, "attribute_labels", tuple(self.attribute_labels))
        object.__setattr__(self, "rows", tuple(self.rows))
        n, m = len(self.object_labels), len(self.attribute_labels)
        if n < 1 or m < 1:
            raise ContractError(f"context needs at least one object and one attribute, got {n}x{m}")
        if len(set(self.object_labels)) != n:
            raise ContractError("duplicate object labels")
        if len(set(self.attribute_labels)) != m:
            raise ContractError("duplicate attribute labels")
        if len(self.rows) != n:
            raise ContractError(f"{len(self.rows)} incidence rows for {n} objects")
        for row in self.rows:
            if row < 0 or row >> m:
                raise ContractError(f"incidence row {row:#x} exceeds {m} attributes")
        cols = [0] * m
        for o, row in enumerate(self.rows):
            for a in members(row):
                cols[a] |= 1 << o
        object.__setattr__(self, "columns", tuple(cols))

    # -- construction -------------------------------------------------

    @classmethod
    def from_matrix(
        cls,
        object_labels: Sequence[str],
        attribute_labels: Sequence[str],
        matrix: Sequence[Sequence[bool]],
    ) -> FormalContext:
        rows = []
        for r in matrix:
            if len(r) != len(attribute_labels):
                raise ContractError(f"matrix row of width {len(r)}, expected {len(attribute_labels)}")
            rows.append(bits(i for i, x in enumerate(r) if x))
        return cls(tuple(object_labels), tuple(attribute_labels), tuple(rows))

    @classmethod
    def from_table(
        cls, attribute_labels: Sequence[str], table: Mapping[str, Iterable[str]]
    ) -> FormalContext:
        """Build from ``{object label: attribute labels it has}`` (insertion order kept)."""
        index = {a: i for i, a in enumerate(attribute_labels)}
        try:
            rows = [bits(index[a] for a in attrs) for attrs in table.values()]
        except KeyError as exc:
            raise ContractError(f"unknown attribute {exc.args[0]!r}") from None
        return cls(tuple(table), tuple(attribute_labels), tuple(rows))

    # -- shape ----------------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.object_labels)

    @property
    def n_attributes(self) -> int:
        return len(self.attribute_labels)

    @property
    def all_objects(self) -> int:
        return (1 << self.n_objects) - 1

    @property
    def all_attributes(self) -> int:
        return (1 << self.n_attributes) - 1

    @property
    def incidence(self) -> tuple[tuple[bool, ...], ...]:
        m = self.n_attributes
        return tuple(tuple(bool(row >> a & 1) for a in range(m)) for row in self.rows)

    # -- labels ---------------------------------------------------------

    def attribute_index(self, label: str) -> int:
        try:
            return self.attribute_labels.index(label)
        except ValueError:
            raise ContractError(f"unknown attribute {label!r}") from None

    def object_index(self, label: str) -> int:
        try:
            return self.object_labels.index(label)
        except ValueError:
            raise ContractError(f"unknown object {label!r}") from None

    def attrs(self, *labels: str) -> int:
        return bits(self.attribute_index(a) for a in labels)

    def objs(self, *labels: str) -> int:
        return bits(self.object_index(o) for o in labels)

    def attribute_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.attribute_labels[i] for i in members(mask))

    def object_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.object_labels[i] for i in members(mask))

    # -- derived contexts -------------------------------------------------

    def subcontext(self, objects: int, attributes: int) -> FormalContext:
        """Restrict to the given object and attribute masks, keeping index order."""
        self._check_objects(objects)
        self._check_attributes(attributes)
        keep_o = list(members(objects))
        keep_a = list(members(attributes))
        rows = tuple(
            bits(j for j, a in enumerate(keep_a) if self.rows[o] >> a & 1) for o in keep_o
        )
        return FormalContext(
            tuple(self.object_labels[o] for o in keep_o),
            tuple(self.attribute_labels[a] for a in keep_a),
            rows,
        )

    def _check_objects(self, mask: int) -> None:
        if mask < 0 or mask >> self.n_objects:
            raise ContractError(f"object set {mask:#x} outside universe of {self.n_objects}")

    def _check_attributes(self, mask: int) -> None:
        if mask < 0 or mask >> self.n_attributes:
            raise ContractError(f"attribute set {mask:#x} outside universe of {self.n_attributes}")


@dataclass(frozen=True, order=True)
class FormalConcept:
    extent: int
    intent: int


def derive_up(ctx: FormalContext, objects: int) -> int:
    """Attributes shared by every object in ``objects``."""
    ctx._check_objects(objects)
    result = ctx.all_attributes
    for o in members(objects):
        result &= ctx.rows[o]
    return result


def derive_down(ctx: FormalContext, attributes: int) -> int:
    """Objects having every attribute in ``attributes``."""
    ctx._check_attributes(attributes)
    result = ctx.all_objects
    for a in members(attributes):
        result &= ctx.columns[a]
    return result


def close_intent(ctx: FormalContext, attributes: int) -> FormalConcept:
    extent = derive_down(ctx, attributes)
    return FormalConcept(extent, derive_up(ctx, extent))


def close_extent(ctx: FormalContext, objects: int) -> FormalConcept:
    intent = derive_up(ctx, objects)
    return FormalConcept(derive_down(ctx, intent), intent)


def is_concept(ctx: FormalContext, extent: int, intent: int) -> bool:
    return derive_up(ctx, extent) == intent and derive_down(ctx, intent) == extent


def attribute_concept(ctx: FormalContext, a: int) -> FormalConcept:
    if not 0 <= a < ctx.n_attributes:
        raise ContractError(f"attribute index {a} outside universe")
    return close_intent(ctx, 1 << a)


def full_rows(ctx: FormalContext) -> int:
    return bits(o for o, row in enumerate(ctx.rows) if row == ctx.all_attributes)


def full_cols(ctx: FormalContext) -> int:
    return bits(a for a, col in enumerate(ctx.columns) if col == ctx.all_objects)


def render_set(names: Iterable[str]) -> str:
    return "{" + ",".join(names) + "}"


def render_pair(ctx: FormalContext, extent: int, intent: int) -> str:
    return (
        f"<{render_set(ctx.object_names(extent))},"
        f"{render_set(ctx.attribute_names(intent))}>"
    )
