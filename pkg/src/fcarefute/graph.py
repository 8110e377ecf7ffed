"""Pre-weighted relevant graph over the attributes of a context.

Vertex ``a`` carries the pre-weight ``a↓``. An arc ``(y, x)`` exists when
``x↓ ⊊ y↓`` and is drawn ``y -> x`` (larger extent to smaller). A bi-arc
joins two distinct attributes with equal extents.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .context import ContractError, FormalContext, members, render_set


@dataclass(frozen=True)
class PreWeightedGraph:
    context: FormalContext
    pre_weights: tuple[int, ...]
    alive: int

    def weight(self, a: int) -> int:
        return self.pre_weights[a]

    def vertices(self) -> list[int]:
        return list(members(self.alive))

    @property
    def arcs(self) -> frozenset[tuple[int, int]]:
        w = self.pre_weights
        alive = self.vertices()
        return frozenset(
            (y, x)
            for y in alive
            for x in alive
            if w[x] != w[y] and w[x] & w[y] == w[x]
        )

    @property
    def bi_arcs(self) -> frozenset[frozenset[int]]:
        w = self.pre_weights
        alive = self.vertices()
        return frozenset(
            frozenset((x, y)) for x in alive for y in alive if x < y and w[x] == w[y]
        )

    def _require_alive(self, a: int) -> None:
        if not self.alive >> a & 1:
            raise ContractError(f"vertex {a} is not alive")


def build_graph(ctx: FormalContext) -> PreWeightedGraph:
    return PreWeightedGraph(ctx, ctx.columns, ctx.all_attributes)


def lower_cone(g: PreWeightedGraph, a: int, within: int | None = None) -> int:
    """Attributes x != a with ``ω(x) ⊆ ω(a)``, drawn from ``within`` (default: alive)."""
    g._require_alive(a)
    pool = g.alive if within is None else within
    wa = g.pre_weights[a]
    mask = 0
    for x in members(pool & ~(1 << a)):
        if g.pre_weights[x] & ~wa == 0:
            mask |= 1 << x
    return mask


def upper_cone(g: PreWeightedGraph, a: int, within: int | None = None) -> int:
    """Attributes x != a with ``ω(a) ⊆ ω(x)``, drawn from ``within`` (default: alive)."""
    g._require_alive(a)
    pool = g.alive if within is None else within
    wa = g.pre_weights[a]
    mask = 0
    for x in members(pool & ~(1 << a)):
        if wa & ~g.pre_weights[x] == 0:
            mask |= 1 << x
    return mask


def _strictly_below(w: tuple[int, ...], x: int, y: int) -> bool:
    return w[x] != w[y] and w[x] & ~w[y] == 0


def maximal_attrs(g: PreWeightedGraph) -> int:
    w = g.pre_weights
    alive = g.vertices()
    mask = 0
    for a in alive:
        if not any(_strictly_below(w, a, b) for b in alive):
            mask |= 1 << a
    return mask


def minimal_attrs(g: PreWeightedGraph) -> int:
    w = g.pre_weights
    alive = g.vertices()
    mask = 0
    for a in alive:
        if not any(_strictly_below(w, b, a) for b in alive):
            mask |= 1 << a
    return mask


def remove_vertices(g: PreWeightedGraph, removed: int) -> PreWeightedGraph:
    if removed & ~g.alive:
        raise ContractError("can only remove alive vertices")
    return replace(g, alive=g.alive & ~removed)


def to_dot(g: PreWeightedGraph) -> str:
    ctx = g.context
    lines = ["digraph G {"]
    for a in g.vertices():
        weight = render_set(ctx.object_names(g.pre_weights[a]))
        lines.append(f'  a{a} [label="{ctx.attribute_labels[a]}", xlabel="{weight}"];')
    for y, x in sorted(g.arcs):
        lines.append(f"  a{y} -> a{x};")
    for pair in sorted(tuple(sorted(p)) for p in g.bi_arcs):
        lines.append(f"  a{pair[0]} -> a{pair[1]} [dir=both];")
    lines.append("}")
    return "\n".join(lines) + "\n"
