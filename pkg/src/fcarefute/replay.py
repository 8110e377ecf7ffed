"""Step-by-step replays of the documented fragments of Mao's enumeration algorithms.

Only the steps that are actually spelled out are executed. When an input
drives a run past what is documented, the replay stops with
``Termination.UNSPECIFIED_STEP`` instead of guessing a continuation.
Emitted pairs are raw algorithm output and are deliberately not validated.

Selections ("select h1 in H1") always take the lowest attribute index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .context import ContractError, FormalContext, members, popcount, render_pair, render_set
from .graph import PreWeightedGraph, lower_cone, maximal_attrs, remove_vertices, upper_cone


class Termination(str, enum.Enum):
    NORMAL = "NORMAL"
    UNSPECIFIED_STEP = "UNSPECIFIED_STEP"


class Mode(str, enum.Enum):
    """How the vertex removal before the recursive calls of algorithm 3 is read."""

    DROP_ATTRIBUTE = "DROP_ATTRIBUTE"  # removed vertices leave P as well
    KEEP_ATTRIBUTE = "KEEP_ATTRIBUTE"  # removed vertices stay in P


@dataclass(frozen=True)
class TraceEvent:
    step: str
    sets: tuple[tuple[str, tuple[str, ...]], ...] = ()
    selection: str | None = None
    emitted: tuple[str, ...] = ()
    branch: str | None = None
    termination: Termination | None = None
    note: str | None = None

    def to_line(self) -> str:
        parts = [f"[{self.step}]"]
        parts += [f"{name}={render_set(value)}" for name, value in self.sets]
        if self.selection:
            parts.append(f"select {self.selection}")
        parts += [f"emit {pair}" for pair in self.emitted]
        if self.branch:
            parts.append(f"branch: {self.branch}")
        if self.note:
            parts.append(f"note: {self.note}")
        if self.termination:
            parts.append(f"stop: {self.termination.value}")
        return " ".join(parts)

    def to_json(self) -> dict[str, Any]:
        return {
            "step": self.step,
            "sets": {name: list(value) for name, value in self.sets},
            "selection": self.selection,
            "emitted": list(self.emitted),
            "branch": self.branch,
            "termination": self.termination.value if self.termination else None,
            "note": self.note,
        }


@dataclass(frozen=True)
class TraceLog:
    events: tuple[TraceEvent, ...]

    def value(self, name: str) -> tuple[str, ...]:
        """Labels of the first recorded set called ``name``."""
        for event in self.events:
            for key, labels in event.sets:
                if key == name:
                    return labels
        raise KeyError(name)

    def values(self, name: str) -> list[tuple[str, ...]]:
        return [labels for e in self.events for key, labels in e.sets if key == name]

    def to_text(self) -> str:
        return "".join(e.to_line() + "\n" for e in self.events)

    def to_json(self) -> list[dict[str, Any]]:
        return [e.to_json() for e in self.events]


@dataclass(frozen=True)
class ReplayOutcome:
    emitted: tuple[tuple[int, int], ...]
    termination: Termination
    trace: TraceLog
    # attributes whose pre-weights were intersected to form each emitted extent
    sources: tuple[int, ...] = ()

    def to_json(self, ctx: FormalContext) -> dict[str, Any]:
        return {
            "emitted": [
                {"extent": list(ctx.object_names(x)), "intent": list(ctx.attribute_names(b))}
                for x, b in self.emitted
            ],
            "termination": self.termination.value,
            "trace": self.trace.to_json(),
        }


@dataclass
class _Recorder:
    ctx: FormalContext
    events: list[TraceEvent] = field(default_factory=list)
    emitted: list[tuple[int, int]] = field(default_factory=list)
    sources: list[int] = field(default_factory=list)

    def attrs(self, mask: int) -> tuple[str, ...]:
        return self.ctx.attribute_names(mask)

    def objs(self, mask: int) -> tuple[str, ...]:
        return self.ctx.object_names(mask)

    def name(self, a: int) -> str:
        return self.ctx.attribute_labels[a]

    def log(self, step: str, *, emit: tuple[int, int, int] | None = None, **kw: Any) -> None:
        rendered = ()
        if emit is not None:
            extent, intent, src = emit
            self.emitted.append((extent, intent))
            self.sources.append(src)
            rendered = (render_pair(self.ctx, extent, intent),)
        kw["sets"] = tuple(kw.get("sets", ()))
        self.events.append(TraceEvent(step, emitted=rendered, **kw))

    def outcome(self, termination: Termination) -> ReplayOutcome:
        return ReplayOutcome(
            tuple(self.emitted), termination, TraceLog(tuple(self.events)), tuple(self.sources)
        )


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _strict_subset(x: int, y: int) -> bool:
    return x != y and x & ~y == 0


def _readmit(g: PreWeightedGraph, extent: int, readmit: int) -> int:
    """Removed-but-kept attributes whose pre-weight contains ``extent``."""
    w = g.pre_weights
    return sum(1 << x for x in members(readmit) if extent & ~w[x] == 0)


def _require_maximal(g: PreWeightedGraph, c1: int) -> None:
    if not 0 <= c1 < len(g.pre_weights) or not maximal_attrs(g) >> c1 & 1:
        raise ContractError(f"pivot {c1} is not a maximal alive attribute")


def _alg1(g: PreWeightedGraph, c1: int, rec: _Recorder, prefix: str, readmit: int) -> Termination:
    w = g.pre_weights
    cone = lower_cone(g, c1)
    H = 0
    for x in members(g.alive & ~(1 << c1) & ~cone):
        if w[c1] & w[x]:
            H |= 1 << x
    step1 = f"{prefix}step 1"
    rec.log(step1, sets=[("C", rec.attrs(maximal_attrs(g))), ("N+", rec.attrs(cone)), ("H1", rec.attrs(H))])
    if not H:
        rec.log(step1, branch="H1 is empty", termination=Termination.NORMAL)
        return Termination.NORMAL

    h1 = _lowest(H)
    A = w[c1] & w[h1]
    B = 1 << c1 | 1 << h1
    blockers = [h for h in members(H & ~B) if _strict_subset(A, w[h])]
    sets = [("A1", rec.objs(A)), ("B1", rec.attrs(B))]
    if blockers:
        rec.log(
            step1,
            selection=f"h1={rec.name(h1)} (lowest index)",
            sets=sets,
            branch=f"not output: A1 is strictly inside the pre-weight of {rec.name(blockers[0])}",
        )
    else:
        extra = _readmit(g, A, readmit)
        if extra:
            sets.append(("readmitted", rec.attrs(extra)))
        rec.log(
            step1,
            selection=f"h1={rec.name(h1)} (lowest index)",
            sets=sets,
            branch="no h in H1\\B1 has A1 strictly inside its pre-weight",
            emit=(A, B | extra, 1 << c1 | 1 << h1),
        )

    step2 = f"{prefix}step 2"
    if popcount(H) == 1:
        rec.log(step2, branch="|H1| = 1", termination=Termination.NORMAL)
        return Termination.NORMAL
    rec.log(
        step2,
        branch="|H1| > 1",
        note="continuation for |H1| > 1 is undocumented",
        termination=Termination.UNSPECIFIED_STEP,
    )
    return Termination.UNSPECIFIED_STEP


def _alg2(g: PreWeightedGraph, c1: int, rec: _Recorder, prefix: str, readmit: int) -> Termination:
    w = g.pre_weights
    cone = lower_cone(g, c1)
    if not cone:
        raise ContractError(f"algorithm 2 needs a non-empty lower cone below {rec.name(c1)}")

    b1 = _lowest(cone)
    H = 0
    for x in members(g.alive & ~(1 << c1 | 1 << b1) & ~cone):
        if w[b1] & w[x]:
            H |= 1 << x
    step6 = f"{prefix}step 6"
    rec.log(
        step6,
        sets=[("C", rec.attrs(maximal_attrs(g))), ("N+", rec.attrs(cone)), ("H_b1", rec.attrs(H))],
        selection=f"b1={rec.name(b1)} (lowest index)",
        note="H_b1 reconstructed as the step-1 formula pivoted on b1 with c1 excluded",
    )

    step7 = f"{prefix}step 7"
    if not H:
        rec.log(step7, branch="H_b1 is empty", termination=Termination.NORMAL)
        return Termination.NORMAL
    d1 = _lowest(H)
    A = w[b1] & w[d1]
    pool = g.alive | readmit
    B = 1 << b1 | 1 << d1 | upper_cone(g, b1, pool) | upper_cone(g, d1, pool)
    sets = [("A_b1", rec.objs(A)), ("B_b1", rec.attrs(B))]
    selection = f"d1={rec.name(d1)} (lowest index)"
    if any(_strict_subset(A, w[h]) for h in members(H & ~B)):
        rec.log(
            step7,
            sets=sets,
            selection=selection,
            branch="Case 1",
            note="Case 1 is undocumented",
            termination=Termination.UNSPECIFIED_STEP,
        )
        return Termination.UNSPECIFIED_STEP
    if lower_cone(g, b1):
        rec.log(
            step7,
            sets=sets + [("N+(b1)", rec.attrs(lower_cone(g, b1)))],
            selection=selection,
            branch="Case 2",
            note="Case 2 with non-empty N+(b1) is undocumented",
            termination=Termination.UNSPECIFIED_STEP,
        )
        return Termination.UNSPECIFIED_STEP
    extra = _readmit(g, A, readmit) & ~B
    if extra:
        sets.append(("readmitted", rec.attrs(extra)))
    rec.log(
        step7,
        sets=sets,
        selection=selection,
        branch="Case 2, N+(b1) is empty",
        emit=(A, B | extra, 1 << b1 | 1 << d1),
    )

    A_all = w[b1]
    for d in members(H):
        A_all &= w[d]
    step8 = f"{prefix}step 8"
    if not A_all:
        rec.log(step8, sets=[("A_1d1", ())], branch="A_1d1 is empty", termination=Termination.NORMAL)
        return Termination.NORMAL
    rec.log(
        step8,
        sets=[("A_1d1", rec.objs(A_all))],
        branch="A_1d1 is non-empty",
        note="continuation for non-empty A_1d1 is undocumented",
        termination=Termination.UNSPECIFIED_STEP,
    )
    return Termination.UNSPECIFIED_STEP


def replay_alg1(g: PreWeightedGraph, c1: int) -> ReplayOutcome:
    _require_maximal(g, c1)
    rec = _Recorder(g.context)
    return rec.outcome(_alg1(g, c1, rec, "", 0))


def replay_alg2(g: PreWeightedGraph, c1: int) -> ReplayOutcome:
    _require_maximal(g, c1)
    rec = _Recorder(g.context)
    return rec.outcome(_alg2(g, c1, rec, "", 0))


def replay_alg3(g: PreWeightedGraph, c1: int, mode: Mode) -> ReplayOutcome:
    mode = Mode(mode)
    _require_maximal(g, c1)
    rec = _Recorder(g.context)
    removed = 1 << c1 | lower_cone(g, c1)
    g2 = remove_vertices(g, removed)
    C = maximal_attrs(g2)
    rec.log(
        "step 15",
        sets=[("removed", rec.attrs(removed)), ("alive", rec.attrs(g2.alive)), ("C", rec.attrs(C))],
        note=f"mode {mode.value}",
    )
    if not C:
        rec.log("step 15", branch="no vertex left", termination=Termination.NORMAL)
        return rec.outcome(Termination.NORMAL)

    c2 = _lowest(C)
    readmit = removed if mode is Mode.KEEP_ATTRIBUTE else 0
    rec.log("step 16", selection=f"c={rec.name(c2)} (lowest index in C)")
    results = [_alg1(g2, c2, rec, "step 16/alg1 ", readmit)]
    if lower_cone(g2, c2):
        results.append(_alg2(g2, c2, rec, "step 16/alg2 ", readmit))
    else:
        rec.log("step 16/alg2", branch="skipped: N+ is empty in the updated graph")

    if Termination.UNSPECIFIED_STEP in results:
        rec.log("step 16", branch="a sub-run left the documented steps", termination=Termination.UNSPECIFIED_STEP)
        return rec.outcome(Termination.UNSPECIFIED_STEP)
    if popcount(C) > 1:
        rec.log(
            "step 16",
            branch="C has further pivots",
            note="iteration over the remaining maximal attributes is undocumented",
            termination=Termination.UNSPECIFIED_STEP,
        )
        return rec.outcome(Termination.UNSPECIFIED_STEP)
    rec.log("step 16", branch="C is exhausted", termination=Termination.NORMAL)
    return rec.outcome(Termination.NORMAL)
