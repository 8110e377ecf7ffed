"""Differential checks of the replays against the exact F/S/T oracle."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .context import ContractError, FormalContext, is_concept, members, render_pair
from .graph import build_graph, lower_cone, maximal_attrs
from .lattice import ConceptSet, FSTPartition, enumerate_lectic, partition_fst
from .replay import Mode, ReplayOutcome, Termination, replay_alg1, replay_alg2, replay_alg3


class Verdict(str, enum.Enum):
    SOUND = "SOUND"
    UNSOUND = "UNSOUND"
    INCOMPLETE = "INCOMPLETE"
    UNSPECIFIED_STEP = "UNSPECIFIED_STEP"


class OracleError(AssertionError):
    """The exact partition produced something that is not a concept."""


@dataclass(frozen=True)
class Witness:
    kind: str  # "emitted" or "missed"
    extent: int
    intent: int
    failed_check: str | None = None  # "not-a-concept" | "wrong-partition"


@dataclass(frozen=True)
class RefutationReport:
    context: FormalContext = field(repr=False)
    pivot: int
    algorithm: int
    mode: Mode | None
    verdict: Verdict
    witness: Witness | None
    outcome: ReplayOutcome = field(repr=False)

    @property
    def fingerprint(self) -> str:
        return fingerprint(self.context)

    def to_json(self) -> dict[str, Any]:
        ctx = self.context
        witness = None
        if self.witness is not None:
            witness = {
                "kind": self.witness.kind,
                "failed_check": self.witness.failed_check,
                "extent": list(ctx.object_names(self.witness.extent)),
                "intent": list(ctx.attribute_names(self.witness.intent)),
            }
        return {
            "fingerprint": self.fingerprint,
            "pivot": ctx.attribute_labels[self.pivot],
            "algorithm": self.algorithm,
            "mode": self.mode.value if self.mode else None,
            "verdict": self.verdict.value,
            "witness": witness,
            "termination": self.outcome.termination.value,
            "trace": self.outcome.trace.to_text().splitlines(),
        }

    def summary(self) -> str:
        ctx = self.context
        algo = f"alg{self.algorithm}" + (f"/{self.mode.value}" if self.mode else "")
        line = f"{self.fingerprint} pivot={ctx.attribute_labels[self.pivot]} {algo}: {self.verdict.value}"
        if self.witness is not None:
            w = self.witness
            pair = render_pair(ctx, w.extent, w.intent)
            line += f" {w.kind} {pair}"
            if w.failed_check:
                line += f" ({w.failed_check})"
        return line


def fingerprint(ctx: FormalContext) -> str:
    return f"{ctx.n_objects}x{ctx.n_attributes}:" + ",".join(f"{r:x}" for r in ctx.rows)


def _judge(
    ctx: FormalContext,
    pivot: int,
    algorithm: int,
    mode: Mode | None,
    outcome: ReplayOutcome,
    target: ConceptSet,
) -> RefutationReport:
    def report(verdict: Verdict, witness: Witness | None = None) -> RefutationReport:
        return RefutationReport(ctx, pivot, algorithm, mode, verdict, witness, outcome)

    wanted = {(c.extent, c.intent) for c in target}
    for extent, intent in outcome.emitted:
        if not is_concept(ctx, extent, intent):
            return report(Verdict.UNSOUND, Witness("emitted", extent, intent, "not-a-concept"))
        if (extent, intent) not in wanted:
            return report(Verdict.UNSOUND, Witness("emitted", extent, intent, "wrong-partition"))
    if outcome.termination is Termination.UNSPECIFIED_STEP:
        return report(Verdict.UNSPECIFIED_STEP)
    got = set(outcome.emitted)
    for c in target:
        if (c.extent, c.intent) not in got:
            return report(Verdict.INCOMPLETE, Witness("missed", c.extent, c.intent))
    return report(Verdict.SOUND)


def _require_maximal(ctx: FormalContext, c1: int) -> None:
    if not 0 <= c1 < ctx.n_attributes or not maximal_attrs(build_graph(ctx)) >> c1 & 1:
        raise ContractError(f"pivot {c1} is not a maximal attribute")


def _partition(ctx: FormalContext, c1: int, concepts: ConceptSet | None) -> FSTPartition:
    part = partition_fst(ctx, c1, concepts)
    for c in part.all():
        if not is_concept(ctx, c.extent, c.intent):
            raise OracleError(f"oracle produced a non-concept {render_pair(ctx, c.extent, c.intent)}")
    return part


def check_alg1(ctx: FormalContext, c1: int, concepts: ConceptSet | None = None) -> RefutationReport:
    _require_maximal(ctx, c1)
    outcome = replay_alg1(build_graph(ctx), c1)
    return _judge(ctx, c1, 1, None, outcome, _partition(ctx, c1, concepts).F)


def check_alg2(ctx: FormalContext, c1: int, concepts: ConceptSet | None = None) -> RefutationReport:
    _require_maximal(ctx, c1)
    g = build_graph(ctx)
    if not lower_cone(g, c1):
        raise ContractError("algorithm 2 needs a non-empty lower cone below the pivot")
    outcome = replay_alg2(g, c1)
    return _judge(ctx, c1, 2, None, outcome, _partition(ctx, c1, concepts).S)


def check_alg3(
    ctx: FormalContext, c1: int, mode: Mode, concepts: ConceptSet | None = None
) -> RefutationReport:
    mode = Mode(mode)
    _require_maximal(ctx, c1)
    outcome = replay_alg3(build_graph(ctx), c1, mode)
    return _judge(ctx, c1, 3, mode, outcome, _partition(ctx, c1, concepts).T)


def check_all(ctx: FormalContext, c1: int, concepts: ConceptSet | None = None) -> list[RefutationReport]:
    """Every applicable check for one pivot, in a fixed order."""
    if concepts is None:
        concepts = enumerate_lectic(ctx)
    reports = [check_alg1(ctx, c1, concepts)]
    if lower_cone(build_graph(ctx), c1):
        reports.append(check_alg2(ctx, c1, concepts))
    for mode in Mode:
        reports.append(check_alg3(ctx, c1, mode, concepts))
    return reports


# -- built-in counterexamples ------------------------------------------------

_CEX = {
    "cex1": (
        ("c1", "c2", "b", "n"),
        {"1": ["c1"], "2": ["c1", "b"], "3": ["c1", "c2", "b"], "4": ["c2"]},
    ),
    "cex2": (
        ("c1", "c2", "c3", "b"),
        {
            "1": ["c2"],
            "2": ["c1", "c2"],
            "3": ["c1", "c2", "b"],
            "4": ["c1", "c3", "b"],
            "5": ["c1", "c3"],
            "6": ["c3"],
        },
    ),
    "cex3": (
        ("c1", "c2", "c3", "b"),
        {
            "1": ["c2"],
            "2": ["c1", "c2", "b"],
            "3": ["c1", "c2", "c3"],
            "4": ["c1", "c3"],
            "5": ["c3"],
        },
    ),
}


def builtin_cases() -> list[tuple[str, FormalContext, int]]:
    """The three published counterexamples, each with pivot ``c1``."""
    cases = []
    for name, (attrs, table) in _CEX.items():
        ctx = FormalContext.from_table(attrs, table)
        cases.append((name, ctx, ctx.attribute_index("c1")))
    return cases


def builtin_case(name: str) -> tuple[FormalContext, int]:
    for case_name, ctx, pivot in builtin_cases():
        if case_name == name:
            return ctx, pivot
    raise KeyError(name)


# -- random generation and fuzzing ----------------------------------------------


@dataclass(frozen=True)
class FuzzConfig:
    seed: int
    iterations: int
    max_objects: int = 8
    max_attributes: int = 6
    density: float = 0.4
    require_nonempty_rows_cols: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")
        if not 1 <= self.max_objects <= 8:
            raise ValueError("max_objects must be in 1..8")
        if not 1 <= self.max_attributes <= 6:
            raise ValueError("max_attributes must be in 1..6")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must be in [0, 1]")


def random_context(
    rng: random.Random,
    max_objects: int,
    max_attributes: int,
    density: float,
    require_nonempty_rows_cols: bool = False,
) -> FormalContext:
    n = rng.randint(1, max_objects)
    m = rng.randint(1, max_attributes)
    grid = [[rng.random() < density for _ in range(m)] for _ in range(n)]
    if require_nonempty_rows_cols:
        for row in grid:
            if not any(row):
                row[rng.randrange(m)] = True
        for a in range(m):
            if not any(row[a] for row in grid):
                grid[rng.randrange(n)][a] = True
    return FormalContext.from_matrix(
        [str(o + 1) for o in range(n)], [f"a{a}" for a in range(m)], grid
    )


def random_contexts(cfg: FuzzConfig) -> Iterator[FormalContext]:
    rng = random.Random(cfg.seed)
    for _ in range(cfg.iterations):
        yield random_context(
            rng, cfg.max_objects, cfg.max_attributes, cfg.density, cfg.require_nonempty_rows_cols
        )


def random_corpus(seed: int = 2017, per_density: int = 400, densities=(0.2, 0.4, 0.6)) -> list[FormalContext]:
    """Seeded corpus of small contexts, ``per_density`` for each density."""
    corpus = []
    for i, density in enumerate(densities):
        cfg = FuzzConfig(seed=seed + i, iterations=per_density, density=density)
        corpus.extend(random_contexts(cfg))
    return corpus


def fuzz(cfg: FuzzConfig) -> list[RefutationReport]:
    """Run every applicable check on every maximal pivot of each generated context.

    Returns only the UNSOUND and INCOMPLETE reports, in generation order.
    """
    found = []
    for ctx in random_contexts(cfg):
        concepts = enumerate_lectic(ctx)
        for pivot in members(maximal_attrs(build_graph(ctx))):
            for report in check_all(ctx, pivot, concepts):
                if report.verdict in (Verdict.UNSOUND, Verdict.INCOMPLETE):
                    found.append(report)
    return found


# -- shrinking ---------------------------------------------------------------


def _rerun(report: RefutationReport) -> Callable[[FormalContext, int], RefutationReport]:
    if report.algorithm == 1:
        return check_alg1
    if report.algorithm == 2:
        return check_alg2
    return lambda ctx, pivot: check_alg3(ctx, pivot, report.mode)


def shrink(report: RefutationReport, ctx: FormalContext) -> tuple[FormalContext, RefutationReport]:
    """Greedily drop objects, then attributes, while the verdict class persists.

    For UNSOUND reports the failed check (not-a-concept or wrong-partition)
    must persist too. The pivot attribute is never dropped. The result is locally minimal:
    removing any single remaining object or non-pivot attribute loses the
    verdict.
    """
    if report.verdict not in (Verdict.UNSOUND, Verdict.INCOMPLETE):
        raise ContractError("only UNSOUND or INCOMPLETE reports can be shrunk")
    check = _rerun(report)
    pivot_label = ctx.attribute_labels[report.pivot]

    def attempt(candidate: FormalContext) -> RefutationReport | None:
        try:
            r = check(candidate, candidate.attribute_index(pivot_label))
        except ContractError:
            return None
        if r.verdict is not report.verdict:
            return None
        if report.witness and r.witness and r.witness.failed_check != report.witness.failed_check:
            return None
        return r

    current, current_report = ctx, report
    changed = True
    while changed:
        changed = False
        for o in range(current.n_objects):
            if current.n_objects == 1:
                break
            cand = current.subcontext(current.all_objects & ~(1 << o), current.all_attributes)
            r = attempt(cand)
            if r is not None:
                current, current_report, changed = cand, r, True
                break
        if changed:
            continue
        for a in range(current.n_attributes):
            if current.attribute_labels[a] == pivot_label or current.n_attributes == 1:
                continue
            cand = current.subcontext(current.all_objects, current.all_attributes & ~(1 << a))
            r = attempt(cand)
            if r is not None:
                current, current_report, changed = cand, r, True
                break
    return current, current_report

