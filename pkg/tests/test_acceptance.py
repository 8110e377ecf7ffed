"""Exit criteria. Each test prints one PASS/FAIL line, even under capture.

Run alone with ``pytest tests/test_acceptance.py -v``.
All checks are exact (zero tolerance).
"""

import json

import pytest

from fcarefute.context import close_intent, full_cols, full_rows, is_concept, members
from fcarefute.cxt import parse_cxt, write_cxt
from fcarefute.graph import build_graph, lower_cone, maximal_attrs
from fcarefute.harness import (
    FuzzConfig,
    Verdict,
    builtin_case,
    builtin_cases,
    check_alg1,
    check_alg2,
    check_alg3,
    fuzz,
    random_corpus,
)
from fcarefute.lattice import (
    core_set_A,
    enumerate_bruteforce,
    enumerate_lectic,
    extent_set,
    extents_from_preweight_intersections,
    partition_fst,
)
from fcarefute.pipeline import (
    DegenerateContextError,
    PawlakClass,
    clarify,
    classify_pawlak,
    full_row_via_minimal,
    is_reducible,
    reduce,
    run_pipeline,
)
from fcarefute.replay import Mode, Termination, replay_alg1, replay_alg2, replay_alg3

CORPUS_SEED = 2017
DENSITIES = (0.2, 0.4, 0.6)


@pytest.fixture(scope="module")
def corpus():
    contexts = random_corpus(seed=CORPUS_SEED, per_density=400, densities=DENSITIES)
    assert len(contexts) >= 1000
    assert all(c.n_objects <= 8 and c.n_attributes <= 6 for c in contexts)
    return contexts + [ctx for _, ctx, _ in builtin_cases()]


@pytest.fixture
def verdict(capsys):
    def emit(label, failures):
        ok = not failures
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label}" + ("" if ok else f": {failures[:3]}"))
        assert ok, failures[:3]

    return emit


def names(ctx, extent, intent):
    return ctx.object_names(extent), ctx.attribute_names(intent)


def test_ac1_counterexample_algorithm1(verdict):
    ctx, c1 = builtin_case("cex1")
    out = replay_alg1(build_graph(ctx), c1)
    report = check_alg1(ctx, c1)
    closed = close_intent(ctx, report.witness.intent)
    part = partition_fst(ctx, c1)
    b = ctx.attribute_index("b")
    failures = [
        msg
        for cond, msg in [
            ([names(ctx, *p) for p in out.emitted] == [(("3",), ("c1", "c2"))], "emission"),
            (out.trace.value("H1") == ("c2",), "H1"),
            (out.trace.value("A1") == ("3",), "A1"),
            (out.trace.events[-1].step == "step 2" and out.termination is Termination.NORMAL, "stop"),
            (report.verdict is Verdict.UNSOUND and report.witness.failed_check == "not-a-concept", "verdict"),
            (names(ctx, closed.extent, closed.intent) == (("3",), ("c1", "c2", "b")), "closure"),
            (lower_cone(build_graph(ctx), c1) >> b & 1 == 1, "b in N+(c1)"),
            (closed not in part.F and closed in part.S, "closure outside F"),
        ]
        if not cond
    ]
    verdict("AC1 counterexample 1 (algorithm 1 emits a non-concept)", failures)


def test_ac2_counterexample_algorithm2(verdict):
    ctx, c1 = builtin_case("cex2")
    out = replay_alg2(build_graph(ctx), c1)
    report = check_alg2(ctx, c1)
    failures = [
        msg
        for cond, msg in [
            (out.trace.value("N+") == ("b",), "N+"),
            (out.trace.value("H_b1") == ("c2", "c3"), "H_b1"),
            (out.trace.value("A_b1") == ("3",), "A"),
            (set(out.trace.value("B_b1")) == {"b", "c1", "c2"}, "B"),
            (out.trace.value("A_1d1") == (), "step 8"),
            (out.termination is Termination.NORMAL, "termination"),
            (report.verdict is Verdict.INCOMPLETE, "verdict"),
            (report.witness and names(ctx, report.witness.extent, report.witness.intent) == (("4",), ("c1", "c3", "b")), "witness"),
        ]
        if not cond
    ]
    verdict("AC2 counterexample 2 (algorithm 2 misses <{4},{c1,c3,b}>)", failures)


def test_ac3_counterexample_algorithm3(verdict):
    ctx, c1 = builtin_case("cex3")
    g = build_graph(ctx)
    drop = check_alg3(ctx, c1, Mode.DROP_ATTRIBUTE)
    keep = check_alg3(ctx, c1, Mode.KEEP_ATTRIBUTE)
    drop_pairs = [names(ctx, *p) for p in replay_alg3(g, c1, Mode.DROP_ATTRIBUTE).emitted]
    keep_pairs = [names(ctx, *p) for p in replay_alg3(g, c1, Mode.KEEP_ATTRIBUTE).emitted]
    failures = [
        msg
        for cond, msg in [
            (any(i == ("c2", "c3") for _, i in drop_pairs), "drop emission"),
            (drop.verdict is Verdict.UNSOUND and drop.witness.failed_check == "not-a-concept", "drop verdict"),
            (ctx.attribute_names(drop.witness.intent) == ("c2", "c3"), "drop witness"),
            ((("3",), ("c1", "c2", "c3")) in keep_pairs, "keep emission"),
            (keep.verdict is Verdict.UNSOUND and keep.witness.failed_check == "wrong-partition", "keep verdict"),
            (names(ctx, keep.witness.extent, keep.witness.intent) == (("3",), ("c1", "c2", "c3")), "keep witness"),
        ]
        if not cond
    ]
    verdict("AC3 counterexample 3 (algorithm 3 wrong under both readings)", failures)


def test_ac4_oracle_equivalence(corpus, verdict):
    failures = [i for i, ctx in enumerate(corpus) if enumerate_lectic(ctx) != enumerate_bruteforce(ctx)]
    verdict(f"AC4 lectic == brute force on {len(corpus)} contexts", failures)


def test_ac5_intersections_are_extents(corpus, verdict):
    failures = [
        i
        for i, ctx in enumerate(corpus)
        if extents_from_preweight_intersections(ctx) != extent_set(enumerate_bruteforce(ctx))
    ]
    verdict(f"AC5 pre-weight intersections == extents on {len(corpus)} contexts", failures)


def test_ac6_partition_law(corpus, verdict):
    failures = []
    pivots = 0
    for i, ctx in enumerate(corpus):
        concepts = enumerate_bruteforce(ctx)
        core = core_set_A(ctx, concepts)
        for c1 in members(maximal_attrs(build_graph(ctx))):
            pivots += 1
            part = partition_fst(ctx, c1, concepts)
            F, S, T = set(part.F), set(part.S), set(part.T)
            if F & S or F & T or S & T or len(part.all()) != len(core) or F | S | T != set(core):
                failures.append((i, c1))
            if not all(is_concept(ctx, c.extent, c.intent) for c in part.all()):
                failures.append((i, c1, "oracle"))
    verdict(f"AC6 F+S+T == A over {pivots} pivots", failures)


def test_ac7_theorem_properties(corpus, verdict):
    failures = []
    for i, ctx in enumerate(corpus):
        for o in range(ctx.n_objects):
            if full_row_via_minimal(ctx, o) != (ctx.rows[o] == ctx.all_attributes):
                failures.append((i, "full-row", o))
        for a in range(ctx.n_attributes):
            if ctx.columns.count(ctx.columns[a]) > 1 and not is_reducible(ctx, a):
                failures.append((i, "duplicate-reducible", a))
        clarified, _ = clarify(ctx)
        if PawlakClass.RELATIVELY_NECESSARY in classify_pawlak(clarified).values():
            failures.append((i, "relatively-necessary-after-clarify"))
        try:
            result = run_pipeline(ctx)
        except DegenerateContextError:
            if not (full_rows(ctx) == ctx.all_objects or full_cols(ctx) == ctx.all_attributes):
                failures.append((i, "degenerate"))
        else:
            if set(classify_pawlak(result.stages[3]).values()) != {PawlakClass.ABSOLUTELY_NECESSARY}:
                failures.append((i, "unnecessary-after-pipeline"))
        try:
            reduced, _ = reduce(clarified)
        except DegenerateContextError:
            continue
        if extent_set(enumerate_bruteforce(reduced)) != extent_set(enumerate_bruteforce(ctx)):
            failures.append((i, "extent preservation"))
    verdict("AC7 reduction properties (full rows, duplicates, clarified, reduced) and extent preservation", failures)


def test_ac8_roundtrip_and_determinism(corpus, verdict):
    failures = [i for i, ctx in enumerate(corpus) if parse_cxt(write_cxt(ctx)) != ctx]
    for density in DENSITIES:
        cfg = FuzzConfig(seed=CORPUS_SEED, iterations=100, density=density)
        a = [json.dumps(r.to_json(), sort_keys=True) for r in fuzz(cfg)]
        b = [json.dumps(r.to_json(), sort_keys=True) for r in fuzz(cfg)]
        if a != b:
            failures.append(("fuzz", density))
    for name, ctx, c1 in builtin_cases():
        g = build_graph(ctx)
        for run in (lambda: replay_alg1(g, c1), lambda: replay_alg3(g, c1, Mode.KEEP_ATTRIBUTE)):
            if run().trace.to_text() != run().trace.to_text():
                failures.append(("trace", name))
    verdict("AC8 .cxt round-trip and byte-identical fuzz reports/traces", failures)
