"""Naive label-level reference implementations used only by the tests.

Everything here works on frozensets of labels and closes object subsets,
so it shares no code path with the bitmask implementation.
"""

from itertools import chain, combinations


def table(ctx):
    """{object label: frozenset of attribute labels}."""
    return {
        o: frozenset(a for j, a in enumerate(ctx.attribute_labels) if row >> j & 1)
        for o, row in zip(ctx.object_labels, ctx.rows)
    }


def up(ctx, objs):
    t = table(ctx)
    result = set(ctx.attribute_labels)
    for o in objs:
        result &= t[o]
    return frozenset(result)


def down(ctx, attrs):
    t = table(ctx)
    return frozenset(o for o in ctx.object_labels if set(attrs) <= t[o])


def subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def concepts(ctx):
    """Every formal concept, as a set of (extent, intent) label frozensets."""
    out = set()
    for objs in subsets(ctx.object_labels):
        intent = up(ctx, objs)
        out.add((down(ctx, intent), intent))
    return out


def core(ctx):
    all_c = concepts(ctx)
    top = (frozenset(ctx.object_labels), up(ctx, ctx.object_labels))
    bottom = (down(ctx, ctx.attribute_labels), up(ctx, down(ctx, ctx.attribute_labels)))
    attr_concepts = {(down(ctx, [a]), up(ctx, down(ctx, [a]))) for a in ctx.attribute_labels}
    return all_c - {top, bottom} - attr_concepts


def lower_cone(ctx, a):
    return frozenset(x for x in ctx.attribute_labels if x != a and down(ctx, [x]) <= down(ctx, [a]))


def fst(ctx, c1):
    cone = lower_cone(ctx, c1)
    F, S, T = set(), set(), set()
    for ext, itt in core(ctx):
        if c1 not in itt:
            T.add((ext, itt))
        elif itt & cone:
            S.add((ext, itt))
        else:
            F.add((ext, itt))
    return F, S, T


def reducible(ctx, a):
    """Existential definition: some Z without a has the same extent."""
    others = [x for x in ctx.attribute_labels if x != a]
    target = down(ctx, [a])
    return any(down(ctx, z) == target for z in subsets(others))


def as_labels(ctx, concept_or_pair):
    ext, itt = (concept_or_pair.extent, concept_or_pair.intent) if hasattr(concept_or_pair, "extent") else concept_or_pair
    return frozenset(ctx.object_names(ext)), frozenset(ctx.attribute_names(itt))
