import itertools
import math
import os

import pytest

from softclass import (
    LAWS,
    BoundsExceeded,
    Context,
    ContextMismatch,
    SideConditionUnmet,
    absolute_soft_set,
    check_law,
    enumerate_class_mappings,
    enumerate_soft_sets,
    run_exhaustive,
    search_counterexample,
    validate_mapping,
    validate_soft_set,
)
from softclass.errors import EmptyTarget
from softclass.oracle import Bounds, THEOREM_LAWS, run_bounded, sized_contexts, soft_set_count


def count_by_subsets(nx, ne):
    """Sum over parameter sets A of (2^|X|)^|A|."""
    return sum(math.comb(ne, k) * (2 ** nx) ** k for k in range(ne + 1))


def count_by_brute_force(nx, ne):
    """Each attribute is either absent or carries one of the 2^|X| subsets."""
    universe = range(nx)
    subsets = [frozenset(c) for k in range(nx + 1) for c in itertools.combinations(universe, k)]
    choices = [None] + subsets
    return sum(1 for _ in itertools.product(choices, repeat=ne))


@pytest.mark.parametrize("nx,ne,expected", [(1, 1, 3), (2, 2, 25), (1, 2, 9)])
def test_enumeration_counts_examples(nx, ne, expected):
    assert count_by_subsets(nx, ne) == count_by_brute_force(nx, ne) == expected
    ctx, _ = sized_contexts(nx, 1, ne, 1)
    assert len(list(enumerate_soft_sets(ctx))) == expected


@pytest.mark.parametrize("nx,ne", list(itertools.product(range(4), range(4))))
def test_enumeration_complete_and_unique(nx, ne):
    ctx, _ = sized_contexts(nx, 1, ne, 1)
    sets = list(enumerate_soft_sets(ctx))
    assert len(sets) == len(set(sets)) == count_by_subsets(nx, ne) == soft_set_count(nx, ne)


def test_enumeration_order():
    ctx, _ = sized_contexts(1, 1, 2, 1)
    sets = list(enumerate_soft_sets(ctx))
    assert [s.domain for s in sets] == [()] + [("e1",)] * 2 + [("e2",)] * 2 + [("e1", "e2")] * 4
    assert sets[1]["e1"] == frozenset() and sets[2]["e1"] == {"x1"}


def test_enumeration_guard():
    with pytest.raises(BoundsExceeded):
        list(enumerate_soft_sets(Context("abcde", ["e1"])))
    big = Context("ab", [f"e{i}" for i in range(5)])
    with pytest.raises(BoundsExceeded):
        list(enumerate_class_mappings(big, big))


@pytest.mark.parametrize("shape,expected", [
    ((2, 2, 2, 2), 16),
    ((1, 3, 1, 1), 3),
    ((2, 1, 2, 2), 4),
])
def test_mapping_counts(shape, expected):
    source, target = sized_contexts(*shape)
    maps = list(enumerate_class_mappings(source, target))
    assert len(maps) == len(set(maps)) == expected
    assert all(m.mode == "strict" for m in maps)


def test_empty_target():
    source, target = sized_contexts(1, 0, 1, 1)
    with pytest.raises(EmptyTarget):
        list(enumerate_class_mappings(source, target))
    source, target = sized_contexts(1, 1, 1, 0)
    with pytest.raises(EmptyTarget):
        list(enumerate_class_mappings(source, target))


# -- single instances -------------------------------------------------------------


def test_l3_on_paper_pair(m1, pair):
    w = check_law("L3", m1, pair)
    assert w.verdict == "holds"
    assert w.lhs == w.rhs


def test_l4_holds_and_n2_fails_on_paper_pair(m1, pair):
    assert check_law("L4", m1, pair).verdict == "holds"
    w = check_law("N2", m1, pair)
    assert w.verdict == "violated"
    assert {a: set(v) for a, v in w.lhs.items} == {"e1p": set(), "e2p": {"z"}, "e3p": {"y", "z"}}
    assert {a: set(v) for a, v in w.rhs.items} == {"e1p": set(), "e2p": {"z"}, "e3p": {"y"}}


def test_l9_with_full_absolute(m1, gc, ctx2):
    w = check_law("L9", m1, [gc, absolute_soft_set(ctx2)])
    assert w.verdict == "holds"
    assert {a: set(v) for a, v in w.lhs.items} == {
        "e1": set(), "e2": set(), "e3": {"a", "c"}, "e4": set(),
    }


def test_n1_on_m1(m1):
    assert check_law("N1", m1).violated


def test_side_conditions(m1, ctx1, fa, pair):
    disjoint = validate_soft_set(ctx1, {"e1": ["a"]})
    with pytest.raises(SideConditionUnmet):
        check_law("L4", m1, [disjoint, fa])
    with pytest.raises(SideConditionUnmet):
        check_law("L5", m1, pair)


def test_argument_class_checked(m1, fa, gc):
    with pytest.raises(ContextMismatch):
        check_law("L8", m1, [fa, fa])
    with pytest.raises(TypeError):
        check_law("L3", m1, [fa])


# -- exhaustive runs --------------------------------------------------------------


@pytest.mark.parametrize("size", [1, 2])
def test_theorems_hold(size):
    reports = run_exhaustive(*sized_contexts(size, size, size, size), THEOREM_LAWS)
    assert [r.law for r in reports] == list(THEOREM_LAWS)
    assert all(r.violation_count == 0 and not r.violations for r in reports)
    assert all(r.instances > 0 for r in reports)


def test_no_laws_empty_report():
    assert run_exhaustive(*sized_contexts(2, 2, 2, 2), []) == []


def test_instance_counts_at_2():
    by_law = {r.law: r.instances for r in run_exhaustive(*sized_contexts(2, 2, 2, 2))}
    assert by_law["L1"] == 16
    assert by_law["L3"] == by_law["L8"] == 16 * 25 * 25
    # ordered pairs with overlapping parameter sets: 25^2 minus disjoint pairs
    sets = list(enumerate_soft_sets(sized_contexts(2, 2, 2, 2)[0]))
    overlapping = sum(1 for f in sets for g in sets if set(f.domain) & set(g.domain))
    assert by_law["L4"] == 16 * overlapping


def brute_force(source, target, law_id):
    """Object-level evaluation of every instance, independent of the engine."""
    law = LAWS[law_id]
    maps = list(enumerate_class_mappings(source, target))
    ctx = source if law.argument_class == "source" else target
    sets = list(enumerate_soft_sets(ctx)) if law.arity else []
    instances, violations = 0, []
    for f in maps:
        for args in itertools.product(sets, repeat=law.arity):
            try:
                w = check_law(law, f, args)
            except SideConditionUnmet:
                continue
            instances += 1
            if w.violated:
                violations.append((f, args))
    return instances, violations


CROSS_SHAPES = [(1, 1, 1, 1), (2, 1, 2, 1), (1, 2, 1, 2), (2, 2, 2, 2), (0, 1, 1, 2), (2, 2, 0, 1)]
CROSS_LAWS = ["L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10", "N1", "N2"]


@pytest.mark.parametrize("shape", CROSS_SHAPES)
def test_engine_matches_object_evaluation(shape):
    source, target = sized_contexts(*shape)
    reports = run_exhaustive(source, target, CROSS_LAWS)
    for rep in reports:
        instances, violations = brute_force(source, target, rep.law)
        assert rep.instances == instances, rep.law
        assert rep.violation_count == len(violations), rep.law
        assert [(w.mapping, w.arguments) for w in rep.violations] == violations, rep.law


def test_witnesses_are_sound():
    source, target = sized_contexts(2, 2, 2, 2)
    for rep in run_exhaustive(source, target, ["N1", "N2"], limit=50):
        assert rep.violations
        for w in rep.violations:
            assert check_law(w.law, w.mapping, w.arguments) == w


def test_reports_are_deterministic():
    from softclass.codec import serialize_document

    a = serialize_document(run_bounded(Bounds(2, 2, 2, 2), ["L3", "N2"], limit=5))
    b = serialize_document(run_bounded(Bounds(2, 2, 2, 2), ["L3", "N2"], limit=5))
    assert a == b


def test_family_laws_hold():
    reports = run_exhaustive(*sized_contexts(2, 2, 2, 2), ["L3n", "L4n", "L8n", "L9n"],
                             family_samples=200)
    for rep in reports:
        assert rep.instances > 0
        assert rep.violation_count == 0


def test_bounds_shapes_skip_impossible_targets():
    shapes = Bounds(1, 1, 1, 1).shapes()
    assert (1, 0, 0, 0) not in shapes and (0, 0, 1, 0) not in shapes
    assert shapes[0] == (0, 0, 0, 0)
    assert len(shapes) == 9


# -- counterexample search -----------------------------------------------------------


def test_search_n1_with_m1(m1):
    w = search_counterexample("N1", mapping=m1)
    assert w is not None and w.violated
    assert "x" not in w.rhs["e2p"]


def test_search_n2_with_paper_pair(m1, pair):
    w = search_counterexample("N2", mapping=m1, arguments=pair)
    assert w is not None
    assert w.arguments == pair


def test_search_n2_at_size_one_finds_nothing():
    # one point, one attribute: u and p are bijections, so both sides coincide
    assert search_counterexample("N2", *sized_contexts(1, 1, 1, 1)) is None


def test_search_returns_first_in_order():
    source, target = sized_contexts(2, 2, 2, 2)
    (rep,) = run_exhaustive(source, target, ["N2"], limit=1)
    assert search_counterexample("N2", source, target) == rep.violations[0]


def test_search_sweeps_bounds():
    w1 = search_counterexample("N1", bounds=Bounds(3, 3, 3, 3, minimum=1))
    w2 = search_counterexample("N2", bounds=Bounds(3, 3, 3, 3, minimum=1))
    assert w1.violated and w2.violated
    assert search_counterexample("N2", bounds=Bounds(1, 1, 1, 1, minimum=1)) is None


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("SOFTCLASS_DEEP"), reason="set SOFTCLASS_DEEP=1")
def test_theorems_hold_up_to_three():
    laws = list(THEOREM_LAWS) + ["L3n", "L4n", "L8n", "L9n"]
    for rep in run_bounded(Bounds(3, 3, 3, 3), laws):
        assert rep.violation_count == 0, rep.law


def test_engine_matches_objects_for_partial_mappings():
    source, target = sized_contexts(2, 2, 3, 2)
    f = validate_mapping(
        source, target, {"x1": "y2", "x2": "y2"}, {"e1": "e2p", "e3": "e2p"}, "partial"
    )
    sets_src = list(enumerate_soft_sets(source))
    sets_tgt = list(enumerate_soft_sets(target))
    for rep in run_exhaustive(source, target, CROSS_LAWS, mappings=[f]):
        law = LAWS[rep.law]
        sets = sets_src if law.argument_class == "source" else sets_tgt
        instances, violations = 0, []
        for args in itertools.product(sets if law.arity else [], repeat=law.arity):
            try:
                w = check_law(law, f, args)
            except SideConditionUnmet:
                continue
            instances += 1
            if w.violated:
                violations.append(args)
        assert rep.instances == instances, rep.law
        assert [w.arguments for w in rep.violations] == violations, rep.law


@pytest.mark.parametrize("law_id", ["L3n", "L4n", "L8n", "L9n"])
def test_family_engine_counts_match_objects(law_id):
    import numpy as np

    from softclass import engine
    from softclass.oracle import _decode_soft_set

    source, target = sized_contexts(2, 2, 2, 2)
    law = LAWS[law_id]
    ctx = source if law.argument_class == "source" else target
    src, tgt = engine.CodeTable.build(2, 2), engine.CodeTable.build(2, 2)
    table = src if ctx is source else tgt
    triples = np.random.default_rng(1).integers(0, len(table), size=(300, 3))
    u, p = (0, 1), (1, 1)
    count, bad = engine.evaluate_family(law_id, triples, src, tgt, u, p, 2)
    f = next(m for m in enumerate_class_mappings(source, target)
             if m.u_table == {"x1": "y1", "x2": "y2"} and m.p_table == {"e1": "e2p", "e2": "e2p"})
    expected = 0
    for t in triples:
        args = [_decode_soft_set(ctx, table.codes[i]) for i in t]
        try:
            assert not check_law(law, f, args).violated
        except SideConditionUnmet:
            continue
        expected += 1
    assert count == expected and len(bad) == 0


@pytest.mark.parametrize("law_id,minimum,shape", [
    ("N1", 1, (1, 1, 1, 2)),
    ("N2", 1, (1, 1, 2, 1)),
    ("N1", 0, (0, 1, 0, 1)),
])
def test_minimal_witness_shapes(law_id, minimum, shape):
    w = search_counterexample(law_id, bounds=Bounds(3, 3, 3, 3, minimum=minimum))
    f = w.mapping
    found = (len(f.source.universe), len(f.target.universe),
             len(f.source.attributes), len(f.target.attributes))
    assert found == shape
