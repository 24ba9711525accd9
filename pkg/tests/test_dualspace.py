import json
from math import inf

import pytest

from motiondual.dualspace import (
    CLASS_KIND,
    GERM_KIND,
    DualModel,
    FiniteT0Space,
    Point,
    build_dual_model,
    closure_of,
    components_and_orc,
    distance,
    dual_model_from_json,
    dual_model_to_dot,
    dual_model_to_json,
    glimm_partition,
    inseparable_points,
    point_from_id,
    separated_points,
)
from motiondual.errors import PreconditionViolated, UnknownPoint
from motiondual.signatures import enumerate_signatures, inseparable, validate


def cls(entries, n):
    return Point(CLASS_KIND, validate(entries, n))


def germ(entries, n):
    return Point(GERM_KIND, validate(entries, n))


# --- space plumbing ----------------------------------------------------------


def test_space_rejects_non_t0():
    a, b = "a", "b"
    with pytest.raises(ValueError):
        FiniteT0Space({a: {a, b}, b: {a, b}})


def test_space_rejects_non_reflexive():
    with pytest.raises(ValueError):
        FiniteT0Space({"a": set()})


def test_space_rejects_non_transitive():
    # cl(c) = {c, b} but cl(b) = {b, a}: closing c again would pick up a
    with pytest.raises(ValueError):
        FiniteT0Space({"a": {"a"}, "b": {"a", "b"}, "c": {"b", "c"}})


def test_discrete_two_point_space():
    sp = FiniteT0Space({"a": {"a"}, "b": {"b"}})
    assert not sp.inseparable("a", "b")
    assert sp.distance("a", "b") == inf
    assert len(sp.components()) == 2


# --- model construction ------------------------------------------------------


def test_build_counts_n3():
    m = build_dual_model(3, 1)
    assert len(m.class_points) == 2
    assert sorted(g.sig.entries for g in m.germ_points) == [(-1,), (0,), (1,)]


def test_build_counts_n4():
    m = build_dual_model(4, 1)
    assert len(m.class_points) == 4
    assert len(m.germ_points) == 2


def test_build_rejects_small_n():
    with pytest.raises(PreconditionViolated):
        build_dual_model(2, 1)


def test_build_accepts_bound_zero():
    m = build_dual_model(5, 0)
    assert len(m.class_points) == 1 and len(m.germ_points) == 1


def test_germ_closure_is_hull():
    m = build_dual_model(4, 1)
    g = m.germ_point(validate([1], 3))
    cl = m.space.closure(g)
    assert g in cl
    assert {p.sig.entries for p in cl if p.kind == CLASS_KIND} == {(1, -1), (1, 0), (1, 1)}


def test_class_points_closed_and_discrete():
    m = build_dual_model(6, 1)
    assert m.space.is_closed(m.class_points)
    for p in m.class_points:
        assert m.space.closure(p) == frozenset([p])
    # every subset of class points is closed
    some = frozenset(list(m.class_points)[:3])
    assert m.space.is_closed(some)


def test_closure_of_examples():
    m = build_dual_model(4, 1)
    assert closure_of(m.space, []) == frozenset()
    c = cls([1, 1], 4)
    assert closure_of(m.space, [c]) == frozenset([c])
    g = germ([0], 3)
    assert closure_of(m.space, [g]) > frozenset([g])


# --- inseparability ----------------------------------------------------------


def test_inseparable_points_reflexive():
    m = build_dual_model(5, 1)
    for p in list(m.space.points)[:4]:
        assert inseparable_points(m.space, p, p)


def test_inseparable_points_germ_vs_hull_class():
    m = build_dual_model(4, 2)
    assert inseparable_points(m.space, germ([1], 3), cls([1, 0], 4))
    assert not inseparable_points(m.space, germ([2], 3), cls([1, 0], 4))


def test_inseparable_points_class_pair_example():
    m = build_dual_model(4, 2)
    assert not inseparable_points(m.space, cls([1, 1], 4), cls([2, 2], 4))
    assert inseparable_points(m.space, cls([1, 1], 4), cls([1, -1], 4))


@pytest.mark.parametrize("n", range(3, 8))
def test_model_matches_signature_inseparability(n):
    m = build_dual_model(n, 2)
    sigs = enumerate_signatures(n, 2)
    for a in sigs:
        for b in sigs:
            assert inseparable_points(m.space, Point(CLASS_KIND, a), Point(CLASS_KIND, b)) == inseparable(a, b)


def test_germs_pairwise_separated():
    m = build_dual_model(5, 1)
    germs = sorted(m.germ_points, key=str)
    for i, a in enumerate(germs):
        for b in germs[i + 1 :]:
            assert not inseparable_points(m.space, a, b)


def test_unknown_point():
    m = build_dual_model(4, 1)
    with pytest.raises(UnknownPoint):
        inseparable_points(m.space, cls([5, 0], 4), cls([0, 0], 4))


# --- separated points ---------------------------------------------------------


def test_no_separated_points_in_motion_models():
    # every germ keeps at least one class in its closure within the bound,
    # so the model relation leaves nothing separated; the op computes this
    for n, bound in [(3, 1), (4, 1), (5, 2)]:
        assert separated_points(build_dual_model(n, bound)) == frozenset()


def test_bound_zero_mutual_inseparability():
    m = build_dual_model(4, 0)
    (c,) = m.class_points
    (g,) = m.germ_points
    assert inseparable_points(m.space, c, g)
    assert separated_points(m) == frozenset()


def test_separated_implies_singleton_component():
    m = build_dual_model(6, 1)
    for p in separated_points(m):
        assert m.space.bfs([p]) == {p: 0}


# --- distance ----------------------------------------------------------------


def test_distance_extremal_examples():
    for n in (4, 5):
        m = build_dual_model(n, 1)
        d = distance(m, cls([0, 0], n), cls([1, 1], n), restrict_to_class=True)
        assert d == 2


def test_distance_self():
    m = build_dual_model(5, 1)
    assert distance(m, cls([1, 0], 5), cls([1, 0], 5)) == 0


def test_distance_n7_example():
    m = build_dual_model(7, 2)
    assert distance(m, cls([2, 1, 0], 7), cls([0, 0, 0], 7)) == 2


def test_distance_restriction_requires_class():
    m = build_dual_model(4, 1)
    with pytest.raises(PreconditionViolated):
        distance(m, germ([1], 3), cls([1, 1], 4), restrict_to_class=True)


def test_germ_mediation_no_shortcuts():
    m = build_dual_model(6, 2)
    classes = sorted(m.class_points, key=str)
    for a in classes:
        full = m.space.bfs([a])
        restricted = m.space.bfs([a], m.class_points)
        for b in classes:
            assert full.get(b, inf) == restricted.get(b, inf)


# --- orc and glimm -----------------------------------------------------------


def test_orc_values():
    comps, orc = components_and_orc(build_dual_model(5, 3))
    assert len(comps) == 1 and orc == 2
    comps, orc = components_and_orc(build_dual_model(3, 3))
    assert len(comps) == 1 and orc == 1


def test_orc_bound_zero_singleton():
    _, orc = components_and_orc(build_dual_model(6, 0))
    assert orc == 1


@pytest.mark.parametrize("n", range(3, 10))
def test_class_points_connected(n):
    comps, _ = components_and_orc(build_dual_model(n, 1))
    assert len(comps) == 1


def test_glimm_partition_shape():
    m = build_dual_model(5, 2)
    part = glimm_partition(m)
    assert part.single_class_block
    assert part.class_blocks == 1
    germ_blocks = [b for b in part.blocks if len(b) == 1 and next(iter(b)).kind == GERM_KIND]
    assert len(germ_blocks) == len(m.germ_points)
    covered = frozenset().union(*part.blocks)
    assert covered == frozenset(m.space.points)


def test_glimm_partition_n3_one_class():
    part = glimm_partition(build_dual_model(3, 1))
    big = max(part.blocks, key=len)
    assert {p.sig.entries for p in big} == {(0,), (1,)}


def test_glimm_partition_bound_zero():
    part = glimm_partition(build_dual_model(7, 0))
    assert part.single_class_block


# --- export ------------------------------------------------------------------


def test_json_roundtrip():
    m = build_dual_model(4, 1)
    payload = json.loads(json.dumps(dual_model_to_json(m)))
    m2 = dual_model_from_json(payload)
    assert m2.n == 4 and m2.bound == 1


def test_point_from_id():
    m = build_dual_model(4, 1)
    assert point_from_id(m, "class:1,-1") == cls([1, -1], 4)
    assert point_from_id(m, "germ:0") == germ([0], 3)
    with pytest.raises(UnknownPoint):
        point_from_id(m, "class:9,9")


def test_dot_export_shapes():
    m = build_dual_model(4, 1)
    dot = dual_model_to_dot(m)
    assert dot.count("[shape=ellipse]") == 4
    assert dot.count("[shape=box]") == 2
    assert "[dir=none]" in dot and "[style=dashed]" in dot
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
