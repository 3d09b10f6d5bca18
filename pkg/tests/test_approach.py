from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from approach_lab.approach import (
    ApproachError, ApproachTable, TopologySpec, alexandroff, check_approach_axioms, closure_operator,
    coreflection, embed_topology, from_regular_functions, from_subbasis, is_contraction,
    is_regular_function, mask_of, members, product_table, scott_distance_finite, scott_witness_family,
    specialization,
)
from approach_lab.costs import INF, ZERO
from approach_lab.spaces import order_space
from approach_lab.weights import PointMap, yoneda_embed

from strategies import spaces, spaces_with_weight


def lower_sets(points, leq):
    out = set()
    for r in range(len(points) + 1):
        for c in itertools.combinations(points, r):
            if all(a in c for b in c for a in points if (a, b) in leq):
                out.add(c)
    return out


def test_mask_helpers():
    assert list(members(0b1011)) == [0, 1, 3]
    assert mask_of([0, 1, 3]) == 0b1011


def test_alexandroff_examples(W):
    g = alexandroff(W)
    assert g.delta("a", ["b", "c"]) == 1
    assert all(g.delta(x, []) is INF for x in W.points)
    assert all(g.delta(x, [x]) == 0 for x in W.points)
    assert check_approach_axioms(g).ok


def test_axiom_violations_are_reported(W):
    g = alexandroff(W)
    rows = [list(r) for r in g.table]
    rows[0][1] = 1  # delta(a, {a}) = 1
    rep = check_approach_axioms(ApproachTable(g.points, tuple(map(tuple, rows))))
    assert rep.violations[0] == ("A1", ("a",))
    rows = [list(r) for r in g.table]
    rows[1][0] = ZERO
    rep = check_approach_axioms(ApproachTable(g.points, tuple(map(tuple, rows))), limit=1)
    assert not rep.ok and rep.violations[0][0] == "A2"


def test_partial_tables_are_refused():
    with pytest.raises(ApproachError):
        ApproachTable.from_mapping(["a", "b"], {("a", frozenset()): INF})


def test_scott_distance_examples(W):
    s = scott_distance_finite(W)
    assert s.delta("a", ["b", "c"]) == 1
    assert all(s.delta(x, [y]) == W.d(x, y) for x in W.points for y in W.points)
    assert s.delta("c", []) is INF
    assert specialization(s) == W == specialization(alexandroff(W))


def test_regular_function_examples(W):
    g = alexandroff(W)
    for m in range(1, 8):
        assert is_regular_function(g, g.column(m))
    assert is_regular_function(g, (3, 3, 3))
    assert is_regular_function(g, yoneda_embed(W, "b").values)
    verdict = is_regular_function(g, (5, 0, 0))
    assert not verdict and verdict.witness[0] == "a"


def test_topology_examples(W):
    T = coreflection(alexandroff(W))
    assert len(T.closed) == 8
    two = TopologySpec.from_label_sets(["u", "v"], [[], ["u"], ["v"], ["u", "v"]])
    om = embed_topology(two)
    assert om.delta("u", ["u"]) == 0 and om.delta("u", ["v"]) is INF
    indiscrete = TopologySpec.from_label_sets(["u", "v"], [[], ["u", "v"]])
    om = embed_topology(indiscrete)
    assert all(om.delta(x, A) == 0 for x in "uv" for A in (["u"], ["v"], ["u", "v"]))
    assert coreflection(om) == indiscrete
    with pytest.raises(ApproachError):
        TopologySpec.from_label_sets(["u", "v"], [["u"], ["u", "v"]])


def test_poset_image_gives_the_alexandroff_topology():
    pts = ["p", "q", "r"]
    leq = {(x, x) for x in pts} | {("p", "q"), ("p", "r")}
    P = order_space(pts, leq)
    T = coreflection(alexandroff(P))
    assert set(T.closed_sets()) == lower_sets(pts, leq)
    assert specialization(embed_topology(T)) == P


@given(spaces(max_points=4))
def test_generated_tables_satisfy_the_axioms(S):
    assert check_approach_axioms(alexandroff(S), limit=1).ok
    assert check_approach_axioms(scott_distance_finite(S), limit=1).ok


@given(spaces(max_points=4))
def test_subbasis_and_regular_family_reproduce_alexandroff(S):
    g = alexandroff(S)
    cols = [g.column(m) for m in range(1 << len(S))]
    assert from_subbasis(S.points, cols) == g
    assert from_regular_functions(S.points, cols) == g
    reps = [yoneda_embed(S, y).values for y in S.points]
    assert from_subbasis(S.points, reps) == g


@given(spaces_with_weight(max_points=4))
def test_scott_distance_dominates_every_vanishing_weight(sw):
    S, phi = sw
    s = scott_distance_finite(S, verify=False)
    n = len(S)
    zeros = mask_of(i for i in range(n) if phi.values[i] == ZERO)
    for A in range(1, 1 << n):
        if A & zeros == A:
            assert all(s.table[x][A] >= phi.values[x] for x in range(n))


@given(spaces(max_points=4))
def test_coreflection_round_trip(S):
    T = coreflection(alexandroff(S))
    assert coreflection(embed_topology(T)) == T
    cl = closure_operator(alexandroff(S))
    assert all(cl[m] & m == m for m in range(len(cl)))


@given(spaces(max_points=3), spaces(max_points=3), st.data())
def test_contraction_iff_non_expansive_for_alexandroff(X, Y, data):
    f = PointMap(X, Y, tuple(data.draw(st.integers(0, len(Y) - 1)) for _ in X.points))
    assert bool(is_contraction(f, alexandroff(X), alexandroff(Y))) == f.is_non_expansive()


@given(spaces(max_points=2), spaces(max_points=2))
def test_product_table_is_an_approach_distance(X, Y):
    P, tuples = product_table([alexandroff(X), alexandroff(Y)])
    assert len(tuples) == len(X) * len(Y)
    assert check_approach_axioms(P, limit=1).ok


def test_one_factor_product_is_the_factor(W):
    P, _ = product_table([alexandroff(W)])
    assert P.table == alexandroff(W).table


@given(spaces(max_points=4))
def test_every_witness_is_certified_scott(S):
    fam = scott_witness_family(S, check="all")
    assert len(fam) == (1 << len(S)) + len(S)
