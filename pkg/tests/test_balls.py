from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from approach_lab import _mutation
from approach_lab.approach import alexandroff, coreflection
from approach_lab.balls import (
    BallChain, FormalBall, NotDirected, ball_leq, bplus_contains, chain_is_directed, chain_join,
    check_condition_S_instance, is_upper_bound, radius_grid, topologies,
)
from approach_lab.costs import INF
from approach_lab.spaces import FiniteNet, FiniteSpace, order_space, zero_clusters
from approach_lab.weights import yoneda_embed

from strategies import GRID, spaces, spaces_with_weight

radii = st.sampled_from(GRID)


def test_ball_order_examples(W):
    assert ball_leq(FormalBall("a", 2), FormalBall("b", 1), W)
    assert not ball_leq(FormalBall("a", 1), FormalBall("b", 1), W)
    with pytest.raises(ValueError):
        FormalBall("a", INF)


def test_bplus_membership_is_strict(W):
    yb = yoneda_embed(W, "b")
    assert bplus_contains(yb, FormalBall("a", 2))
    assert not bplus_contains(yb, FormalBall("a", 1))
    assert not any(bplus_contains(yb, FormalBall(p, 0)) for p in W.points)
    with _mutation.mutate("nonstrict_bplus"):
        assert bplus_contains(yb, FormalBall("a", 1))


def test_chain_join_examples(W):
    tail = BallChain("harmonic", centers=FiniteNet(W, (), ("c",)), base=Fraction(1, 2), scale=1)
    assert not chain_is_directed(BallChain("harmonic", centers=FiniteNet(W, ("a",), ("c",)), scale=1), W)
    assert chain_is_directed(tail, W)
    assert chain_join(tail, W) == FormalBall("c", Fraction(1, 2))
    const = BallChain("finite", (FormalBall("b", 1),) * 3)
    assert chain_join(const, W) == FormalBall("b", 1)
    assert is_upper_bound(const, FormalBall("b", 1), W)
    with pytest.raises(NotDirected):
        chain_join(BallChain("finite", (FormalBall("a", 1), FormalBall("b", 1))), W)


def test_condition_S_examples(W):
    chain = BallChain("harmonic", centers=FiniteNet(W, (), ("b",)), base=0, scale=1)
    rep = check_condition_S_instance(W, [chain], [1, Fraction(1, 2)])
    assert rep.ok and all(row[2] and row[3] for row in rep.rows)
    assert check_condition_S_instance(W, [chain], []).ok


def test_topology_examples(W):
    tops = topologies(W)
    assert all(len(T.closed) == 8 for T in tops.values())
    two = FiniteSpace.from_matrix(["u", "v"], [[0, 0], ["inf", 0]])
    for T in topologies(two).values():
        assert T.closed_sets() == [(), ("u",), ("u", "v")]


def test_poset_topologies_are_lower_set_topologies():
    pts = ["p", "q", "r", "s"]
    leq = {(x, x) for x in pts} | {("p", "q"), ("q", "r"), ("p", "r"), ("p", "s")}
    P = order_space(pts, leq)
    want = coreflection(alexandroff(P))
    assert all(T == want for T in topologies(P).values())


@given(spaces(max_points=4), st.data())
def test_ball_order_is_a_preorder(S, data):
    pick = lambda: FormalBall(data.draw(st.sampled_from(S.points)), data.draw(radii))
    a, b, c = pick(), pick(), pick()
    assert ball_leq(a, a, S)
    if ball_leq(a, b, S) and ball_leq(b, c, S):
        assert ball_leq(a, c, S)


@given(spaces(max_points=4))
def test_zero_radius_embedding_reflects_the_order(S):
    for x, y in itertools.product(S.points, repeat=2):
        assert ball_leq(FormalBall(x, 0), FormalBall(y, 0), S) == (S.d(x, y) == 0)


@given(spaces_with_weight(), st.data())
def test_bplus_is_a_lower_set(sw, data):
    S, phi = sw
    hi = FormalBall(data.draw(st.sampled_from(S.points)), data.draw(radii))
    lo = FormalBall(data.draw(st.sampled_from(S.points)), data.draw(radii))
    if bplus_contains(phi, hi) and ball_leq(lo, hi, S):
        assert bplus_contains(phi, lo)


@given(spaces(max_points=4), st.data())
def test_joins_of_cauchy_chains_and_condition_S(S, data):
    cluster = sorted(data.draw(st.sampled_from(zero_clusters(S))))
    net = FiniteNet(S, (data.draw(st.sampled_from(S.points)),), tuple(S.points[i] for i in cluster))
    r = data.draw(radii)
    chain = BallChain("harmonic", centers=net, base=r, scale=data.draw(st.sampled_from([1, 2, 5])))
    if not chain_is_directed(chain, S):
        return
    j = chain_join(chain, S)
    assert j is not None and j.radius == r
    assert is_upper_bound(chain, j, S)
    assert check_condition_S_instance(S, [chain], [data.draw(radii)]).ok


@given(spaces(max_points=4))
def test_four_topologies_coincide(S):
    tops = topologies(S)
    assert len({T.closed for T in tops.values()}) == 1


@given(spaces(max_points=3))
def test_radius_grid_contains_entries(S):
    grid = set(radius_grid(S))
    assert 0 in grid
    assert all(v in grid for row in S.dist for v in row if v is not INF)
