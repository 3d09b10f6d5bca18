from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from approach_lab.costs import INF, ZERO, ext
from approach_lab.spaces import (
    CanonicalSeq, CanonicalSpace, FiniteNet, FiniteSpace, PowerSeq, SpaceError, check_metric_axioms,
    is_forward_cauchy, opposite, order_space, product, specialization_order, tail_distances,
    yoneda_limits, zero_clusters,
)

from strategies import spaces


def window_cauchy(net: FiniteNet, rounds: int = 3) -> bool:
    """Brute force: the largest forward distance inside a long late window is 0."""
    start = len(net.prefix) + len(net.cycle)
    idx = [net.at(i) for i in range(start, start + rounds * len(net.cycle))]
    S = net.space
    return all(S.d(idx[j], idx[k]) == 0 for j in range(len(idx)) for k in range(j, len(idx)))


def brute_limits(net: FiniteNet) -> frozenset:
    S = net.space
    start = len(net.prefix)
    late = [net.at(i) for i in range(start, start + 2 * len(net.cycle))]
    tail = {y: max(S.d(u, y) for u in late) for y in S.points}
    return frozenset(x for x in S.points if all(S.d(x, y) == tail[y] for y in S.points))


def test_worked_space_is_metric(W):
    assert check_metric_axioms(W).ok


def test_triangle_and_reflexivity_violations_are_reported():
    bad = FiniteSpace.from_matrix(["p", "q", "r"], [[0, 1, 5], [1, 0, 1], [1, 1, 0]])
    rep = check_metric_axioms(bad)
    assert not rep.ok
    assert ("triangle", ("p", "q", "r")) in rep.violations
    loop = FiniteSpace.from_matrix(["p"], [[1]])
    assert check_metric_axioms(loop).violations[0][0] == "reflexivity"


def test_malformed_spaces_are_rejected():
    with pytest.raises(SpaceError):
        FiniteSpace.from_matrix(["a", "a"], [[0, 0], [0, 0]])
    with pytest.raises(SpaceError):
        FiniteSpace.from_matrix(["a", "b"], [[0, 0]])
    with pytest.raises(SpaceError):
        FiniteSpace.from_matrix([], [])


def test_opposite_and_product(W):
    assert opposite(W).d("b", "a") == 1
    assert opposite(opposite(W)) == W
    P = product([W, W])
    assert P.d("(a;b)", "(b;c)") == 1
    assert len(P) == 9


def test_specialization_examples(W):
    assert specialization_order(W) == {(p, p) for p in W.points}
    glued = FiniteSpace.from_matrix(["u", "v"], [[0, 0], [0, 0]])
    assert {("u", "v"), ("v", "u")} <= specialization_order(glued)
    leq = {("x", "x"), ("y", "y"), ("z", "z"), ("x", "y"), ("y", "z"), ("x", "z")}
    assert specialization_order(order_space(["x", "y", "z"], leq)) == leq


def test_canonical_spaces():
    DR = CanonicalSpace.parse("DR")
    assert DR.d(ext(5), ext(3)) == 2 and DR.d(ext(3), ext(5)) == 0
    DL2 = CanonicalSpace.parse("DL^2")
    assert DL2.name == "DL^2"
    assert DL2.d((ext(1), ext(4)), (ext(3), ext(4))) == 2
    with pytest.raises(SpaceError):
        CanonicalSpace.parse("DX")


def test_net_examples(W):
    assert is_forward_cauchy(FiniteNet(W, (), ("b",)))
    assert not is_forward_cauchy(FiniteNet(W, (), ("a", "b")))
    assert yoneda_limits(FiniteNet(W, ("a", "c"), ("b",))) == {"b"}
    with pytest.raises(SpaceError):
        yoneda_limits(FiniteNet(W, (), ("a", "b")))


def test_canonical_sequences():
    up = CanonicalSeq("DR", "linear", slope=1)
    assert is_forward_cauchy(up, "DR")
    assert yoneda_limits(up) is INF
    assert not is_forward_cauchy(CanonicalSeq("DL", "linear", slope=1))
    halves = CanonicalSeq("DR", "geometric", scale=1)
    assert yoneda_limits(halves) == 0
    assert PowerSeq((up, halves)).at(2) == (2, Fraction(1, 4))
    assert yoneda_limits(PowerSeq((up, halves)), "DR^2") == (INF, ZERO)
    with pytest.raises(SpaceError):
        is_forward_cauchy(up, "DL")


@given(spaces(max_points=4), st.data())
def test_forward_cauchy_matches_window_oracle(S, data):
    pts = st.sampled_from(S.points)
    net = FiniteNet(S, tuple(data.draw(st.lists(pts, max_size=2))), tuple(data.draw(st.lists(pts, min_size=1, max_size=3))))
    assert is_forward_cauchy(net) == window_cauchy(net)


@given(spaces(max_points=4), st.data())
def test_yoneda_limits_nonempty_and_clustered(S, data):
    clusters = zero_clusters(S)
    members = sorted(clusters[data.draw(st.integers(0, len(clusters) - 1))])
    cyc = tuple(S.points[i] for i in members)
    net = FiniteNet(S, (), cyc)
    assert is_forward_cauchy(net)
    lim = yoneda_limits(net)
    assert lim and lim == brute_limits(net)
    for x, y in itertools.product(lim, repeat=2):
        assert S.d(x, y) == 0
    assert tail_distances(net) == S.dist[S.index(next(iter(lim)))]


@given(spaces(max_points=4))
def test_opposite_and_products_stay_metric(S):
    assert check_metric_axioms(opposite(S)).ok
    assert check_metric_axioms(product([S, S])).ok


def test_spaces_are_hashable_values(W):
    again = FiniteSpace.from_matrix(list(W.points), W.dist)
    assert hash(again) == hash(W) and again == W
