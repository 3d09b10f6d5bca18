from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from approach_lab.algebraic import (
    AlgebraicSpec, CertificationError, GNSeq, GNSpace, PL, colimit_dL, colimit_dR, compact_catalogue,
    const, delta_P, find_bottom, gn_case_study, is_compact_finite, minus, plus, power_sigma_check,
    rep_dL, rep_dR, scott_distance_algebraic, subbasis_check, wmax, wmin,
)
from approach_lab.approach import scott_distance_finite
from approach_lab.balls import BallChain, FormalBall
from approach_lab.costs import INF, d_L, d_R, tminus
from approach_lab.spaces import CanonicalSpace, FiniteSpace, SpaceError, order_space

from strategies import spaces

rationals = st.fractions(min_value=0, max_value=20, max_denominator=8)
DR = AlgebraicSpec(CanonicalSpace("DR"))
DL = AlgebraicSpec(CanonicalSpace("DL"))


def sampled_formula(kind, x, A, step=Fraction(1, 8), top=25):
    """Lower estimate of the compact-basis sup from an explicit grid of basis points."""
    d = d_R if kind == "DR" else d_L
    pts = [k * step for k in range(int(top / step) + 1)] + ([INF] if kind == "DL" else [])
    return max(tminus(min(d(b, a) for a in A), d(b, x)) for b in pts)


def test_compactness_examples(W):
    assert all(is_compact_finite(W, p) for p in W.points)
    P = order_space(["p", "q"], {("p", "p"), ("q", "q"), ("p", "q")})
    assert all(is_compact_finite(P, p) for p in P.points)
    assert is_compact_finite(FiniteSpace.from_matrix(["o"], [[0]]), "o")
    assert compact_catalogue("DR", 5)
    assert not compact_catalogue("DR", INF)
    assert compact_catalogue("DL", INF)
    assert compact_catalogue("DR^2", (1, 2)) and not compact_catalogue("DR^2", (1, INF))


def test_compact_basis_examples(W):
    assert scott_distance_algebraic(DR, 5, [1, 3]) == (2, 2)
    assert scott_distance_algebraic(DR, 2, [3]) == (0, 0)
    assert scott_distance_algebraic(DR, 2, []) == (INF, INF)
    sigma = scott_distance_finite(W)
    spec = AlgebraicSpec(W)
    for x in W.points:
        for m in range(1, 8):
            A = sigma.labels(m)
            assert scott_distance_algebraic(spec, x, A) == (sigma.delta(x, A),) * 2


def test_delta_P_examples():
    assert delta_P(5, [1, 2]) == 3
    assert delta_P(4, []) is INF
    assert delta_P(2, [3]) == 0


def test_spec_validation(W):
    with pytest.raises(SpaceError):
        AlgebraicSpec(CanonicalSpace("DR", 2))
    with pytest.raises(SpaceError):
        AlgebraicSpec(CanonicalSpace("DR"), bottom=1)
    with pytest.raises(SpaceError):
        AlgebraicSpec(W, bottom="a")
    with pytest.raises(SpaceError):
        AlgebraicSpec("DL", basis="grid(0)")
    assert AlgebraicSpec("DL", bottom="inf").bottom is INF
    with pytest.raises(CertificationError):
        scott_distance_algebraic(DR, INF, [1], breakpoints=False)
    with pytest.raises(ValueError):
        scott_distance_algebraic(DR, 1, [1], eps=0)


def test_colimit_examples():
    assert colimit_dL(rep_dL(5)) == 5
    assert colimit_dR(rep_dR(5)) == 5
    assert colimit_dL(plus(rep_dL(5), 2)) == 7
    assert colimit_dL(const(3, "DL")) == 3
    assert colimit_dR(const(3, "DR")) is INF


def test_subbasis_examples(W):
    assert subbasis_check(AlgebraicSpec(W)).ok
    rep = subbasis_check(AlgebraicSpec(W, basis=("a", "b")))
    assert not rep.ok and rep.witness == ("c", ("b",))
    assert subbasis_check(AlgebraicSpec(W), radii=[0]).ok


def test_power_examples(W):
    pointed = FiniteSpace.from_matrix(["z", "p"], [[0, 0], ["inf", 0]])
    assert power_sigma_check(pointed, 2).ok
    assert power_sigma_check(pointed, 1).ok
    Wb = FiniteSpace.from_matrix(
        ["z", "a", "b", "c"],
        [[0, 0, 0, 0], ["inf", 0, 1, 2], ["inf", "3/2", 0, 1], ["inf", "1/2", "3/2", 0]],
    )
    assert find_bottom(Wb) == "z"
    assert power_sigma_check(Wb, 2).ok
    with pytest.raises(SpaceError):
        power_sigma_check(W, 2)


def test_gn_distance_examples():
    X = GNSpace()
    assert X.d(Fraction(1, 2), Fraction(1, 4)) == Fraction(1, 4)
    assert X.d(Fraction(1, 2), 0) == 0
    assert X.d(0, Fraction(1, 2)) == 1
    half = Fraction(1, 2)
    chain = BallChain("geometric", centers=GNSeq(0, half, half), base=0, scale=half, ratio=half)
    assert X.chain_join(chain) == FormalBall(0, 0)
    assert X.chain_join(chain.shifted(half)) is None


def test_gn_case_study_passes():
    rep = gn_case_study()
    assert rep.ok and rep.metric and rep.chain_join and rep.scott_weight and rep.separation


@given(rationals, st.lists(rationals, min_size=1, max_size=4))
def test_DR_breakpoints_equal_the_closed_form(x, A):
    lo, hi = scott_distance_algebraic(DR, x, A)
    assert lo == hi == delta_P(x, A)


@settings(max_examples=40)
@given(st.sampled_from(["DL", "DR"]), rationals, st.lists(rationals, min_size=1, max_size=3))
def test_branch_and_bound_brackets_the_exact_value(kind, x, A):
    spec = DR if kind == "DR" else DL
    exact, _ = scott_distance_algebraic(spec, x, A)
    eps = Fraction(1, 64)
    lo, hi = scott_distance_algebraic(spec, x, A, eps=eps, breakpoints=False)
    assert lo <= exact <= hi and hi - lo <= eps
    assert sampled_formula(kind, x, A) <= exact


@given(rationals, rationals)
def test_DL_formula_on_singletons_is_the_metric(x, a):
    # on a singleton the Scott distance collapses to the point distance
    lo, hi = scott_distance_algebraic(DL, x, [a])
    assert lo == hi == d_L(x, a)


@st.composite
def catalogue(draw, carrier, depth=2):
    rep = rep_dL if carrier == "DL" else rep_dR
    if depth == 0:
        return draw(st.sampled_from([rep, lambda c: const(c, carrier)]))(draw(rationals))
    f = draw(catalogue(carrier, depth - 1))
    op = draw(st.sampled_from(["max", "min", "plus", "minus", "leaf"]))
    if op in ("max", "min"):
        g = draw(catalogue(carrier, depth - 1))
        return (wmax if op == "max" else wmin)(f, g)
    if op == "plus":
        return plus(f, draw(rationals))
    if op == "minus":
        return minus(f, draw(rationals))
    return f


@given(catalogue("DL"))
def test_colimit_dL_is_the_infimum(phi):
    assert isinstance(phi, PL)
    pts = sorted(set(phi.xs) | {Fraction(k, 4) for k in range(0, 161)})
    sampled = min(phi(t) + t for t in pts)
    assert colimit_dL(phi) <= sampled
    assert any(phi(t) + t == colimit_dL(phi) for t in phi.xs)


@given(catalogue("DR"))
def test_colimit_dR_is_the_supremum(psi):
    pts = sorted(set(psi.xs) | {Fraction(k, 4) for k in range(0, 161)})
    sampled = max(tminus(t, psi(t)) for t in pts)
    assert colimit_dR(psi) >= sampled


@settings(max_examples=25)
@given(spaces(max_points=4))
def test_compact_basis_formula_reproduces_scott_on_finite_spaces(S):
    assert subbasis_check(AlgebraicSpec(S), radii=[0, 1, INF]).witness is None
