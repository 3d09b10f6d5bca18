"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from approach_lab.costs import INF, add
from approach_lab.spaces import FiniteSpace


GRID = [Fraction(k, 3) for k in range(10)] + [Fraction(1, 2), Fraction(5, 4)]


def shortest_paths(n, rows):
    """Plain Floyd-Warshall on the extended half-line; kept apart from the library's repair."""
    rows = [list(r) for r in rows]
    for i in range(n):
        rows[i][i] = Fraction(0)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = add(rows[i][k], rows[k][j])
                if via < rows[i][j]:
                    rows[i][j] = via
    return rows


@st.composite
def spaces(draw, min_points=1, max_points=4, inf_weight=2):
    n = draw(st.integers(min_points, max_points))
    value = st.one_of(st.sampled_from(GRID), st.just(INF)) if inf_weight else st.sampled_from(GRID)
    raw = [[draw(value) for _ in range(n)] for _ in range(n)]
    labels = [chr(ord("a") + i) for i in range(n)]
    return FiniteSpace.from_matrix(labels, shortest_paths(n, raw))


@st.composite
def spaces_with_weight(draw, max_points=4):
    from approach_lab.weights import closure_weight

    S = draw(spaces(max_points=max_points))
    vals = [draw(st.one_of(st.sampled_from(GRID), st.just(INF))) for _ in S.points]
    return S, closure_weight(S, dict(zip(S.points, vals)))
