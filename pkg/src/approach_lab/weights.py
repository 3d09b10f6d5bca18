"""Weights, coweights and the colimit calculus on finite spaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .costs import INF, ZERO, ExtValue, add, ext, fmt, tminus
from .spaces import FiniteNet, FiniteSpace, SpaceError, is_forward_cauchy, zero_clusters

__all__ = [
    "WeightError",
    "WeightFn",
    "CoweightFn",
    "PointMap",
    "AdjunctionReport",
    "is_weight",
    "is_coweight",
    "weight",
    "coweight",
    "bar_distance",
    "yoneda_embed",
    "tensor",
    "is_flat",
    "is_flat_by_coweights",
    "probe_coweights",
    "is_cauchy",
    "residual_coweight",
    "search_cauchy_witness",
    "colimits",
    "net_weight",
    "flat_weight_representatives",
    "is_scott_weight",
    "scott_probes",
    "kan_extend",
    "precompose",
    "check_adjunction",
    "closure_weight",
    "pointwise_min",
    "pointwise_max",
    "shift",
    "shift_down",
    "constant",
]


class WeightError(ValueError):
    """Input is not a weight, is defined on the wrong space, or misses a point."""


@dataclass(frozen=True)
class _Fn:
    space: FiniteSpace
    values: tuple[ExtValue, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.space):
            raise WeightError(f"need {len(self.space)} values, got {len(self.values)}")

    def __call__(self, label: str) -> ExtValue:
        return self.values[self.space.index(label)]

    def as_dict(self) -> dict[str, ExtValue]:
        return dict(zip(self.space.points, self.values))

    def __str__(self) -> str:
        body = ", ".join(f"{p}:{fmt(v)}" for p, v in zip(self.space.points, self.values))
        return f"{type(self).__name__}({body})"


class WeightFn(_Fn):
    """A map ``phi`` with ``phi(x) <= phi(y) + d(x, y)`` (not re-checked here)."""


class CoweightFn(_Fn):
    """A map ``psi`` with ``psi(y) <= psi(x) + d(x, y)`` (not re-checked here)."""


Values = Union[Mapping[str, object], Sequence[object]]


def _as_tuple(space: FiniteSpace, values: Values) -> tuple[ExtValue, ...]:
    if isinstance(values, _Fn):
        if values.space != space:
            raise WeightError("function lives on a different space")
        return values.values
    if isinstance(values, Mapping):
        missing = [p for p in space.points if p not in values]
        if missing:
            raise WeightError(f"no value for point(s) {missing}")
        extra = [k for k in values if k not in space._index]
        if extra:
            raise WeightError(f"values given for unknown point(s) {extra}")
        return tuple(ext(values[p]) for p in space.points)
    vals = tuple(ext(v) for v in values)
    if len(vals) != len(space):
        raise WeightError(f"need {len(space)} values, got {len(vals)}")
    return vals


def _weight_ok(D, v) -> bool:
    n = len(v)
    for x in range(n):
        vx = v[x]
        if vx == ZERO:
            continue
        Dx = D[x]
        for y in range(n):
            if vx > add(v[y], Dx[y]):
                return False
    return True


def _coweight_ok(D, v) -> bool:
    n = len(v)
    for y in range(n):
        vy = v[y]
        if vy == ZERO:
            continue
        for x in range(n):
            if vy > add(v[x], D[x][y]):
                return False
    return True


def is_weight(space: FiniteSpace, values: Values) -> bool:
    return _weight_ok(space.dist, _as_tuple(space, values))


def is_coweight(space: FiniteSpace, values: Values) -> bool:
    return _coweight_ok(space.dist, _as_tuple(space, values))


def weight(space: FiniteSpace, values: Values) -> WeightFn:
    """Build a :class:`WeightFn`, refusing maps that break the weight law."""
    v = _as_tuple(space, values)
    if not _weight_ok(space.dist, v):
        raise WeightError(f"not a weight on {list(space.points)}: {[fmt(x) for x in v]}")
    return WeightFn(space, v)


def coweight(space: FiniteSpace, values: Values) -> CoweightFn:
    v = _as_tuple(space, values)
    if not _coweight_ok(space.dist, v):
        raise WeightError(f"not a coweight on {list(space.points)}: {[fmt(x) for x in v]}")
    return CoweightFn(space, v)


def _same_space(a: _Fn, b: _Fn) -> None:
    if a.space != b.space:
        raise WeightError("functions live on different spaces")


def _require_weight(phi: WeightFn) -> None:
    if not isinstance(phi, WeightFn):
        raise WeightError(f"expected a WeightFn, got {type(phi).__name__}")
    if not _weight_ok(phi.space.dist, phi.values):
        raise WeightError(f"{phi} is not a weight")


def bar_distance(phi: _Fn, psi: _Fn) -> ExtValue:
    """``sup_x d_L(phi(x), psi(x))``: the least ``r`` with ``psi <= phi + r``."""
    _same_space(phi, psi)
    return max(tminus(b, a) for a, b in zip(phi.values, psi.values))


def yoneda_embed(space: FiniteSpace, x: str) -> WeightFn:
    j = space.index(x)
    return WeightFn(space, tuple(row[j] for row in space.dist))


def tensor(phi: WeightFn, psi: CoweightFn) -> ExtValue:
    _same_space(phi, psi)
    return min(add(a, b) for a, b in zip(phi.values, psi.values))


# ---------------------------------------------------------------------------
# flatness


def is_flat(phi: WeightFn) -> bool:
    """Flatness via the pairwise criterion on a finite space.

    ``phi`` is flat iff it attains 0 and every pair ``x, y`` admits a ``z``
    with ``phi(z) + d(x,z) <= phi(x)`` and ``phi(z) + d(y,z) <= phi(y)``.
    On a finite space this is equivalent to ``B+phi`` being directed;
    :func:`is_flat_by_coweights` is the independent cross-check.
    """
    _require_weight(phi)
    v, D = phi.values, phi.space.dist
    n = len(v)
    if ZERO not in v:
        return False
    # below[x] = points z that can serve as an upper ball for x
    below = [
        frozenset(z for z in range(n) if add(v[z], D[x][z]) <= v[x]) for x in range(n)
    ]
    return all(below[x] & below[y] for x in range(n) for y in range(x + 1, n))


def probe_coweights(phi: WeightFn, radii: Iterable[ExtValue] | None = None) -> list[CoweightFn]:
    """A finite family of coweights for the definitional flatness test.

    Contains the constants 0 and inf and every ``r + d(x, -)`` with ``r``
    drawn from ``radii`` (default: 0 and the finite values of ``phi``).
    """
    S = phi.space
    n = len(S)
    if radii is None:
        radii = {ZERO} | {a for a in phi.values if a is not INF}
    radii = sorted(set(radii))
    fam = [CoweightFn(S, (ZERO,) * n), CoweightFn(S, (INF,) * n)]
    for x in range(n):
        for r in radii:
            fam.append(CoweightFn(S, tuple(add(r, S.dist[x][y]) for y in range(n))))
    return fam


def is_flat_by_coweights(phi: WeightFn, coweights: Sequence[CoweightFn] | None = None) -> bool:
    """Definitional flatness restricted to a finite coweight family.

    ``inf phi = 0`` and ``phi (x) max(psi1, psi2) = max(phi (x) psi1, phi (x) psi2)``
    for every pair drawn from ``coweights``.
    """
    _require_weight(phi)
    if min(phi.values) != ZERO:
        return False
    fam = list(probe_coweights(phi) if coweights is None else coweights)
    tens = [tensor(phi, c) for c in fam]
    for i, j in itertools.combinations(range(len(fam)), 2):
        joined = CoweightFn(phi.space, tuple(max(a, b) for a, b in zip(fam[i].values, fam[j].values)))
        if tensor(phi, joined) != max(tens[i], tens[j]):
            return False
    return True


# ---------------------------------------------------------------------------
# Cauchy weights


def residual_coweight(phi: WeightFn) -> CoweightFn:
    """The least ``psi`` with ``phi(x) + psi(y) >= d(x, y)``: ``psi(y) = sup_x d(x,y) (-) phi(x)``."""
    D, v = phi.space.dist, phi.values
    n = len(v)
    return CoweightFn(phi.space, tuple(max(tminus(D[x][y], v[x]) for x in range(n)) for y in range(n)))


def _cauchy_pair_ok(phi: WeightFn, psi_vals: Sequence[ExtValue]) -> bool:
    D, v = phi.space.dist, phi.values
    n = len(v)
    if min(add(a, b) for a, b in zip(v, psi_vals)) != ZERO:
        return False
    return all(add(v[x], psi_vals[y]) >= D[x][y] for x in range(n) for y in range(n))


def is_cauchy(phi: WeightFn) -> bool:
    """Is there a coweight ``psi`` with ``phi (x) psi = 0`` and ``phi(x) + psi(y) >= d(x,y)``?

    Only the residual coweight needs testing: it is a coweight, it is the
    pointwise least solution of the second condition, and the tensor is
    monotone in ``psi``.  :func:`search_cauchy_witness` certifies negatives.
    """
    _require_weight(phi)
    psi = residual_coweight(phi)
    if not _coweight_ok(phi.space.dist, psi.values):
        raise AssertionError(f"residual of {phi} is not a coweight")
    return _cauchy_pair_ok(phi, psi.values)


def cauchy_grid(phi: WeightFn) -> list[ExtValue]:
    """Matrix entries, weight values, their pairwise sums and truncated differences, plus 0 and inf."""
    base = {ZERO, INF} | set(phi.values) | {v for row in phi.space.dist for v in row}
    out = set(base)
    for a in base:
        for b in base:
            out.add(add(a, b))
            out.add(tminus(a, b))
    return sorted(out)


def search_cauchy_witness(phi: WeightFn, grid: Sequence[ExtValue] | None = None) -> CoweightFn | None:
    """Exhaustive backtracking search for a Cauchy witness with values in ``grid``."""
    _require_weight(phi)
    S = phi.space
    D, v = S.dist, phi.values
    n = len(S)
    grid = cauchy_grid(phi) if grid is None else sorted(set(grid))
    chosen: list[ExtValue] = []

    def extend(k: int) -> CoweightFn | None:
        if k == n:
            if _cauchy_pair_ok(phi, chosen):
                return CoweightFn(S, tuple(chosen))
            return None
        for g in grid:
            # coweight law against earlier points, both directions
            if any(g > add(chosen[x], D[x][k]) or chosen[x] > add(g, D[k][x]) for x in range(k)):
                continue
            if any(add(v[x], g) < D[x][k] for x in range(n)):
                continue
            if any(add(v[k], chosen[y]) < D[k][y] for y in range(k)):
                continue
            chosen.append(g)
            found = extend(k + 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    return extend(0)


# ---------------------------------------------------------------------------
# colimits, nets, Scott weights


def colimits(phi: WeightFn) -> frozenset[str]:
    """Points ``a`` with ``d_bar(phi, y(y)) = d(a, y)`` for every ``y``."""
    _require_weight(phi)
    S = phi.space
    D, v = S.dist, phi.values
    n = len(S)
    target = tuple(max(tminus(D[x][y], v[x]) for x in range(n)) for y in range(n))
    return frozenset(S.points[a] for a in range(n) if D[a] == target)


def net_weight(net: FiniteNet) -> WeightFn:
    """``inf_i sup_{j>=i} d(-, x_j)`` for an eventually cyclic forward Cauchy net."""
    if not is_forward_cauchy(net):
        raise SpaceError("net is not forward Cauchy")
    S = net.space
    cyc = [S.index(p) for p in set(net.cycle)]
    return WeightFn(S, tuple(max(S.dist[x][u] for u in cyc) for x in range(len(S))))


def flat_weight_representatives(space: FiniteSpace) -> list[WeightFn]:
    """One representable weight per zero-distance cluster.

    On a finite space every flat weight is representable (the cyclic tail
    of a forward Cauchy net sits inside one cluster), so this list covers
    every flat weight up to pointwise equality.
    """
    return [yoneda_embed(space, space.points[min(c)]) for c in zero_clusters(space)]


def scott_probes(flat: Sequence[WeightFn]) -> list[tuple[tuple[ExtValue, ...], tuple[int, ...]]]:
    """Flat weights paired with the indices of their colimits, computed once."""
    out = []
    for psi in flat:
        S = psi.space
        out.append((psi.values, tuple(S.index(p) for p in colimits(psi))))
    return out


def is_scott_weight(phi: WeightFn, flat: Sequence[WeightFn] | None = None, probes=None) -> bool:
    """``d_bar(psi, phi) >= phi(x)`` for every flat ``psi`` and colimit ``x`` of ``psi``.

    ``probes`` (from :func:`scott_probes`) skips recomputing the colimits
    when many weights are tested on one space.
    """
    _require_weight(phi)
    if probes is None:
        probes = scott_probes(flat_weight_representatives(phi.space) if flat is None else flat)
    v = phi.values
    for pv, cols in probes:
        dist = max(tminus(b, a) for a, b in zip(pv, v))
        for x in cols:
            if dist < v[x]:
                return False
    return True


# ---------------------------------------------------------------------------
# maps, Kan extension, adjunctions


@dataclass(frozen=True)
class PointMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.assignment) != len(self.source):
            raise SpaceError("point map must be total on its source")
        if any(not (0 <= j < len(self.target)) for j in self.assignment):
            raise SpaceError("point map sends a point outside its target")

    @classmethod
    def from_mapping(cls, source: FiniteSpace, target: FiniteSpace, f: Mapping[str, str]) -> "PointMap":
        missing = [p for p in source.points if p not in f]
        if missing:
            raise SpaceError(f"point map undefined on {missing}")
        return cls(source, target, tuple(target.index(f[p]) for p in source.points))

    @classmethod
    def identity(cls, space: FiniteSpace) -> "PointMap":
        return cls(space, space, tuple(range(len(space))))

    def __call__(self, label: str) -> str:
        return self.target.points[self.assignment[self.source.index(label)]]

    def as_dict(self) -> dict[str, str]:
        return {p: self.target.points[j] for p, j in zip(self.source.points, self.assignment)}

    def non_expansive_witness(self) -> tuple[str, str] | None:
        DX, DY, f = self.source.dist, self.target.dist, self.assignment
        n = len(f)
        for x in range(n):
            for y in range(n):
                if DX[x][y] < DY[f[x]][f[y]]:
                    return (self.source.points[x], self.source.points[y])
        return None

    def is_non_expansive(self) -> bool:
        return self.non_expansive_witness() is None


def kan_extend(f: PointMap, phi: WeightFn) -> WeightFn:
    """``f_bar(phi)(y) = inf_x phi(x) + d_Y(y, f(x))``."""
    if phi.space != f.source:
        raise WeightError("weight is not on the source of the map")
    DY = f.target.dist
    m = len(f.target)
    return WeightFn(
        f.target,
        tuple(min(add(phi.values[x], DY[y][fx]) for x, fx in enumerate(f.assignment)) for y in range(m)),
    )


def precompose(xi: _Fn, f: PointMap) -> _Fn:
    """``xi o f`` as a (co)weight on the source of ``f``."""
    if xi.space != f.target:
        raise WeightError("function is not on the target of the map")
    return type(xi)(f.source, tuple(xi.values[j] for j in f.assignment))


@dataclass(frozen=True)
class AdjunctionReport:
    ok: bool
    witness: tuple[str, str] | None = None


def check_adjunction(f: PointMap, g: PointMap) -> AdjunctionReport:
    """``f -| g`` iff ``d_Y(f(x), y) = d_X(x, g(y))`` for all ``x, y``."""
    if f.source != g.target or f.target != g.source:
        raise SpaceError("maps do not go back and forth between the same spaces")
    for m, name in ((f, "f"), (g, "g")):
        w = m.non_expansive_witness()
        if w is not None:
            raise WeightError(f"{name} is not non-expansive at {w}")
    X, Y = f.source, f.target
    for x in range(len(X)):
        for y in range(len(Y)):
            if Y.dist[f.assignment[x]][y] != X.dist[x][g.assignment[y]]:
                return AdjunctionReport(False, (X.points[x], Y.points[y]))
    return AdjunctionReport(True)


# ---------------------------------------------------------------------------
# small constructors


def closure_weight(space: FiniteSpace, values: Values) -> WeightFn:
    """The largest weight below ``values``: ``x -> min_y values(y) + d(x, y)``."""
    v = _as_tuple(space, values)
    D = space.dist
    n = len(v)
    return WeightFn(space, tuple(min(add(v[y], D[x][y]) for y in range(n)) for x in range(n)))


def pointwise_min(a: WeightFn, b: WeightFn) -> WeightFn:
    _same_space(a, b)
    return WeightFn(a.space, tuple(min(p, q) for p, q in zip(a.values, b.values)))


def pointwise_max(a: WeightFn, b: WeightFn) -> WeightFn:
    _same_space(a, b)
    return WeightFn(a.space, tuple(max(p, q) for p, q in zip(a.values, b.values)))


def shift(phi: WeightFn, r: ExtValue) -> WeightFn:
    return WeightFn(phi.space, tuple(add(v, r) for v in phi.values))


def shift_down(phi: WeightFn, r: ExtValue) -> WeightFn:
    return WeightFn(phi.space, tuple(tminus(v, r) for v in phi.values))


def constant(space: FiniteSpace, r: object) -> WeightFn:
    return WeightFn(space, (ext(r),) * len(space))
