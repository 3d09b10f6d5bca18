"""Formal balls, directed ball families, and the topologies they induce.

The poset of formal balls ``BX = X x [0, inf)`` is never materialized.
Comparisons happen per query, or over a finite radius grid built from
sums and differences of the matrix entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import _mutation
from .approach import (
    TopologySpec,
    coreflection,
    mask_of,
    members,
    scott_distance_finite,
    topology_from_closure,
)
from .costs import INF, ZERO, ExtValue, add, ext, fmt, tminus
from .spaces import (
    CanonicalSeq,
    FiniteNet,
    FiniteSpace,
    PowerSeq,
    SpaceError,
    is_forward_cauchy,
    yoneda_limits,
)
from .weights import WeightFn

__all__ = [
    "FormalBall",
    "BallChain",
    "NotDirected",
    "ball_leq",
    "bplus_contains",
    "bplus_is_directed",
    "is_flat_by_bplus",
    "radius_grid",
    "chain_is_directed",
    "chain_join",
    "is_upper_bound",
    "verify_join",
    "open_ball_topology",
    "c_scott_topology",
    "d_scott_topology",
    "generalized_scott_topology",
    "topologies",
    "SReport",
    "check_condition_S_instance",
]


class NotDirected(ValueError):
    """The presented ball family is not directed."""


@dataclass(frozen=True)
class FormalBall:
    center: object
    radius: Fraction

    def __post_init__(self) -> None:
        r = ext(self.radius)
        if r is INF:
            raise ValueError("formal balls have finite radius")
        object.__setattr__(self, "radius", r)

    def __str__(self) -> str:
        return f"({self.center}, {fmt(self.radius)})"


def _d(space, x, y) -> ExtValue:
    return space.d(x, y)


def ball_leq(b1: FormalBall, b2: FormalBall, space) -> bool:
    """``(x, r) <= (y, s)  iff  r >= s + d(x, y)``."""
    return b1.radius >= add(b2.radius, _d(space, b1.center, b2.center))


def bplus_contains(phi: WeightFn, b: FormalBall) -> bool:
    """``(x, r) in B+phi  iff  phi(x) < r``."""
    v = phi(b.center)
    if _mutation.active("nonstrict_bplus"):
        return v <= b.radius
    return v < b.radius


def _gap(values: Iterable[ExtValue]) -> Fraction:
    fin = sorted({v for v in values if v is not INF})
    gaps = [b - a for a, b in zip(fin, fin[1:])]
    return min(gaps) / 3 if gaps else Fraction(1)


def bplus_is_directed(phi: WeightFn) -> bool:
    """Directedness of ``B+phi`` on radii just above each ``phi(x)``.

    Radii ``phi(x) + eta`` with ``eta`` below a third of the smallest gap
    between relevant sums are the hardest pairs; larger radii only help.
    Upper bounds ``(z, t)`` use the largest admissible ``t``.
    """
    S = phi.space
    D, v = S.dist, phi.values
    n = len(S)
    sums = {add(v[z], D[x][z]) for x in range(n) for z in range(n)} | set(v)
    eta = _gap(sums)
    balls = []
    for x in range(n):
        if v[x] is INF:
            continue
        for r in (v[x], v[x] + eta):
            b = FormalBall(S.points[x], r)
            if bplus_contains(phi, b):
                balls.append(b)
    if not balls:
        return False
    for b1, b2 in itertools.combinations_with_replacement(balls, 2):
        x, y = S.index(b1.center), S.index(b2.center)
        ok = False
        for z in range(n):
            if D[x][z] is INF or D[y][z] is INF:
                continue
            t = min(b1.radius - D[x][z], b2.radius - D[y][z])
            if t >= 0 and bplus_contains(phi, FormalBall(S.points[z], t)):
                ok = True
                break
        if not ok:
            return False
    return True


def is_flat_by_bplus(phi: WeightFn) -> bool:
    """Flatness as ``inf phi = 0`` plus directedness of ``B+phi``.

    ``inf phi = 0`` is read off ``B+phi`` itself: it must contain a ball of
    radius ``rho`` for the smallest positive value ``rho`` of ``phi``.
    """
    S = phi.space
    pos = sorted(a for a in phi.values if a is not INF and a > 0)
    rho = pos[0] if pos else Fraction(1)
    if not any(bplus_contains(phi, FormalBall(p, rho)) for p in S.points):
        return False
    return bplus_is_directed(phi)


def radius_grid(space: FiniteSpace, extra: Iterable[ExtValue] = ()) -> list[Fraction]:
    """0, the finite matrix entries, and their pairwise sums and truncated differences."""
    base = {v for row in space.dist for v in row if v is not INF} | {ZERO}
    base |= {ext(e) for e in extra if e is not INF}
    out = set(base)
    for a in base:
        for b in base:
            out.add(a + b)
            out.add(tminus(a, b))
    return sorted(out)


# ---------------------------------------------------------------------------
# ball families


@dataclass(frozen=True)
class BallChain:
    """A finitely presented directed family in ``BX``.

    ``kind="finite"``: the listed ``balls``.
    ``kind="geometric"``: ``(x_n, base + scale * ratio**n)``.
    ``kind="harmonic"``: ``(x_n, base + scale / (n + 1))``.
    For the infinite kinds ``centers`` is a net descriptor (``at(n)``).
    """

    kind: str
    balls: tuple[FormalBall, ...] = ()
    centers: object = None
    base: Fraction = ZERO
    scale: Fraction = ZERO
    ratio: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if self.kind not in ("finite", "geometric", "harmonic"):
            raise ValueError(f"unknown chain kind {self.kind!r}")
        object.__setattr__(self, "balls", tuple(self.balls))
        for name in ("base", "scale", "ratio"):
            object.__setattr__(self, name, ext(getattr(self, name)))
        if self.kind == "finite" and not self.balls:
            raise NotDirected("a directed family is nonempty")
        if self.kind != "finite" and self.centers is None:
            raise ValueError("infinite chains need a center descriptor")
        if self.kind == "geometric" and not (0 < self.ratio < 1):
            raise ValueError("ratio must lie strictly between 0 and 1")

    def radius(self, n: int) -> Fraction:
        if self.kind == "geometric":
            return self.base + self.scale * self.ratio**n
        return self.base + self.scale / (n + 1)

    def at(self, n: int) -> FormalBall:
        if self.kind == "finite":
            return self.balls[n]
        return FormalBall(self.centers.at(n), self.radius(n))

    def shifted(self, s: ExtValue) -> "BallChain":
        s = ext(s)
        if self.kind == "finite":
            return replace(self, balls=tuple(FormalBall(b.center, b.radius + s) for b in self.balls))
        return replace(self, base=self.base + s)


def _first_index(net: FiniteNet, label: str, start: int) -> int:
    """Smallest index ``m >= start`` with ``x_m = label`` (label in the cycle)."""
    p = len(net.prefix)
    m = max(start, p)
    for k in range(len(net.cycle)):
        if net.at(m + k) == label:
            return m + k
    raise AssertionError("label not in cycle")


def chain_is_directed(chain: BallChain, space, horizon: int = 64) -> bool:
    """Is the presented family directed?

    Finite lists: pairwise upper bounds inside the list.  Infinite chains
    are checked as increasing chains, which is exact for eventually cyclic
    centers in a finite space and for constant centers; other canonical
    centers are checked on the first ``horizon`` terms.
    """
    if hasattr(space, "chain_is_directed"):
        return space.chain_is_directed(chain)
    if chain.kind == "finite":
        bs = chain.balls
        return all(
            any(ball_leq(a, c, space) and ball_leq(b, c, space) for c in bs) for a in bs for b in bs
        )
    if chain.scale < 0:
        return False
    cen = chain.centers
    if isinstance(cen, FiniteNet):
        if cen.space != space:
            raise SpaceError("chain centers live on a different space")
        if not is_forward_cauchy(cen):
            return False
        D = space.dist
        p = len(cen.prefix)
        for n in range(p):
            xn = space.index(cen.at(n))
            for m in range(n + 1, p):
                if chain.radius(n) < add(chain.radius(m), D[xn][space.index(cen.at(m))]):
                    return False
            for u in set(cen.cycle):
                m = _first_index(cen, u, n + 1)
                if chain.radius(n) < add(chain.radius(m), D[xn][space.index(u)]):
                    return False
        return True
    if isinstance(cen, (CanonicalSeq, PowerSeq)):
        if isinstance(cen, CanonicalSeq) and cen.form == "constant":
            return True
        for n in range(horizon):
            for m in range(n + 1, horizon):
                if not ball_leq(chain.at(n), chain.at(m), space):
                    return False
        return True
    raise TypeError(f"unsupported center descriptor {cen!r}")


def is_upper_bound(chain: BallChain, ball: FormalBall, space) -> bool:
    """Exact for finite lists and for eventually cyclic centers in a finite space."""
    if hasattr(space, "is_upper_bound"):
        return space.is_upper_bound(chain, ball)
    if chain.kind == "finite":
        return all(ball_leq(b, ball, space) for b in chain.balls)
    cen = chain.centers
    if not isinstance(cen, FiniteNet):
        raise TypeError("exact upper-bound test needs finite-net centers")
    for n in range(len(cen.prefix)):
        if not ball_leq(chain.at(n), ball, space):
            return False
    # radii decrease to ``base`` and never reach it unless scale = 0
    return all(chain.base >= add(ball.radius, space.d(u, ball.center)) for u in set(cen.cycle))


def chain_join(chain: BallChain, space, verify: bool = True) -> FormalBall | None:
    """Join of a directed ball family, or ``None`` when it has none.

    Infinite chains: ``(Yoneda limit of the centers, inf of the radii)``.
    On finite spaces the result is also checked to be the least upper
    bound among all balls with radii on :func:`radius_grid`.
    """
    if hasattr(space, "chain_join"):
        return space.chain_join(chain)
    if not chain_is_directed(chain, space):
        raise NotDirected("ball family is not directed")
    if chain.kind == "finite":
        tops = [c for c in chain.balls if all(ball_leq(b, c, space) for b in chain.balls)]
        join = tops[0]
    else:
        cen = chain.centers
        if isinstance(cen, FiniteNet):
            lims = yoneda_limits(cen)
            center = next(p for p in space.points if p in lims)
        else:
            center = yoneda_limits(cen, space)
        join = FormalBall(center, chain.base)
    if verify and isinstance(space, FiniteSpace):
        if not verify_join(chain, join, space):
            raise AssertionError(f"{join} is not the least upper bound of the chain")
    return join


def verify_join(chain: BallChain, join: FormalBall, space: FiniteSpace) -> bool:
    """``join`` is an upper bound below every upper bound ``(y, s)`` with ``s`` on the grid.

    For fixed ``y`` both "``(y, s)`` is an upper bound" and "``join`` is below
    ``(y, s)``" only get easier as ``s`` shrinks, so the largest admissible
    grid radius is the only one to test; it is found by bisection.
    """
    if not is_upper_bound(chain, join, space):
        return False
    grid = radius_grid(space, [join.radius, chain.base] + [b.radius for b in chain.balls])
    for y in space.points:
        lo, hi = 0, len(grid)  # grid[:lo] are upper bounds, grid[hi:] are not
        while lo < hi:
            mid = (lo + hi) // 2
            if is_upper_bound(chain, FormalBall(y, grid[mid]), space):
                lo = mid + 1
            else:
                hi = mid
        if lo and not ball_leq(join, FormalBall(y, grid[lo - 1]), space):
            return False
    return True


# ---------------------------------------------------------------------------
# topologies on a finite space


def _cauchy_cycle_sets(space: FiniteSpace) -> list[FiniteNet]:
    """One constant-prefix net per nonempty forward Cauchy cycle set."""
    n = len(space)
    nets = []
    for m in range(1, 1 << n):
        net = FiniteNet(space, (), tuple(space.points[i] for i in members(m)))
        if is_forward_cauchy(net):
            nets.append(net)
    return nets


def _ball_mask(space: FiniteSpace, x: int, r: Fraction) -> int:
    return mask_of(y for y in range(len(space)) if space.dist[x][y] < r)


def _open_radii(space: FiniteSpace) -> list[Fraction]:
    fin = sorted({v for row in space.dist for v in row if v is not INF and v > 0})
    top = (fin[-1] if fin else ZERO) + 1
    return sorted(set(fin) | {top, Fraction(1) if not fin else fin[0]})


def open_ball_topology(space: FiniteSpace) -> TopologySpec:
    """Topology generated by the balls ``B(x, r) = {y : d(x, y) < r}``, ``r > 0``."""
    n = len(space)
    full = (1 << n) - 1
    basis = {_ball_mask(space, x, r) for x in range(n) for r in _open_radii(space)}
    opens = {0, full}
    # close under finite intersections, then arbitrary unions
    inter = set(basis) | {full}
    changed = True
    while changed:
        changed = False
        for a in list(inter):
            for b in list(inter):
                if a & b not in inter:
                    inter.add(a & b)
                    changed = True
    unions = {0}
    for b in inter:
        unions |= {u | b for u in unions}
    opens |= unions
    return TopologySpec(space.points, frozenset(full ^ o for o in opens))


def c_scott_topology(space: FiniteSpace) -> TopologySpec:
    """Coreflection of the Scott distance."""
    return coreflection(scott_distance_finite(space, verify=False))


def generalized_scott_topology(space: FiniteSpace) -> TopologySpec:
    """``U`` is open iff every forward Cauchy net with a Yoneda limit in ``U``
    eventually has all its points' ``eps``-balls inside ``U``.

    Nets range over eventually cyclic descriptors; the eventual behaviour
    only depends on the cycle set, so one net per cycle set is enough.
    """
    n = len(space)
    full = (1 << n) - 1
    eps_grid = [r for r in radius_grid(space) if r > 0] or [Fraction(1)]
    nets = []
    for net in _cauchy_cycle_sets(space):
        lims = mask_of(space.index(p) for p in yoneda_limits(net))
        cyc = [space.index(p) for p in set(net.cycle)]
        reaches = set()
        for eps in eps_grid:
            reach = 0
            for u in cyc:
                reach |= _ball_mask(space, u, eps)
            reaches.add(reach)
        nets.append((lims, reaches))
    opens = set()
    for U in range(full + 1):
        if all(not (lims & U) or any(r & U == r for r in reaches) for lims, reaches in nets):
            opens.add(U)
    return TopologySpec(space.points, frozenset(full ^ o for o in opens))


def d_scott_topology(space: FiniteSpace, cross_check: bool = True) -> TopologySpec:
    """Trace on ``X`` of the Scott topology of formal balls, via ``x -> (x, 0)``.

    The Scott closure of ``eta(A)`` is ``{(x, r) : r >= d(x, a) for some a in A}``
    on a finite space; ``cross_check`` confirms that this lower set is
    closed under joins of the chains ``(x_n, r + 1/(n+1))`` over forward
    Cauchy nets, for every threshold radius ``r``; joins come from
    :func:`chain_join`, which shifts the base-0 join by ``r``.
    """
    n = len(space)
    D = space.dist
    # membership of (x, r) in a lower set only changes at matrix entries
    radii = sorted({v for row in D for v in row if v is not INF})
    checks = []
    if cross_check:
        for net in _cauchy_cycle_sets(space):
            j = chain_join(BallChain("harmonic", centers=net, scale=Fraction(1)), space, verify=False)
            checks.append(([space.index(u) for u in set(net.cycle)], space.index(j.center)))
    cl = []
    for A in range(1 << n):
        pts = list(members(A))

        def in_lower(x: int, r: Fraction) -> bool:
            return any(D[x][a] <= r for a in pts)

        cl.append(mask_of(x for x in range(n) if in_lower(x, ZERO)))
        for cyc, center in checks:
            for r in radii:
                # members (u, r + 1/(n+1)) lie in the lower set once (u, r) does
                if all(in_lower(u, r) for u in cyc):
                    j = FormalBall(space.points[center], r)
                    if not in_lower(center, r):
                        raise AssertionError(
                            f"lower set of {[space.points[a] for a in pts]} not closed under join {j}"
                        )
    return topology_from_closure(space.points, cl)


def topologies(space: FiniteSpace) -> dict[str, TopologySpec]:
    return {
        "openBall": open_ball_topology(space),
        "cScott": c_scott_topology(space),
        "dScott": d_scott_topology(space),
        "genScott": generalized_scott_topology(space),
    }


# ---------------------------------------------------------------------------
# condition (S)


@dataclass(frozen=True)
class SReport:
    ok: bool
    rows: tuple[tuple[int, Fraction, bool, bool], ...] = ()  # (chain index, shift, join?, shifted join?)
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _join_or_none(chain: BallChain, space) -> FormalBall | None:
    try:
        return chain_join(chain, space)
    except NotDirected:
        raise
    except SpaceError:
        return None


def check_condition_S_instance(space, chains: Sequence[BallChain], shifts: Sequence[ExtValue]) -> SReport:
    """For each chain and shift ``s``: a join exists iff the ``s``-shifted family has one.

    When both exist the shifted join must be the original join moved by ``s``.
    """
    rows = []
    for i, chain in enumerate(chains):
        if not chain_is_directed(chain, space):
            raise NotDirected(f"chain {i} is not directed")
        j0 = _join_or_none(chain, space)
        for s in shifts:
            s = ext(s)
            js = _join_or_none(chain.shifted(s), space)
            rows.append((i, s, j0 is not None, js is not None))
            if (j0 is None) != (js is None):
                return SReport(False, tuple(rows), (i, s, str(j0), str(js)))
            if j0 is not None:
                moved = FormalBall(j0.center, j0.radius + s)
                if not (ball_leq(moved, js, space) and ball_leq(js, moved, space)):
                    return SReport(False, tuple(rows), (i, s, str(j0), str(js)))
    return SReport(True, tuple(rows))
