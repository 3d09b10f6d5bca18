"""Compact elements, the compact-basis formula for the Scott distance, and
one space on ``[0, 1]`` where c-Scott and d-Scott closed sets differ.

The compact-basis formula is

    sigma(x, A) = sup_{b compact} ( inf_{a in A} d(b, a) (-) d(b, x) ).

On finite carriers it is evaluated by enumeration.  On ``[0, inf]`` with
``d_L`` or ``d_R`` the summand is piecewise linear in ``b``; it is
evaluated exactly at its kinks, or bracketed by a branch-and-bound over a
dyadic subdivision when the kink shortcut is switched off.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .approach import (
    is_regular_function,
    members,
    product_table,
    scott_distance_finite,
)
from .balls import BallChain, FormalBall, NotDirected, chain_join
from .costs import INF, ZERO, ExtValue, add, d_L, d_R, ext, fmt, tminus
from .spaces import CanonicalSpace, FiniteNet, FiniteSpace, SpaceError, is_forward_cauchy, product, yoneda_limits

__all__ = [
    "CertificationError",
    "is_compact_finite",
    "compact_catalogue",
    "AlgebraicSpec",
    "scott_distance_algebraic",
    "compact_basis_finite",
    "delta_P",
    "PL",
    "rep_dL",
    "rep_dR",
    "const",
    "wmax",
    "wmin",
    "plus",
    "minus",
    "colimit_dL",
    "colimit_dR",
    "SubbasisReport",
    "subbasis_check",
    "PowerReport",
    "power_sigma_check",
    "GNSeq",
    "GNSpace",
    "GNReport",
    "gn_case_study",
]


class CertificationError(ArithmeticError):
    """The enumerator cannot bound the remainder of the sup."""


# ---------------------------------------------------------------------------
# compactness


def is_compact_finite(space: FiniteSpace, a: str, max_cycle: int = 3) -> bool:
    """``d(a, x) = inf_i sup_{j>=i} d(a, x_j)`` for every eventually cyclic
    forward Cauchy net with cycle length ``<= max_cycle`` and Yoneda limit ``x``.

    Prefixes do not change tails, so only cycles are enumerated.
    """
    ia = space.index(a)
    D = space.dist
    for k in range(1, max_cycle + 1):
        for cyc in itertools.product(space.points, repeat=k):
            net = FiniteNet(space, (), cyc)
            if not is_forward_cauchy(net):
                continue
            tail = max(D[ia][space.index(u)] for u in cyc)
            for x in yoneda_limits(net):
                if D[ia][space.index(x)] != tail:
                    return False
    return True


def compact_catalogue(c: CanonicalSpace | str, v) -> bool:
    """Compact elements of the canonical carriers.

    Every element of ``d_L`` is compact; for ``d_R`` all but ``inf``.  In a
    finite power a point is compact iff every coordinate is.
    """
    if isinstance(c, str):
        c = CanonicalSpace.parse(c)
    if c.power is None:
        v = ext(v)
        return c.kind == "DL" or v is not INF
    coords = tuple(ext(t) for t in v)
    if len(coords) != c.power:
        raise SpaceError(f"{c.name} points need {c.power} coordinates")
    return all(compact_catalogue(CanonicalSpace(c.kind), t) for t in coords)


# ---------------------------------------------------------------------------
# compact-basis formula


@dataclass(frozen=True)
class AlgebraicSpec:
    """Carrier, compact basis and optional bottom.

    ``basis`` for a finite carrier is a list of points (default: all of
    them).  For a canonical carrier it is ``"grid(step)"``: the dyadic
    enumeration used by the branch-and-bound; every finite rational is a
    compact basis element there, so kink points are legitimate basis
    elements as well.
    """

    carrier: FiniteSpace | CanonicalSpace
    basis: tuple[str, ...] | str | None = None
    bottom: object = None
    _step: Fraction | None = field(init=False, default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        C = self.carrier
        if isinstance(C, str):
            C = CanonicalSpace.parse(C)
            object.__setattr__(self, "carrier", C)
        if isinstance(C, FiniteSpace):
            basis = tuple(C.points) if self.basis is None else tuple(self.basis)
            for b in basis:
                if not is_compact_finite(C, b):
                    raise SpaceError(f"basis point {b!r} is not compact")
            object.__setattr__(self, "basis", basis)
            if self.bottom is not None:
                ib = C.index(self.bottom)
                if any(v != ZERO for v in C.dist[ib]):
                    raise SpaceError(f"{self.bottom!r} is not a bottom element")
        elif isinstance(C, CanonicalSpace):
            if C.power is not None:
                raise SpaceError("compact-basis evaluation is implemented for DL and DR, not powers")
            text = "grid(1)" if self.basis is None else str(self.basis)
            if not (text.startswith("grid(") and text.endswith(")")):
                raise SpaceError(f"canonical basis must be 'grid(step)', not {text!r}")
            step = ext(text[5:-1])
            if step is INF or step <= 0:
                raise SpaceError("grid step must be a positive rational")
            object.__setattr__(self, "basis", text)
            object.__setattr__(self, "_step", step)
            if self.bottom is not None:
                bot = ext(self.bottom)
                want = ZERO if C.kind == "DR" else INF
                if bot != want:
                    raise SpaceError(f"the bottom of {C.name} is {fmt(want)}")
                object.__setattr__(self, "bottom", bot)
        else:
            raise TypeError("carrier must be a FiniteSpace or CanonicalSpace")


def compact_basis_finite(space: FiniteSpace, x: str, A: Iterable[str], basis: Sequence[str] | None = None) -> ExtValue:
    A = list(A)
    if not A:
        return INF
    basis = space.points if basis is None else basis
    D = space.dist
    ix = space.index(x)
    ia = [space.index(a) for a in A]
    out = ZERO
    for b in basis:
        ib = space.index(b)
        v = tminus(min(D[ib][j] for j in ia), D[ib][ix])
        if v > out:
            out = v
    return out


def _summand(kind: str, x: ExtValue, A: Sequence[ExtValue]):
    """``U`` and ``V`` with summand ``U(b) (-) V(b)``; both monotone in ``b``."""
    if kind == "DR":
        m = max(A)
        return (lambda b: d_R(b, m)), (lambda b: d_R(b, x)), True
    lo = min(A)
    return (lambda b: d_L(b, lo)), (lambda b: d_L(b, x)), False


def _kink_eval(kind: str, x: ExtValue, A: Sequence[ExtValue]) -> ExtValue:
    U, V, _ = _summand(kind, x, A)
    f = lambda b: tminus(U(b), V(b))
    fin = sorted({v for v in list(A) + [x] if v is not INF})
    top = fin[-1] if fin else ZERO
    cands = [ZERO] + fin + [top + 1]
    best = max(f(b) for b in cands)
    # past the last kink the summand is affine; a rising tail is unbounded
    if f(top + 2) > f(top + 1):
        return INF
    if kind == "DL":
        best = max(best, f(INF))  # inf is compact for d_L
    return best


def _branch_and_bound(
    kind: str, x: ExtValue, A: Sequence[ExtValue], eps: Fraction, step: Fraction, max_cells: int = 200000
) -> tuple[ExtValue, ExtValue]:
    U, V, increasing = _summand(kind, x, A)
    f = lambda b: tminus(U(b), V(b))
    if kind == "DR" and x is INF:
        raise CertificationError("x = inf: the dyadic enumeration cannot bound an unbounded tail")
    T = max((v for v in list(A) + [x] if v is not INF), default=ZERO)
    # beyond T both U and V are affine with equal slopes, so the tail equals f(T)
    lo = max(f(ZERO), f(T))
    if kind == "DL":
        lo = max(lo, f(INF))
    if lo is INF or T == 0:
        return lo, lo

    def ub(b0: Fraction, b1: Fraction) -> ExtValue:
        return tminus(U(b1), V(b0)) if increasing else tminus(U(b0), V(b1))

    heap = []
    b0 = ZERO
    while b0 < T:
        b1 = min(b0 + step, T)
        lo = max(lo, f(b1))
        heap.append((-ub(b0, b1), b0, b1))
        b0 = b1
    heapq.heapify(heap)
    pushed = len(heap)
    while heap and -heap[0][0] - lo > eps:
        if pushed > max_cells:
            raise CertificationError("remainder bound did not close within the cell budget")
        _, b0, b1 = heapq.heappop(heap)
        mid = (b0 + b1) / 2
        lo = max(lo, f(mid))
        for c0, c1 in ((b0, mid), (mid, b1)):
            heapq.heappush(heap, (-ub(c0, c1), c0, c1))
        pushed += 2
    hi = max(lo, -heap[0][0]) if heap else lo
    return lo, hi


def scott_distance_algebraic(
    spec: AlgebraicSpec, x, A: Iterable, eps=Fraction(1, 1024), breakpoints: bool = True
) -> tuple[ExtValue, ExtValue]:
    """Certified interval ``[lo, hi]`` containing ``sigma(x, A)``, ``hi - lo <= eps``.

    Finite carriers and the kink evaluation are exact (``lo == hi``).
    ``sigma(x, {}) = inf``.
    """
    C = spec.carrier
    A = list(A)
    eps = ext(eps)
    if eps is INF or eps <= 0:
        raise ValueError("eps must be a positive rational")
    if isinstance(C, FiniteSpace):
        v = compact_basis_finite(C, x, A, spec.basis)
        return v, v
    x = ext(x)
    A = [ext(a) for a in A]
    if not A:
        return INF, INF
    if breakpoints:
        v = _kink_eval(C.kind, x, A)
        return v, v
    return _branch_and_bound(C.kind, x, A, eps, spec._step)


def delta_P(x, A: Iterable) -> ExtValue:
    """``x (-) sup A``, and ``inf`` for empty ``A``."""
    A = [ext(a) for a in A]
    if not A:
        return INF
    return tminus(ext(x), max(A))


# ---------------------------------------------------------------------------
# symbolic weights on [0, inf]


@dataclass(frozen=True)
class PL:
    """Piecewise linear ``[0, inf) -> Q`` plus the value at ``inf``.

    ``xs`` are increasing kinks starting at 0, ``ys`` the values there, and
    ``slope`` the slope after the last kink.  ``carrier`` records which
    metric the weight lives on.
    """

    carrier: str
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]
    slope: Fraction
    at_inf: ExtValue

    def __call__(self, t) -> ExtValue:
        t = ext(t)
        if t is INF:
            return self.at_inf
        xs, ys = self.xs, self.ys
        if t >= xs[-1]:
            return ys[-1] + self.slope * (t - xs[-1])
        k = max(i for i in range(len(xs)) if xs[i] <= t)
        return ys[k] + (ys[k + 1] - ys[k]) * (t - xs[k]) / (xs[k + 1] - xs[k])


def _finite_param(v, what: str) -> Fraction:
    v = ext(v)
    if v is INF:
        raise ValueError(f"{what} must be finite in the weight catalogue")
    return v


def rep_dL(c) -> PL:
    """``d_L(-, c) = c (-) t``."""
    c = _finite_param(c, "c")
    if c == 0:
        return PL("DL", (ZERO,), (ZERO,), ZERO, ZERO)
    return PL("DL", (ZERO, c), (c, ZERO), ZERO, ZERO)


def rep_dR(c) -> PL:
    """``d_R(-, c) = t (-) c``."""
    c = _finite_param(c, "c")
    if c == 0:
        return PL("DR", (ZERO,), (ZERO,), Fraction(1), INF)
    return PL("DR", (ZERO, c), (ZERO, ZERO), Fraction(1), INF)


def const(r, carrier: str) -> PL:
    r = _finite_param(r, "r")
    if carrier not in ("DL", "DR"):
        raise ValueError("carrier must be DL or DR")
    return PL(carrier, (ZERO,), (r,), ZERO, r)


def _same_carrier(f: PL, g: PL) -> str:
    if f.carrier != g.carrier:
        raise ValueError(f"cannot combine a {f.carrier} weight with a {g.carrier} weight")
    return f.carrier


def _combine(f: PL, g: PL, pick, inf_pick) -> PL:
    car = _same_carrier(f, g)
    xs = sorted(set(f.xs) | set(g.xs))
    # crossings inside each segment and in the tail
    extra = set()
    ends = xs + [None]
    for a, b in zip(ends, ends[1:]):
        da = f(a) - g(a)
        if b is None:
            sf = f.slope - g.slope
            if sf != 0 and -da / sf > 0:
                extra.add(a - da / sf)
        else:
            db = f(b) - g(b)
            if (da < 0 < db) or (db < 0 < da):
                extra.add(a + (b - a) * da / (da - db))
    xs = sorted(set(xs) | extra)
    ys = tuple(pick(f(t), g(t)) for t in xs)
    last = xs[-1]
    fl, gl = f(last), g(last)
    if fl != gl:
        slope = f.slope if pick(fl, gl) == fl else g.slope
    else:
        slope = pick(f.slope, g.slope)
    return PL(car, tuple(xs), ys, slope, inf_pick(f.at_inf, g.at_inf))


def wmax(f: PL, g: PL) -> PL:
    return _combine(f, g, max, max)


def wmin(f: PL, g: PL) -> PL:
    return _combine(f, g, min, min)


def plus(f: PL, r) -> PL:
    r = _finite_param(r, "r")
    return PL(f.carrier, f.xs, tuple(y + r for y in f.ys), f.slope, add(f.at_inf, r))


def minus(f: PL, r) -> PL:
    """``f (-) r``."""
    r = _finite_param(r, "r")
    shifted = PL(f.carrier, f.xs, tuple(y - r for y in f.ys), f.slope, ZERO)
    out = wmax(shifted, PL(f.carrier, (ZERO,), (ZERO,), ZERO, ZERO))
    return PL(out.carrier, out.xs, out.ys, out.slope, tminus(f.at_inf, r))


def _require(f: PL, carrier: str) -> None:
    if not isinstance(f, PL):
        raise TypeError(f"{f!r} is not a catalogue weight descriptor")
    if f.carrier != carrier:
        raise ValueError(f"expected a weight on {carrier}, got one on {f.carrier}")


def colimit_dL(phi: PL) -> ExtValue:
    """``inf_{t in [0, inf]} (phi(t) + t)``."""
    _require(phi, "DL")
    if phi.slope + 1 < 0:
        raise ValueError("descriptor is not a weight: phi(t) + t decreases without bound")
    return min(y + t for t, y in zip(phi.xs, phi.ys))


def colimit_dR(psi: PL) -> ExtValue:
    """``sup_{t in [0, inf]} (t (-) psi(t))``."""
    _require(psi, "DR")
    if 1 - psi.slope > 0 or tminus(INF, psi.at_inf) is INF:
        return INF
    return max(tminus(t, y) for t, y in zip(psi.xs, psi.ys))


# ---------------------------------------------------------------------------
# finite-carrier checks


@dataclass(frozen=True)
class SubbasisReport:
    ok: bool
    irregular: tuple = ()  # (b, r, locus) for generators that fail regularity
    witness: tuple | None = None  # (x, A) where the formula misses the Scott value

    def __bool__(self) -> bool:
        return self.ok


def subbasis_check(spec: AlgebraicSpec, radii: Sequence | None = None) -> SubbasisReport:
    """Generators ``r (-) d(b, -)`` are regular for the Scott distance, and the
    compact-basis formula reproduces every ``sigma(x, A)``."""
    from .balls import radius_grid

    S = spec.carrier
    if not isinstance(S, FiniteSpace):
        raise SpaceError("subbasis_check needs a finite carrier")
    sigma = scott_distance_finite(S)
    grid = list(radius_grid(S)) + [INF] if radii is None else [ext(r) for r in radii]
    irregular = []
    for b in spec.basis:
        row = S.dist[S.index(b)]
        for r in grid:
            g = tuple(tminus(r, v) for v in row)
            verdict = is_regular_function(sigma, g)
            if not verdict:
                irregular.append((b, r, verdict.witness))
    n = len(S)
    for A in range(1, 1 << n):
        labels = [S.points[i] for i in members(A)]
        for x in range(n):
            v = compact_basis_finite(S, S.points[x], labels, spec.basis)
            if v != sigma.table[x][A]:
                return SubbasisReport(False, tuple(irregular), (S.points[x], tuple(labels)))
    return SubbasisReport(not irregular, tuple(irregular))


@dataclass(frozen=True)
class PowerReport:
    ok: bool
    n: int
    witness: tuple | None = None  # (point, set, direct value, product value)

    def __bool__(self) -> bool:
        return self.ok


def find_bottom(space: FiniteSpace) -> str | None:
    for i, row in enumerate(space.dist):
        if all(v == ZERO for v in row):
            return space.points[i]
    return None


def power_sigma_check(space: FiniteSpace, n: int) -> PowerReport:
    """Scott distance of the ``n``-th sup-power against the ``n``-fold product of
    the Scott distance, tablewise."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if find_bottom(space) is None:
        raise SpaceError("power_sigma_check needs a bottom element")
    direct = scott_distance_finite(product([space] * n), verify=False)
    sigma = scott_distance_finite(space, verify=False)
    if n == 1:
        prod = sigma
    else:
        prod, _ = product_table([sigma] * n)
    if prod.points != direct.points:
        raise AssertionError("product labelling mismatch")
    N = len(direct)
    for x in range(N):
        for m in range(1 << N):
            if direct.table[x][m] != prod.table[x][m]:
                return PowerReport(False, n, (direct.points[x], direct.labels(m),
                                              fmt(direct.table[x][m]), fmt(prod.table[x][m])))
    return PowerReport(True, n)


# ---------------------------------------------------------------------------
# the space on [0, 1]


@dataclass(frozen=True)
class GNSeq:
    """``x_n = limit + sign * scale * ratio**n`` in ``[0, 1]``, or constant ``value``."""

    limit: Fraction = ZERO
    scale: Fraction = ZERO
    ratio: Fraction = Fraction(1, 2)
    sign: int = 1

    def __post_init__(self) -> None:
        for name in ("limit", "scale", "ratio"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (0 < self.ratio < 1) or self.scale < 0 or self.sign not in (1, -1):
            raise SpaceError("bad sequence parameters")
        lo = self.limit - self.scale if self.sign == -1 else self.limit
        hi = self.limit + self.scale if self.sign == 1 else self.limit
        if lo < 0 or hi > 1:
            raise SpaceError("sequence leaves [0, 1]")

    def at(self, n: int) -> Fraction:
        return self.limit + self.sign * self.scale * self.ratio**n

    @property
    def constant(self) -> bool:
        return self.scale == 0


class GNSpace:
    """Points are rationals in ``[0, 1]``; ``d(x, y) = |x - y|`` off zero,
    ``d(x, 0) = 0`` and ``d(0, y) = 1`` for ``y > 0``.

    Forward Cauchy sequences with a Yoneda limit are the eventually-zero
    ones and the convergent ones with a nonzero limit.
    """

    def point(self, v) -> Fraction:
        v = Fraction(v)
        if not (0 <= v <= 1):
            raise SpaceError(f"{v} is not in [0, 1]")
        return v

    def d(self, x, y) -> Fraction:
        x, y = self.point(x), self.point(y)
        if y == 0:
            return ZERO
        if x == 0:
            return Fraction(1)
        return abs(x - y)

    @staticmethod
    def sample_grid(depth: int = 12) -> list[Fraction]:
        return sorted({ZERO} | {Fraction(k, 2**n) for n in range(depth + 1) for k in range(1, 2**n + 1)})

    # sequences ----------------------------------------------------------

    def tail_distance(self, seq: GNSeq, y) -> Fraction:
        """``lim_n d(x_n, y)``."""
        y = self.point(y)
        if seq.constant or seq.limit > 0:
            return self.d(seq.limit, y)
        # nonconstant, tending to 0 through positive values
        return ZERO if y == 0 else y

    def yoneda_limit(self, seq: GNSeq, candidates: Iterable) -> Fraction | None:
        """A candidate ``z`` with ``d(z, y) = tail_distance(y)`` for every candidate ``y``."""
        cands = [self.point(c) for c in candidates]
        for z in cands:
            if all(self.d(z, y) == self.tail_distance(seq, y) for y in cands):
                return z
        return None

    # ball chains --------------------------------------------------------

    def _check_chain(self, chain: BallChain) -> GNSeq:
        cen = chain.centers
        if chain.kind != "geometric" or not isinstance(cen, GNSeq) or cen.limit != 0 or cen.sign != 1:
            raise NotImplementedError("GN chains: geometric radii over centers scale * ratio**n")
        if cen.ratio != chain.ratio or chain.scale < 0:
            raise NotImplementedError("GN chains need the radius ratio equal to the center ratio")
        return cen

    def chain_is_directed(self, chain: BallChain) -> bool:
        cen = self._check_chain(chain)
        # r_n - r_m = scale (q^n - q^m) against d(x_n, x_m) = c (q^n - q^m)
        return chain.scale >= cen.scale

    def _s_max(self, chain: BallChain, y: Fraction) -> ExtValue | None:
        """Largest ``s`` with ``(y, s)`` above every member, or ``None``."""
        cen = self._check_chain(chain)
        if y == 0:
            s = chain.base
        else:
            s = chain.base - y
            # members with x_n >= y are checked one by one; past them the
            # condition tends to base >= s + y from above
            n = 0
            while cen.scale and cen.at(n) >= y:
                s = min(s, chain.radius(n) - self.d(cen.at(n), y))
                n += 1
        return s if s >= 0 else None

    def is_upper_bound(self, chain: BallChain, ball: FormalBall) -> bool:
        s = self._s_max(chain, self.point(ball.center))
        return s is not None and ball.radius <= s

    def chain_join(self, chain: BallChain, candidates: Iterable | None = None) -> FormalBall | None:
        """Least upper bound among balls centred on ``candidates`` (default: the
        depth-12 dyadic grid), or ``None`` when no candidate is least."""
        if not self.chain_is_directed(chain):
            raise NotDirected("ball family is not directed")
        cands = self.sample_grid() if candidates is None else [self.point(c) for c in candidates]
        tops = [FormalBall(y, s) for y in cands if (s := self._s_max(chain, y)) is not None]
        for j in tops:
            if all(self._leq(j, t) for t in tops):
                return j
        return None

    def _leq(self, b1: FormalBall, b2: FormalBall) -> bool:
        return b1.radius >= b2.radius + self.d(b1.center, b2.center)


@dataclass(frozen=True)
class GNReport:
    ok: bool
    metric: bool
    chain_join: bool
    scott_weight: bool
    separation: bool
    notes: tuple[str, ...] = ()
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return self.ok


def gn_case_study(depth: int = 12, samples: int = 20000, seed: int = 0) -> GNReport:
    import time

    t0 = time.perf_counter()
    X = GNSpace()
    grid = X.sample_grid(depth)
    small = X.sample_grid(4)
    notes = []
    rng = random.Random(seed)

    # (i) metric axioms
    metric = all(X.d(x, x) == 0 for x in grid)
    triples = list(itertools.product(small, repeat=3)) + [
        tuple(rng.choice(grid) for _ in range(3)) for _ in range(samples)
    ]
    for x, y, z in triples:
        if X.d(x, z) > X.d(x, y) + X.d(y, z):
            metric = False
            notes.append(f"triangle fails at {x}, {y}, {z}")
            break

    # (ii) {(1/2^n, 1/2^n)}_{n>=1} is directed with join (0, 0)
    half = Fraction(1, 2)
    chain = BallChain("geometric", centers=GNSeq(ZERO, half, half), base=ZERO, scale=half, ratio=half)
    join = X.chain_join(chain, grid)
    chain_ok = X.chain_is_directed(chain) and join == FormalBall(ZERO, ZERO)
    chain_ok = chain_ok and chain_join(chain, X) == join
    # the centers have no Yoneda limit, so the join is not the ball of a limit
    chain_ok = chain_ok and X.yoneda_limit(chain.centers, grid) is None
    if not chain_ok:
        notes.append(f"chain join came out as {join}")

    # (iii) phi(0) = 1 and phi = 0 elsewhere: a weight, and a Scott weight
    # against every net with a Yoneda limit: eventually-zero nets and
    # convergent nets with a nonzero limit
    phi = lambda t: Fraction(1) if t == 0 else ZERO
    scott = all(phi(x) <= phi(y) + X.d(x, y) for x in small for y in small)
    scott = scott and all(phi(x) <= phi(y) + X.d(x, y) for x, y, _ in triples)
    nets = [GNSeq(ZERO, ZERO, half)]
    for L in (y for y in small if y > 0):
        nets.append(GNSeq(L, ZERO, half))
        for sign in (1, -1):
            room = 1 - L if sign == 1 else L
            if room > 0:
                nets.append(GNSeq(L, min(room, half) / 2, half, sign))
    for seq in nets:
        lim = X.yoneda_limit(seq, small)
        if lim is None:
            scott = False
            notes.append(f"net towards {seq.limit} lacks a Yoneda limit")
            continue
        # phi is constant along each of these nets from the start
        vals = {phi(seq.at(n)) for n in range(depth + 1)}
        if len(vals) != 1 or vals.pop() < phi(lim):
            scott = False
            notes.append(f"Scott inequality fails along the net towards {lim}")
    # a positive sequence tending to 0 has no Yoneda limit, so it imposes nothing
    scott = scott and X.yoneda_limit(GNSeq(ZERO, half, half), small) is None

    # (iv) phi^{-1}(0) is the positive part, yet a Scott closed set of balls
    # containing eta of it also contains the chain and hence (0, 0)
    zeros = [t for t in grid if phi(t) == 0]
    sep = zeros == [t for t in grid if t > 0]
    for n in range(depth):
        b = chain.at(n)
        sep = sep and X._leq(b, FormalBall(b.center, ZERO)) and b.center in zeros
    sep = sep and join is not None and join.center == 0 and phi(join.center) != 0

    ok = metric and chain_ok and scott and sep
    return GNReport(ok, metric, chain_ok, scott, sep, tuple(notes), time.perf_counter() - t0)
