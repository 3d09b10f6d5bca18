"""Finite generalized metric spaces, the canonical carriers, and nets.

A :class:`FiniteSpace` is a labelled point list plus a distance matrix of
extended values.  Nothing forces symmetry, finiteness or separation; only
``d(x, x) = 0`` and the triangle law are expected, and
:func:`check_metric_axioms` reports when they fail.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .costs import INF, ZERO, ExtValue, add, d_L, d_R, ext, fmt

__all__ = [
    "SpaceError",
    "FiniteSpace",
    "MetricReport",
    "CanonicalSpace",
    "FiniteNet",
    "CanonicalSeq",
    "PowerSeq",
    "NetDescriptor",
    "check_metric_axioms",
    "opposite",
    "product",
    "product_points",
    "specialization_order",
    "order_space",
    "is_forward_cauchy",
    "yoneda_limits",
    "tail_distances",
    "zero_clusters",
]


class SpaceError(ValueError):
    """Malformed space, unknown point, or a descriptor over the wrong space."""


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple[str, ...]
    dist: tuple[tuple[ExtValue, ...], ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        points = tuple(str(p) for p in self.points)
        if len(set(points)) != len(points):
            raise SpaceError(f"duplicate point labels in {points}")
        n = len(points)
        if n == 0:
            raise SpaceError("a space needs at least one point")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise SpaceError(
                f"distance matrix must be {n}x{n} for {n} points, "
                f"got rows of lengths {[len(r) for r in self.dist]}"
            )
        dist = tuple(tuple(ext(v) for v in row) for row in self.dist)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(points)})

    @classmethod
    def from_matrix(cls, points: Sequence[str], rows: Sequence[Sequence[object]]) -> "FiniteSpace":
        return cls(tuple(points), tuple(tuple(ext(v) for v in row) for row in rows))

    @classmethod
    def from_function(cls, points: Sequence[str], d) -> "FiniteSpace":
        return cls(tuple(points), tuple(tuple(ext(d(x, y)) for y in points) for x in points))

    def __len__(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise SpaceError(f"unknown point {label!r}; points are {list(self.points)}") from None

    def d(self, x: str, y: str) -> ExtValue:
        return self.dist[self.index(x)][self.index(y)]

    def __str__(self) -> str:
        rows = [" ".join(fmt(v) for v in row) for row in self.dist]
        return f"FiniteSpace({list(self.points)}; " + "; ".join(rows) + ")"


@dataclass(frozen=True)
class MetricReport:
    ok: bool
    violations: tuple[tuple[str, tuple[str, ...]], ...] = ()


def check_metric_axioms(space: FiniteSpace, limit: int | None = None) -> MetricReport:
    """Check ``d(x,x) = 0`` and ``d(x,z) <= d(x,y) + d(y,z)`` exhaustively.

    Violations come back as ``("reflexivity", (x,))`` or
    ``("triangle", (x, y, z))`` with ``d(x,z) > d(x,y) + d(y,z)``.
    """
    pts, D = space.points, space.dist
    n = len(pts)
    bad: list[tuple[str, tuple[str, ...]]] = []
    for i in range(n):
        if D[i][i] != ZERO:
            bad.append(("reflexivity", (pts[i],)))
    for i in range(n):
        Di = D[i]
        for j in range(n):
            dij = Di[j]
            if dij is INF:
                continue
            Dj = D[j]
            for k in range(n):
                if Di[k] > add(dij, Dj[k]):
                    bad.append(("triangle", (pts[i], pts[j], pts[k])))
                    if limit is not None and len(bad) >= limit:
                        return MetricReport(False, tuple(bad))
    return MetricReport(not bad, tuple(bad))


def opposite(space: FiniteSpace) -> FiniteSpace:
    n = len(space)
    return FiniteSpace(space.points, tuple(tuple(space.dist[j][i] for j in range(n)) for i in range(n)))


def product_label(parts: Sequence[str]) -> str:
    return "(" + ";".join(parts) + ")"


def product_points(spaces: Sequence[FiniteSpace]) -> list[tuple[int, ...]]:
    """Index tuples of the product, in the order used by :func:`product`."""
    return list(itertools.product(*(range(len(s)) for s in spaces)))


def product(spaces: Sequence[FiniteSpace]) -> FiniteSpace:
    """Cartesian product with the coordinatewise sup metric."""
    spaces = list(spaces)
    if not spaces:
        raise SpaceError("product of an empty list of spaces")
    if len(spaces) == 1:
        return spaces[0]
    tuples = product_points(spaces)
    labels = tuple(product_label([s.points[i] for s, i in zip(spaces, t)]) for t in tuples)
    rows = tuple(
        tuple(max(s.dist[a][b] for s, a, b in zip(spaces, u, v)) for v in tuples) for u in tuples
    )
    return FiniteSpace(labels, rows)


def specialization_order(space: FiniteSpace) -> frozenset[tuple[str, str]]:
    """The relation ``x <= y  iff  d(x, y) = 0``."""
    pts, D = space.points, space.dist
    rel = frozenset((pts[i], pts[j]) for i in range(len(pts)) for j in range(len(pts)) if D[i][j] == ZERO)
    for x, y in rel:
        for y2, z in rel:
            if y2 == y and (x, z) not in rel:
                raise SpaceError(f"specialization order not transitive at {x}, {y}, {z}: triangle law fails")
    return rel


def order_space(points: Sequence[str], leq: Iterable[tuple[str, str]]) -> FiniteSpace:
    """The 0/inf metric of a preorder (reflexive-transitive closure is taken)."""
    points = tuple(points)
    idx = {p: i for i, p in enumerate(points)}
    n = len(points)
    R = [[i == j for j in range(n)] for i in range(n)]
    for x, y in leq:
        R[idx[x]][idx[y]] = True
    for k in range(n):
        for i in range(n):
            if R[i][k]:
                for j in range(n):
                    if R[k][j]:
                        R[i][j] = True
    return FiniteSpace(points, tuple(tuple(ZERO if R[i][j] else INF for j in range(n)) for i in range(n)))


def zero_clusters(space: FiniteSpace) -> list[frozenset[int]]:
    """Classes of the equivalence ``d(x,y) = d(y,x) = 0`` (as index sets)."""
    n = len(space)
    D = space.dist
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i in seen:
            continue
        cls = frozenset(j for j in range(n) if D[i][j] == ZERO and D[j][i] == ZERO)
        seen |= cls
        out.append(cls)
    return out


# ---------------------------------------------------------------------------
# canonical carriers


@dataclass(frozen=True)
class CanonicalSpace:
    """``([0,inf], d_L)``, ``([0,inf], d_R)`` or a finite sup-power of one."""

    kind: str  # "DL" or "DR"
    power: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("DL", "DR"):
            raise SpaceError(f"canonical kind must be DL or DR, not {self.kind!r}")
        if self.power is not None and self.power < 1:
            raise SpaceError("power must be a positive integer")

    @classmethod
    def parse(cls, name: str) -> "CanonicalSpace":
        name = name.strip()
        if "^" in name:
            base, _, exp = name.partition("^")
            try:
                return cls(base, int(exp))
            except ValueError:
                raise SpaceError(f"bad canonical space name {name!r}") from None
        return cls(name)

    @property
    def name(self) -> str:
        return self.kind if self.power is None else f"{self.kind}^{self.power}"

    def base_d(self, a: ExtValue, b: ExtValue) -> ExtValue:
        return d_L(a, b) if self.kind == "DL" else d_R(a, b)

    def d(self, a, b) -> ExtValue:
        if self.power is None:
            return self.base_d(a, b)
        if len(a) != self.power or len(b) != self.power:
            raise SpaceError(f"{self.name} points need {self.power} coordinates")
        return max(self.base_d(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# net descriptors


@dataclass(frozen=True)
class FiniteNet:
    """Run ``prefix`` once, then repeat ``cycle`` forever."""

    space: FiniteSpace
    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise SpaceError("a net cycle must be nonempty")
        for p in self.prefix + self.cycle:
            self.space.index(p)

    def at(self, n: int) -> str:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def map(self, f: Mapping[str, str], target: FiniteSpace) -> "FiniteNet":
        return FiniteNet(target, tuple(f[p] for p in self.prefix), tuple(f[p] for p in self.cycle))


@dataclass(frozen=True)
class CanonicalSeq:
    """A closed-form sequence in ``([0,inf], d_L)`` or ``([0,inf], d_R)``.

    ``form="geometric"``: ``x_n = limit + sign * scale * ratio**n``
    (``sign`` is +1 or -1, ``0 < ratio < 1``).
    ``form="linear"``: ``x_n = offset + slope * n``; ``slope > 0`` diverges to inf.
    ``form="constant"``: ``x_n = value`` (``value`` may be inf).
    Indices run from ``start``.
    """

    carrier: str
    form: str
    limit: Fraction = ZERO
    scale: Fraction = ZERO
    ratio: Fraction = Fraction(1, 2)
    sign: int = 1
    offset: Fraction = ZERO
    slope: Fraction = ZERO
    value: ExtValue = ZERO
    start: int = 0

    def __post_init__(self) -> None:
        if self.carrier not in ("DL", "DR"):
            raise SpaceError(f"sequence carrier must be DL or DR, not {self.carrier!r}")
        if self.form == "geometric":
            for name in ("limit", "scale", "ratio"):
                v = ext(getattr(self, name))
                if v is INF:
                    raise SpaceError(f"geometric {name} must be finite")
                object.__setattr__(self, name, v)
            if not (0 < self.ratio < 1):
                raise SpaceError("geometric ratio must lie strictly between 0 and 1")
            if self.sign not in (1, -1):
                raise SpaceError("sign must be +1 or -1")
            if self.sign == -1 and self.limit < self.scale * self.ratio**self.start:
                raise SpaceError("decreasing-to-limit form would go negative")
        elif self.form == "linear":
            for name in ("offset", "slope"):
                v = ext(getattr(self, name))
                if v is INF:
                    raise SpaceError(f"linear {name} must be finite")
                object.__setattr__(self, name, v)
        elif self.form == "constant":
            object.__setattr__(self, "value", ext(self.value))
        else:
            raise SpaceError(f"unknown sequence form {self.form!r}")

    def at(self, n: int) -> ExtValue:
        n = n + self.start
        if self.form == "geometric":
            return self.limit + self.sign * self.scale * self.ratio**n
        if self.form == "linear":
            return self.offset + self.slope * n
        return self.value

    def usual_limit(self) -> ExtValue:
        if self.form == "geometric":
            return self.limit
        if self.form == "linear":
            return INF if self.slope > 0 else self.offset
        return self.value


@dataclass(frozen=True)
class PowerSeq:
    """A sequence in a finite power; every coordinate has its own descriptor."""

    coords: tuple[CanonicalSeq, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise SpaceError("power sequence needs at least one coordinate")
        if len({c.carrier for c in self.coords}) != 1:
            raise SpaceError("all coordinates of a power sequence must share a carrier")

    @property
    def carrier(self) -> str:
        return self.coords[0].carrier

    def at(self, n: int) -> tuple[ExtValue, ...]:
        return tuple(c.at(n) for c in self.coords)


NetDescriptor = Union[FiniteNet, CanonicalSeq, PowerSeq]


def _seq_forward_cauchy(seq: CanonicalSeq) -> bool:
    if seq.form in ("geometric", "constant"):
        # convergent (or constant) sequences are Cauchy in the usual sense
        return True
    if seq.slope == 0:
        return True
    # strictly increasing affine sequence: d_R(x_j, x_k) = 0 for j <= k,
    # while d_L(x_j, x_k) = slope * (k - j) is unbounded
    return seq.carrier == "DR"


def is_forward_cauchy(net: NetDescriptor, space: object | None = None) -> bool:
    """Decide ``inf_i sup_{k>=j>=i} d(x_j, x_k) = 0`` for a descriptor.

    For a :class:`FiniteNet` this reduces to every ordered pair of cycle
    points being at distance 0, because the cycle repeats in every tail.
    """
    if isinstance(net, FiniteNet):
        if space is not None and space != net.space:
            raise SpaceError("net is described over a different space")
        S = net.space
        cyc = [S.index(p) for p in set(net.cycle)]
        return all(S.dist[u][v] == ZERO for u in cyc for v in cyc)
    if isinstance(net, CanonicalSeq):
        _check_canonical_space(space, net.carrier, None)
        return _seq_forward_cauchy(net)
    if isinstance(net, PowerSeq):
        _check_canonical_space(space, net.carrier, len(net.coords))
        return all(_seq_forward_cauchy(c) for c in net.coords)
    raise TypeError(f"not a net descriptor: {net!r}")


def _check_canonical_space(space: object | None, carrier: str, power: int | None) -> None:
    if space is None:
        return
    if isinstance(space, str):
        space = CanonicalSpace.parse(space)
    if not isinstance(space, CanonicalSpace) or space.kind != carrier or space.power != power:
        raise SpaceError(f"sequence over {carrier}{'' if power is None else '^' + str(power)} "
                         f"does not live in {space!r}")


def tail_distances(net: FiniteNet) -> tuple[ExtValue, ...]:
    """``y -> inf_i sup_{j>=i} d(x_j, y)``; for an eventually cyclic net, the max over the cycle."""
    S = net.space
    cyc = [S.index(p) for p in set(net.cycle)]
    return tuple(max(S.dist[u][y] for u in cyc) for y in range(len(S)))


def yoneda_limits(net: NetDescriptor, space: object | None = None):
    """Yoneda limits of a forward Cauchy descriptor.

    Finite nets give the (nonempty) frozenset of limit labels; canonical
    sequences give their usual limit, coordinatewise for powers.
    """
    if not is_forward_cauchy(net, space):
        raise SpaceError("net is not forward Cauchy")
    if isinstance(net, FiniteNet):
        S = net.space
        tail = tail_distances(net)
        return frozenset(S.points[x] for x in range(len(S)) if S.dist[x] == tail)
    if isinstance(net, CanonicalSeq):
        return net.usual_limit()
    return tuple(c.usual_limit() for c in net.coords)
