"""Approach distances on finite carriers, stored as full tables.

A table holds ``delta(x, A)`` for every point ``x`` and every subset ``A``;
subsets are bitmasks over the point order (bit ``i`` is point ``i``).  The
practical ceiling is about a dozen points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .costs import INF, ZERO, ExtValue, add, ext, fmt, tminus
from .spaces import FiniteSpace, SpaceError, check_metric_axioms
from .weights import PointMap, WeightFn, flat_weight_representatives, is_scott_weight, scott_probes

__all__ = [
    "ApproachError",
    "ApproachTable",
    "TopologySpec",
    "Verdict",
    "AxiomReport",
    "members",
    "mask_of",
    "check_approach_axioms",
    "alexandroff",
    "from_regular_functions",
    "from_subbasis",
    "scott_witness_family",
    "scott_distance_finite",
    "is_regular_function",
    "closure_operator",
    "coreflection",
    "specialization",
    "is_contraction",
    "embed_topology",
    "product_table",
    "topology_from_closure",
]


class ApproachError(ValueError):
    """A table that cannot be an approach distance, or an invalid topology."""


def members(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class ApproachTable:
    points: tuple[str, ...]
    table: tuple[tuple[ExtValue, ...], ...]  # table[x][mask]

    def __post_init__(self) -> None:
        n = len(self.points)
        if len(self.table) != n or any(len(row) != 1 << n for row in self.table):
            raise ApproachError(f"table must have {n} rows of {1 << n} entries (partial table)")

    @classmethod
    def from_function(cls, points: Sequence[str], delta: Callable[[int, int], ExtValue]) -> "ApproachTable":
        n = len(points)
        return cls(tuple(points), tuple(tuple(ext(delta(x, m)) for m in range(1 << n)) for x in range(n)))

    @classmethod
    def from_mapping(cls, points: Sequence[str], entries: Mapping[tuple[str, frozenset], object]) -> "ApproachTable":
        points = tuple(points)
        idx = {p: i for i, p in enumerate(points)}
        n = len(points)
        rows = [[None] * (1 << n) for _ in range(n)]
        for (x, A), v in entries.items():
            rows[idx[x]][mask_of(idx[a] for a in A)] = ext(v)
        missing = [(points[x], m) for x in range(n) for m in range(1 << n) if rows[x][m] is None]
        if missing:
            x, m = missing[0]
            raise ApproachError(f"partial table: no entry for ({x}, {set(points[i] for i in members(m))})")
        return cls(points, tuple(tuple(r) for r in rows))

    def __len__(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise SpaceError(f"unknown point {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(a) for a in labels)

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in members(mask))

    def delta(self, x: str, A: Iterable[str]) -> ExtValue:
        return self.table[self.index(x)][self.mask(A)]

    def column(self, mask: int) -> tuple[ExtValue, ...]:
        """The function ``delta(-, A)``."""
        return tuple(row[mask] for row in self.table)


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome that carries a witness when it is negative."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    violations: tuple[tuple[str, tuple], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _sup_over(table, A: int, nmask: int) -> list[ExtValue]:
    """``sup_{b in B} delta(b, A)`` for every B; 0 on the empty set."""
    sup = [ZERO] * nmask
    for B in range(1, nmask):
        low = B & -B
        b = low.bit_length() - 1
        prev = sup[B ^ low]
        val = table[b][A]
        sup[B] = val if val > prev else prev
    return sup


def check_approach_axioms(t: ApproachTable, limit: int | None = None) -> AxiomReport:
    """Exhaustive exact check of (A1)-(A4) over all ``x``, ``A``, ``B``."""
    n = len(t)
    T = t.table
    full = 1 << n
    bad: list[tuple[str, tuple]] = []

    def report(axiom: str, *w) -> bool:
        bad.append((axiom, w))
        return limit is not None and len(bad) >= limit

    for x in range(n):
        if T[x][1 << x] != ZERO and report("A1", t.points[x]):
            return AxiomReport(False, tuple(bad))
        if T[x][0] is not INF and report("A2", t.points[x]):
            return AxiomReport(False, tuple(bad))
    for x in range(n):
        row = T[x]
        for A in range(full):
            rA = row[A]
            for B in range(A, full):
                if row[A | B] != min(rA, row[B]):
                    if report("A3", t.points[x], t.labels(A), t.labels(B)):
                        return AxiomReport(False, tuple(bad))
    for A in range(full):
        sup = _sup_over(T, A, full)
        for x in range(n):
            row = T[x]
            lhs = row[A]
            for B in range(1, full):
                if lhs > add(row[B], sup[B]):
                    if report("A4", t.points[x], t.labels(A), t.labels(B)):
                        return AxiomReport(False, tuple(bad))
    return AxiomReport(not bad, tuple(bad))


def alexandroff(space: FiniteSpace) -> ApproachTable:
    """``Gamma(d)(x, A) = inf_{a in A} d(x, a)``, and ``inf`` on the empty set."""
    n = len(space)
    D = space.dist
    rows = []
    for x in range(n):
        row = [INF] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            v = D[x][low.bit_length() - 1]
            prev = row[m ^ low]
            row[m] = v if v < prev else prev
        rows.append(tuple(row))
    return ApproachTable(space.points, tuple(rows))


def from_regular_functions(points: Sequence[str], family: Iterable[Sequence[ExtValue]]) -> ApproachTable:
    """``delta(x, A) = sup{phi(x) : phi in family, phi = 0 on A}`` (sup of nothing is 0)."""
    n = len(points)
    full = 1 << n
    best = [[ZERO] * full for _ in range(n)]
    for phi in family:
        zeros = mask_of(i for i in range(n) if phi[i] == ZERO)
        for x in range(n):
            if phi[x] > best[x][zeros]:
                best[x][zeros] = phi[x]
    # every A inside the zero set of phi sees phi: push maxima down to subsets
    for row in best:
        for i in range(n):
            bit = 1 << i
            for m in range(full):
                if m & bit:
                    v = row[m]
                    if v > row[m ^ bit]:
                        row[m ^ bit] = v
    return ApproachTable(tuple(points), tuple(tuple(r) for r in best))


def from_subbasis(points: Sequence[str], family: Sequence[Sequence[ExtValue]]) -> ApproachTable:
    """Distance whose regular functions are generated by ``family`` under (R1)-(R3).

    On a finite carrier this is ``delta(x, A) = min_{a in A} sup_g g(x) (-) g(a)``:
    each ``a`` needs one generator separating ``x`` from it, and the finite
    min of the shifted generators vanishes on all of ``A``.
    """
    n = len(points)
    sep = [[max((tminus(g[x], g[a]) for g in family), default=ZERO) for a in range(n)] for x in range(n)]
    rows = []
    for x in range(n):
        row = [INF] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            v = sep[x][low.bit_length() - 1]
            prev = row[m ^ low]
            row[m] = v if v < prev else prev
        rows.append(tuple(row))
    return ApproachTable(tuple(points), tuple(rows))


def scott_witness_family(space: FiniteSpace, check: bool | str = True) -> list[WeightFn]:
    """``{Gamma(d)(-, B) : B subset X}`` plus the representables, each a Scott weight.

    ``check=True`` certifies the representables; each column is their
    pointwise min over ``B`` and Scott weights are closed under finite
    mins (the empty min is the constant ``inf``).  ``check="all"`` tests
    every member directly.
    """
    gamma = alexandroff(space)
    n = len(space)
    reps = [WeightFn(space, tuple(row[j] for row in space.dist)) for j in range(n)]
    fam = [WeightFn(space, gamma.column(m)) for m in range(1 << n)] + reps
    if check:
        probes = scott_probes(flat_weight_representatives(space))
        for phi in fam if check == "all" else reps:
            if not is_scott_weight(phi, probes=probes):
                raise ApproachError(f"witness {phi} is not a Scott weight")
    return fam


class ScottMismatch(ApproachError):
    pass


def scott_distance_finite(space: FiniteSpace, verify: bool = True) -> ApproachTable:
    """Scott distance as the sup over a family of Scott weights vanishing on ``A``.

    With ``verify`` the result is compared tablewise with the Alexandroff
    distance (finite spaces are Smyth completable) and a mismatch raises.
    """
    sigma = from_regular_functions(space.points, (phi.values for phi in scott_witness_family(space)))
    if verify:
        gamma = alexandroff(space)
        if sigma != gamma:
            x, m = next(
                (x, m) for x in range(len(space)) for m in range(1 << len(space))
                if sigma.table[x][m] != gamma.table[x][m]
            )
            raise ScottMismatch(
                f"Scott sup {fmt(sigma.table[x][m])} != Alexandroff {fmt(gamma.table[x][m])} "
                f"at ({space.points[x]}, {sigma.labels(m)})"
            )
    return sigma


def is_regular_function(t: ApproachTable, phi: Sequence[ExtValue] | Mapping[str, object]) -> Verdict:
    """``delta(x, A) >= phi(x) (-) sup phi(A)`` for every ``x`` and nonempty ``A``.

    The empty set is skipped: ``delta(x, {}) = inf`` dominates anything.
    """
    n = len(t)
    if isinstance(phi, Mapping):
        vals = tuple(ext(phi[p]) for p in t.points)
    else:
        vals = tuple(ext(v) for v in phi)
    if len(vals) != n:
        raise ApproachError(f"need {n} values")
    sup = [ZERO] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        v = vals[low.bit_length() - 1]
        sup[m] = v if v > sup[m ^ low] else sup[m ^ low]
    for x in range(n):
        row = t.table[x]
        for m in range(1, 1 << n):
            if row[m] < tminus(vals[x], sup[m]):
                return Verdict(False, (t.points[x], t.labels(m)))
    return Verdict(True)


# ---------------------------------------------------------------------------
# topologies


@dataclass(frozen=True)
class TopologySpec:
    """A finite topology given by its closed sets (as bitmasks)."""

    points: tuple[str, ...]
    closed: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "closed", frozenset(self.closed))

    @classmethod
    def from_label_sets(cls, points: Sequence[str], closed: Iterable[Iterable[str]]) -> "TopologySpec":
        idx = {p: i for i, p in enumerate(points)}
        try:
            masks = frozenset(mask_of(idx[a] for a in c) for c in closed)
        except KeyError as e:
            raise ApproachError(f"closed set mentions unknown point {e.args[0]!r}") from None
        top = cls(tuple(points), masks)
        top.validate()
        return top

    def validate(self) -> None:
        full = (1 << len(self.points)) - 1
        if 0 not in self.closed or full not in self.closed:
            raise ApproachError("closed sets must include the empty set and the whole space")
        for a in self.closed:
            for b in self.closed:
                if a | b not in self.closed or a & b not in self.closed:
                    raise ApproachError("closed sets not closed under union/intersection")

    def closure(self, mask: int) -> int:
        full = (1 << len(self.points)) - 1
        out = full
        for c in self.closed:
            if c & mask == mask:
                out &= c
        return out

    def closed_sets(self) -> list[tuple[str, ...]]:
        return sorted(
            (tuple(self.points[i] for i in members(m)) for m in self.closed), key=lambda s: (len(s), s)
        )

    def open_sets(self) -> frozenset[int]:
        full = (1 << len(self.points)) - 1
        return frozenset(full ^ c for c in self.closed)

    def is_coarser_than(self, other: "TopologySpec") -> bool:
        return self.closed <= other.closed


def closure_operator(t: ApproachTable) -> list[int]:
    """``A -> {x : delta(x, A) = 0}`` for every mask ``A``."""
    n = len(t)
    return [mask_of(x for x in range(n) if t.table[x][m] == ZERO) for m in range(1 << n)]


def topology_from_closure(points: Sequence[str], cl: Sequence[int]) -> TopologySpec:
    full = len(cl)
    for m in range(full):
        if cl[m] & m != m:
            raise ApproachError(f"closure of {m:b} is not extensive")
        if cl[cl[m]] != cl[m]:
            raise ApproachError(f"closure of {m:b} is not idempotent")
    for a in range(full):
        for b in range(a, full):
            if cl[a | b] != cl[a] | cl[b]:
                raise ApproachError(f"closure not additive on {a:b}, {b:b}")
    if cl[0] != 0:
        raise ApproachError("closure of the empty set is not empty")
    return TopologySpec(tuple(points), frozenset(m for m in range(full) if cl[m] == m))


def coreflection(t: ApproachTable) -> TopologySpec:
    """Topology whose closure is ``x in cl(A) iff delta(x, A) = 0``."""
    return topology_from_closure(t.points, closure_operator(t))


def specialization(t: ApproachTable) -> FiniteSpace:
    """``Omega(delta)(x, y) = delta(x, {y})``."""
    n = len(t)
    space = FiniteSpace(t.points, tuple(tuple(t.table[x][1 << y] for y in range(n)) for x in range(n)))
    rep = check_metric_axioms(space, limit=1)
    if not rep.ok:
        raise ApproachError(f"specialization metric fails {rep.violations[0]}")
    return space


def is_contraction(f: PointMap | Sequence[int], s: ApproachTable, t: ApproachTable) -> Verdict:
    """``delta_X(x, A) >= delta_Y(f(x), f(A))`` for all ``x`` and ``A``."""
    fa = f.assignment if isinstance(f, PointMap) else tuple(f)
    n = len(s)
    if len(fa) != n:
        raise ApproachError("map is not total on the source")
    img = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        img[m] = img[m ^ low] | (1 << fa[low.bit_length() - 1])
    for x in range(n):
        row = s.table[x]
        trow = t.table[fa[x]]
        for m in range(1 << n):
            if row[m] < trow[img[m]]:
                return Verdict(False, (s.points[x], s.labels(m)))
    return Verdict(True)


def embed_topology(T: TopologySpec) -> ApproachTable:
    """``omega(T)``: distance 0 to ``A`` when ``x`` lies in the closure of ``A``, else ``inf``."""
    T.validate()
    n = len(T.points)
    cl = [T.closure(m) for m in range(1 << n)]
    return ApproachTable.from_function(T.points, lambda x, m: ZERO if cl[m] >> x & 1 else INF)


def product_table(tables: Sequence[ApproachTable]) -> tuple[ApproachTable, list[tuple[int, ...]]]:
    """Product approach distance from the subbasis ``{delta_i(-, B) o p_i}``."""
    tables = list(tables)
    if not tables:
        raise ApproachError("product of no tables")
    tuples = list(itertools.product(*(range(len(t)) for t in tables)))
    labels = tuple("(" + ";".join(t.points[i] for t, i in zip(tables, tup)) + ")" for tup in tuples)
    family = []
    for k, t in enumerate(tables):
        for m in range(1 << len(t)):
            col = t.column(m)
            family.append(tuple(col[tup[k]] for tup in tuples))
    return from_subbasis(labels, family), tuples
