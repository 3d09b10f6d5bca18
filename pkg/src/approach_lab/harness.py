"""Seeded random instances and the theorem battery B1-B12.

Every trial draws its space from ``random.Random(f"{seed}/{index}")`` and
every check draws its extra data from a generator keyed by the check name
as well, so selecting a subset of checks, or running trials in another
order, never changes what a given check sees.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable

from . import _mutation
from .algebraic import is_compact_finite, compact_basis_finite
from .approach import (
    alexandroff,
    check_approach_axioms,
    coreflection,
    embed_topology,
    is_contraction,
    members,
    scott_distance_finite,
    specialization,
)
from .balls import (
    BallChain,
    FormalBall,
    ball_leq,
    chain_is_directed,
    chain_join,
    check_condition_S_instance,
    is_flat_by_bplus,
    radius_grid,
    topologies,
)
from .costs import INF, ZERO, ExtValue, fmt, tminus
from .io import space_from_obj, space_to_obj
from .spaces import FiniteNet, FiniteSpace, check_metric_axioms, is_forward_cauchy, yoneda_limits, zero_clusters
from .weights import (
    PointMap,
    WeightFn,
    bar_distance,
    closure_weight,
    colimits,
    constant,
    flat_weight_representatives,
    is_flat,
    is_flat_by_coweights,
    is_scott_weight,
    kan_extend,
    net_weight,
    precompose,
    scott_probes,
    shift,
    yoneda_embed,
)

__all__ = [
    "CHECKS",
    "TrialConfig",
    "Witness",
    "Report",
    "default_seed",
    "gen_value",
    "gen_space",
    "gen_weight",
    "run_check",
    "run_battery",
    "replay",
    "search_counterexample",
    "SEARCH_TARGETS",
]

CHECKS = tuple(f"B{i}" for i in range(1, 13))


def default_seed() -> int:
    """``APPROACH_LAB_SEED`` when set, else 0."""
    text = os.environ.get("APPROACH_LAB_SEED")
    if text is None or not text.strip():
        return 0
    return int(text)


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 500
    max_points: int = 6
    denominators: tuple[int, ...] = (1, 2, 3, 4)
    max_numerator: int = 32
    inf_rate: Fraction = Fraction(1, 8)
    checks: tuple[str, ...] = CHECKS

    def __post_init__(self) -> None:
        object.__setattr__(self, "denominators", tuple(self.denominators))
        object.__setattr__(self, "checks", tuple(self.checks))
        object.__setattr__(self, "inf_rate", Fraction(self.inf_rate))
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if not (1 <= self.max_points <= 6):
            raise ValueError("max_points must lie in 1..6")
        if not self.denominators or any(q not in (1, 2, 3, 4) for q in self.denominators):
            raise ValueError("denominators must be drawn from {1, 2, 3, 4}")
        if not (0 <= self.max_numerator <= 32):
            raise ValueError("numerators are bounded by 32")
        if not (0 <= self.inf_rate <= 1):
            raise ValueError("inf_rate must be a probability")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise ValueError(f"unknown checks {bad}")


# ---------------------------------------------------------------------------
# generators


def gen_value(config: TrialConfig, rng: random.Random, allow_inf: bool = True) -> ExtValue:
    if allow_inf and rng.random() < config.inf_rate:
        return INF
    q = rng.choice(config.denominators)
    return Fraction(rng.randint(0, config.max_numerator), q)


def _repair(rows: list[list[ExtValue]]) -> None:
    """Shortest-path closure, in place: ``d(x, y) = min over paths``."""
    n = len(rows)
    for k in range(n):
        rk = rows[k]
        for i in range(n):
            dik = rows[i][k]
            if dik is INF:
                continue
            ri = rows[i]
            for j in range(n):
                v = rk[j]
                if v is not INF and dik + v < ri[j]:
                    ri[j] = dik + v


def gen_space(config: TrialConfig, rng: random.Random, n: int | None = None) -> FiniteSpace:
    """Random grid matrix repaired to a generalized metric."""
    n = rng.randint(1, config.max_points) if n is None else n
    # half the spaces are sparse, so that inf survives the repair
    cfg = config if rng.random() < 0.5 else replace(config, inf_rate=max(config.inf_rate, Fraction(1, 2)))
    rows = [[ZERO if i == j else gen_value(cfg, rng) for j in range(n)] for i in range(n)]
    # zero entries are drawn a little more often so clusters appear
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < 0.1:
                rows[i][j] = ZERO
    if not _mutation.active("skip_repair"):
        _repair(rows)
    labels = tuple("abcdef"[i] for i in range(n))
    return FiniteSpace(labels, tuple(tuple(r) for r in rows))


def gen_weight(space: FiniteSpace, config: TrialConfig, rng: random.Random) -> WeightFn:
    """Largest weight below random grid values."""
    vals = tuple(gen_value(config, rng) for _ in space.points)
    return closure_weight(space, vals)


def _gen_map(X: FiniteSpace, Y: FiniteSpace, rng: random.Random) -> tuple[int, ...]:
    return tuple(rng.randrange(len(Y)) for _ in X.points)


def _pullback(X: FiniteSpace, Y: FiniteSpace, f: tuple[int, ...]) -> FiniteSpace:
    """``X`` with ``d(x, y) = max(d_X(x, y), d_Y(f x, f y))``; ``f`` becomes non-expansive."""
    n = len(X)
    rows = tuple(tuple(max(X.dist[i][j], Y.dist[f[i]][f[j]]) for j in range(n)) for i in range(n))
    return FiniteSpace(X.points, rows)


def _cauchy_nets(space: FiniteSpace) -> list[FiniteNet]:
    nets = []
    n = len(space)
    for m in range(1, 1 << n):
        net = FiniteNet(space, (), tuple(space.points[i] for i in members(m)))
        if is_forward_cauchy(net):
            nets.append(net)
    return nets


# ---------------------------------------------------------------------------
# the battery: each check returns None or a locus (tuple of printable items)

Locus = tuple


@functools.lru_cache(maxsize=16)
def _sigma_cached(S: FiniteSpace, mutations: tuple[str, ...]):
    return scott_distance_finite(S, verify=False)


@functools.lru_cache(maxsize=16)
def _tops_cached(S: FiniteSpace, mutations: tuple[str, ...]):
    return topologies(S)


def _sigma(S: FiniteSpace):
    return _sigma_cached(S, _mutation.current())


def _tops(S: FiniteSpace) -> dict:
    return dict(_tops_cached(S, _mutation.current()))


def _b1(S: FiniteSpace, config, rng) -> Locus | None:
    omega = specialization(_sigma(S))
    for i, j in itertools.product(range(len(S)), repeat=2):
        if omega.dist[i][j] != S.dist[i][j]:
            return ("Omega Sigma", S.points[i], S.points[j], fmt(omega.dist[i][j]), fmt(S.dist[i][j]))
    return None


def _weights_for(S: FiniteSpace, config, rng, k: int = 4) -> list[WeightFn]:
    ws = [yoneda_embed(S, p) for p in S.points]
    ws += [gen_weight(S, config, rng) for _ in range(k)]
    ws += [constant(S, INF), constant(S, ZERO)]
    return ws


def _b2(S, config, rng) -> Locus | None:
    for phi in _weights_for(S, config, rng):
        for x in S.points:
            lhs = bar_distance(yoneda_embed(S, x), phi)
            if lhs != phi(x):
                return ("Yoneda", str(phi), x, fmt(lhs), fmt(phi(x)))
    return None


def _b3(S, config, rng) -> Locus | None:
    ws = _weights_for(S, config, rng)
    ws += [shift(yoneda_embed(S, p), 1) for p in S.points]
    ws += [constant(S, 1)]
    reps = {tuple(row[j] for row in S.dist) for j in range(len(S))}
    for phi in ws:
        a = is_flat(phi)
        b = is_flat_by_bplus(phi)
        c = is_flat_by_coweights(phi)
        d = phi.values in reps
        if not (a == b == c == d):
            return ("flat", str(phi), f"pairwise={a}", f"B+={b}", f"coweights={c}", f"representable={d}")
    return None


def _b4(S, config, rng) -> Locus | None:
    clusters = zero_clusters(S)
    for _ in range(4):
        cl = sorted(rng.choice(clusters))
        cycle = tuple(S.points[rng.choice(cl)] for _ in range(rng.randint(1, 3)))
        prefix = tuple(rng.choice(S.points) for _ in range(rng.randint(0, 2)))
        net = FiniteNet(S, prefix, cycle)
        if not is_forward_cauchy(net):
            return ("net", prefix, cycle, "cycle inside a cluster is not forward Cauchy")
        w = net_weight(net)
        if not is_flat(w):
            return ("net weight not flat", prefix, cycle, str(w))
        lims, cols = yoneda_limits(net), colimits(w)
        if lims != cols:
            return ("limit vs colimit", prefix, cycle, sorted(lims), sorted(cols))
    return None


def _table_diff(s, t):
    for x in range(len(s)):
        for m in range(1 << len(s)):
            if s.table[x][m] != t.table[x][m]:
                return s.points[x], s.labels(m), fmt(s.table[x][m]), fmt(t.table[x][m])
    return None


def _b5(S, config, rng) -> Locus | None:
    diff = _table_diff(_sigma(S), alexandroff(S))
    return None if diff is None else ("Scott vs Alexandroff",) + diff


def _b6(S, config, rng) -> Locus | None:
    tops = _tops(S)
    tops["coreflection(Gamma)"] = coreflection(alexandroff(S))
    names = list(tops)
    # inclusions dScott <= cScott <= genScott first, then the equalities
    if not tops["dScott"].is_coarser_than(tops["cScott"]):
        return ("dScott not coarser than cScott",)
    if not tops["cScott"].is_coarser_than(tops["genScott"]):
        return ("cScott not coarser than genScott",)
    for a, b in zip(names, names[1:]):
        if tops[a].closed != tops[b].closed:
            extra = sorted(tops[a].closed ^ tops[b].closed)[0]
            return (f"{a} != {b}", [S.points[i] for i in members(extra)])
    return None


def _b7(S, config, rng) -> Locus | None:
    T = gen_space(config, rng, n=rng.randint(1, min(4, config.max_points)))
    for pulled in (False, True):
        f = _gen_map(S, T, rng)
        X = _pullback(S, T, f) if pulled else S
        fmap = PointMap(X, T, f)
        contraction = bool(is_contraction(fmap, _sigma(X), _sigma(T)))
        continuous = fmap.is_non_expansive()
        if continuous:
            for net in _cauchy_nets(X):
                image = net.map(fmap.as_dict(), T)
                if not is_forward_cauchy(image):
                    continuous = False
                    break
                lims_img = yoneda_limits(image)
                if any(fmap(x) not in lims_img for x in yoneda_limits(net)):
                    continuous = False
                    break
        if contraction != continuous:
            return ("contraction vs Yoneda continuity", space_to_obj(X), space_to_obj(T), list(f),
                    f"contraction={contraction}", f"continuous={continuous}")
    return None


def _b8(S, config, rng) -> Locus | None:
    T = gen_space(config, rng, n=rng.randint(1, min(4, config.max_points)))
    f = _gen_map(S, T, rng)
    X = _pullback(S, T, f)
    fmap = PointMap(X, T, f)
    for _ in range(3):
        phi = gen_weight(X, config, rng)
        psi = gen_weight(T, config, rng)
        lhs = bar_distance(kan_extend(fmap, phi), psi)
        rhs = bar_distance(phi, precompose(psi, fmap))
        if lhs != rhs:
            return ("Kan adjunction", space_to_obj(X), space_to_obj(T), list(f), str(phi), str(psi),
                    fmt(lhs), fmt(rhs))
    return None


def _b9(S, config, rng) -> Locus | None:
    rep = check_metric_axioms(S, limit=1)
    if not rep.ok:
        return ("metric axioms", rep.violations[0])
    tables = {"Gamma": alexandroff(S), "Sigma": _sigma(S)}
    seen = set()
    for name, T in _tops(S).items():
        if T.closed not in seen:  # equal topologies give equal tables
            seen.add(T.closed)
            tables[f"omega({name})"] = embed_topology(T)
    for name, t in tables.items():
        r = check_approach_axioms(t, limit=1)
        if not r.ok:
            return ("approach axioms", name, r.violations[0])
    return None


def _b10(S, config, rng) -> Locus | None:
    grid = radius_grid(S) + [INF]
    probes = scott_probes(flat_weight_representatives(S))
    for b in S.points:
        row = S.dist[S.index(b)]
        compact = is_compact_finite(S, b)
        scott = all(is_scott_weight(WeightFn(S, tuple(tminus(r, v) for v in row)), probes=probes) for r in grid)
        if compact != scott:
            return ("compact vs Scott generators", b, f"compact={compact}", f"scott={scott}")
    return None


def _b11(S, config, rng) -> Locus | None:
    sigma = _sigma(S)
    n = len(S)
    for m in range(1, 1 << n):
        A = [S.points[i] for i in members(m)]
        for x in range(n):
            v = compact_basis_finite(S, S.points[x], A)
            if v != sigma.table[x][m]:
                return ("compact-basis formula", S.points[x], A, fmt(v), fmt(sigma.table[x][m]))
    return None


def _b12(S, config, rng) -> Locus | None:
    chains = []
    for net in _cauchy_nets(S)[:4]:
        base = gen_value(config, rng, allow_inf=False)
        kind = rng.choice(("geometric", "harmonic"))
        chains.append(BallChain(kind, centers=net, base=base, scale=Fraction(rng.randint(1, 4))))
    # a finite chain climbing a random path: (x_k, r_k) with r_k = r_{k+1} + d(x_k, x_{k+1})
    path = [rng.choice(S.points) for _ in range(rng.randint(1, 4))]
    r = gen_value(config, rng, allow_inf=False)
    balls = [FormalBall(path[-1], r)]
    for p in reversed(path[:-1]):
        dd = S.d(p, balls[0].center)
        if dd is INF:
            break
        balls.insert(0, FormalBall(p, balls[0].radius + dd))
    chains.append(BallChain("finite", tuple(balls)))
    chains = [c for c in chains if chain_is_directed(c, S)]
    shifts = [gen_value(config, rng, allow_inf=False) for _ in range(2)] + [ZERO]
    rep = check_condition_S_instance(S, chains, shifts)
    if not rep.ok:
        return ("condition (S)",) + tuple(rep.witness)
    # joins are upper bounds
    for c in chains:
        j = chain_join(c, S)
        if c.kind == "finite" and not all(ball_leq(b, j, S) for b in c.balls):
            return ("join below a member", str(j))
    return None


_CHECK_FNS: dict[str, Callable] = {
    "B1": _b1, "B2": _b2, "B3": _b3, "B4": _b4, "B5": _b5, "B6": _b6,
    "B7": _b7, "B8": _b8, "B9": _b9, "B10": _b10, "B11": _b11, "B12": _b12,
}


# ---------------------------------------------------------------------------
# running and reporting


@dataclass(frozen=True)
class Witness:
    seed: int
    index: int
    check: str
    space: dict
    locus: tuple
    mutations: tuple[str, ...] = ()

    def to_obj(self) -> dict:
        return {
            "seed": self.seed,
            "index": self.index,
            "check": self.check,
            "mutations": list(self.mutations),
            "space": self.space,
            "locus": _plain(self.locus),
        }


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(t) for t in v]
    if isinstance(v, (frozenset, set)):
        return sorted(_plain(t) for t in v)
    if isinstance(v, dict):
        return {str(k): _plain(t) for k, t in v.items()}
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, Fraction) or v is INF:
        return fmt(v)
    return str(v)


@dataclass
class Report:
    config: TrialConfig
    counts: dict[str, list[int]] = field(default_factory=dict)  # check -> [passed, failed]
    witnesses: list[Witness] = field(default_factory=list)
    wall_time: float = 0.0
    mutations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.witnesses and all(f == 0 for _, f in self.counts.values())

    def merge(self, other: "Report") -> "Report":
        out = Report(self.config, {k: list(v) for k, v in self.counts.items()}, list(self.witnesses),
                     self.wall_time + other.wall_time, self.mutations)
        for k, (p, f) in other.counts.items():
            cur = out.counts.setdefault(k, [0, 0])
            cur[0] += p
            cur[1] += f
        out.witnesses = sorted(out.witnesses + other.witnesses, key=lambda w: (w.index, CHECKS.index(w.check)))
        return out

    def body(self) -> str:
        """Deterministic text: everything but the wall time."""
        c = self.config
        lines = [
            f"seed: {c.seed}",
            f"trials: {c.trials}",
            f"max_points: {c.max_points}",
            f"mutations: {','.join(self.mutations) or 'none'}",
        ]
        for k in c.checks:
            p, f = self.counts.get(k, [0, 0])
            lines.append(f"{k}: {'PASS' if f == 0 else 'FAIL'} passed={p} failed={f}")
        lines.append(f"witnesses: {len(self.witnesses)}")
        for w in self.witnesses:
            lines.append("witness " + json.dumps(w.to_obj(), sort_keys=True))
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)

    def render(self) -> str:
        return self.body() + f"\nwall_time: {self.wall_time:.2f}s"


def _rng(seed: int, index: int, tag: str = "") -> random.Random:
    return random.Random(f"{seed}/{index}" + (f"/{tag}" if tag else ""))


def run_check(check: str, space: FiniteSpace, config: TrialConfig, index: int) -> tuple | None:
    """One check on one space; exceptions count as failures with their message as locus."""
    fn = _CHECK_FNS[check] if check in _CHECK_FNS else _SEARCH_ONLY[check]
    try:
        return fn(space, config, _rng(config.seed, index, check))
    except Exception as e:  # noqa: BLE001 - any crash is a reportable failure
        return ("exception", type(e).__name__, str(e))


def run_trial(config: TrialConfig, index: int) -> Report:
    space = gen_space(config, _rng(config.seed, index))
    rep = Report(config, {k: [0, 0] for k in config.checks}, mutations=_mutation.current())
    for check in config.checks:
        locus = run_check(check, space, config, index)
        if locus is None:
            rep.counts[check][0] += 1
        else:
            rep.counts[check][1] += 1
            rep.witnesses.append(Witness(config.seed, index, check, space_to_obj(space), locus,
                                         _mutation.current()))
    return rep


def run_battery(config: TrialConfig, progress: Callable[[int], None] | None = None) -> Report:
    t0 = time.perf_counter()
    rep = Report(config, {k: [0, 0] for k in config.checks}, mutations=_mutation.current())
    for i in range(config.trials):
        rep = rep.merge(run_trial(config, i))
        if progress:
            progress(i)
    rep.wall_time = time.perf_counter() - t0
    return rep


def replay(witness: Witness | dict, config: TrialConfig | None = None) -> tuple | None:
    """Re-run the witness's check on its serialized space under its mutations."""
    if isinstance(witness, dict):
        w = witness
        witness = Witness(w["seed"], w["index"], w["check"], w["space"], tuple(w["locus"]),
                          tuple(w.get("mutations", ())))
    config = config or TrialConfig(seed=witness.seed)
    if config.seed != witness.seed:
        config = TrialConfig(**{**config.__dict__, "seed": witness.seed})
    with _mutation.mutate(*witness.mutations):
        space = space_from_obj(witness.space)
        return run_check(witness.check, space, config, witness.index)


# ---------------------------------------------------------------------------
# counterexample search

SEARCH_TARGETS = CHECKS + ("cScott≠genScott",)
_TARGET_ALIASES = {"cScott!=genScott": "cScott≠genScott", "cscott-genscott": "cScott≠genScott"}


def _cscott_vs_genscott(S, config, rng) -> Locus | None:
    tops = _tops(S)
    a, b = tops["cScott"].closed, tops["genScott"].closed
    if a != b:
        return ("cScott != genScott", sorted(a ^ b)[0])
    return None


_SEARCH_ONLY = {"cScott≠genScott": _cscott_vs_genscott}


def search_counterexample(target: str, config: TrialConfig) -> Report:
    """Budget-bounded random search; an empty witness list means only
    'no witness within budget'."""
    target = _TARGET_ALIASES.get(target, target)
    if target not in SEARCH_TARGETS:
        raise ValueError(f"unknown search target {target!r}; choose from {', '.join(SEARCH_TARGETS)}")
    fn = _SEARCH_ONLY.get(target) or _CHECK_FNS[target]
    t0 = time.perf_counter()
    cfg = TrialConfig(**{**config.__dict__, "checks": ()})
    rep = Report(cfg, {target: [0, 0]}, mutations=_mutation.current())
    for i in range(config.trials):
        S = gen_space(config, _rng(config.seed, i))
        try:
            locus = fn(S, config, _rng(config.seed, i, target))
        except Exception as e:  # noqa: BLE001
            locus = ("exception", type(e).__name__, str(e))
        if locus is None:
            rep.counts[target][0] += 1
        else:
            rep.counts[target][1] += 1
            rep.witnesses.append(Witness(config.seed, i, target, space_to_obj(S), locus, _mutation.current()))
    rep.wall_time = time.perf_counter() - t0
    return rep


def search_body(rep: Report, target: str) -> str:
    p, f = next(iter(rep.counts.values()))
    lines = [f"target: {target}", f"seed: {rep.config.seed}", f"budget: {rep.config.trials}",
             f"searched: {p + f}", f"witnesses: {len(rep.witnesses)}"]
    for w in rep.witnesses:
        lines.append("witness " + json.dumps(w.to_obj(), sort_keys=True))
    lines.append("result: " + ("no witness within budget" if not rep.witnesses else "witness found"))
    return "\n".join(lines)


def iter_checks(names: Iterable[str]) -> tuple[str, ...]:
    out = []
    for n in names:
        n = n.strip().upper()
        if n not in CHECKS:
            raise ValueError(f"unknown check {n!r}")
        out.append(n)
    return tuple(out)
