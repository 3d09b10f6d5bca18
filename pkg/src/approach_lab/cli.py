"""Command line front end.  Exit status: 0 all pass, 1 a failure or witness, 2 bad usage or input."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import _mutation
from .algebraic import AlgebraicSpec, CertificationError, gn_case_study, scott_distance_algebraic
from .approach import alexandroff, check_approach_axioms, scott_distance_finite
from .balls import topologies
from .costs import fmt
from .harness import (
    CHECKS,
    SEARCH_TARGETS,
    TrialConfig,
    default_seed,
    iter_checks,
    run_battery,
    search_body,
    search_counterexample,
)
from .io import FormatError, algebraic_spec_from_obj, load_json, load_weight, space_from_obj, table_from_obj
from .spaces import CanonicalSpace, FiniteSpace, SpaceError, check_metric_axioms
from .weights import colimits, is_cauchy, is_flat, is_scott_weight, residual_coweight


class UsageError(Exception):
    pass


def _points(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()] if text.strip() else []


def _finite_space(path: str) -> FiniteSpace:
    space = space_from_obj(load_json(path), path)
    if not isinstance(space, FiniteSpace):
        raise UsageError(f"{path}: expected a finite space, got {space.name}")
    return space


def _check_points(space: FiniteSpace, labels: Sequence[str]) -> None:
    for p in labels:
        if p not in space.points:
            raise UsageError(f"unknown point {p!r}; points are {', '.join(space.points)}")


# ---------------------------------------------------------------------------
# verbs


def cmd_check(args, out) -> int:
    obj = load_json(args.file)
    if isinstance(obj, dict) and "delta" in obj:
        t = table_from_obj(obj, args.file)
        rep = check_approach_axioms(t, limit=1)
        print(f"kind: approach table\npoints: {len(t)}", file=out)
        print(f"axioms: {'PASS' if rep.ok else 'FAIL'}", file=out)
        for v in rep.violations:
            print(f"violation: {v}", file=out)
        return 0 if rep.ok else 1
    space = space_from_obj(obj, args.file)
    if not isinstance(space, FiniteSpace):
        raise UsageError("check needs a finite space or an approach table")
    rep = check_metric_axioms(space)
    print(f"kind: space\npoints: {len(space)}", file=out)
    print(f"metric: {'PASS' if rep.ok else 'FAIL'}", file=out)
    for v in rep.violations[:10]:
        print(f"violation: {v[0]} {' '.join(v[1])}", file=out)
    if rep.ok:
        ax = check_approach_axioms(alexandroff(space), limit=1)
        print(f"alexandroff axioms: {'PASS' if ax.ok else 'FAIL'}", file=out)
        return 0 if ax.ok else 1
    return 1


def cmd_dist(args, out) -> int:
    space = _finite_space(args.file)
    A = _points(args.A)
    _check_points(space, [args.x] + A)
    table = alexandroff(space) if args.kind == "alexandroff" else scott_distance_finite(space)
    print(fmt(table.delta(args.x, A)), file=out)
    return 0


def cmd_sigma(args, out) -> int:
    if args.spec:
        spec = algebraic_spec_from_obj(load_json(args.spec), args.spec)
    else:
        try:
            carrier = CanonicalSpace.parse(args.space)
        except SpaceError:
            carrier = _finite_space(args.space)
        basis = f"grid({args.step})" if isinstance(carrier, CanonicalSpace) else None
        spec = AlgebraicSpec(carrier, basis)
    A = _points(args.A)
    if isinstance(spec.carrier, FiniteSpace):
        _check_points(spec.carrier, [args.x] + A)
    try:
        lo, hi = scott_distance_algebraic(spec, args.x, A, args.eps, breakpoints=not args.no_breakpoints)
    except CertificationError as e:
        print(f"error: {e}", file=out)
        return 1
    print(fmt(lo) if lo == hi else f"[{fmt(lo)}, {fmt(hi)}]", file=out)
    return 0


def cmd_topology(args, out) -> int:
    space = _finite_space(args.file)
    tops = topologies(space)
    for name, T in tops.items():
        sets = " ".join("{" + ",".join(c) + "}" for c in T.closed_sets())
        print(f"{name}: {sets}", file=out)
    equal = len({T.closed for T in tops.values()}) == 1
    print(f"equal: {'yes' if equal else 'no'}", file=out)
    return 0 if equal else 1


def cmd_weights(args, out) -> int:
    space = _finite_space(args.space)
    phi = load_weight(args.weight, space)
    print(f"weight: {phi}", file=out)
    print(f"flat: {'yes' if is_flat(phi) else 'no'}", file=out)
    print(f"cauchy: {'yes' if is_cauchy(phi) else 'no'}", file=out)
    if is_cauchy(phi):
        print(f"coweight: {residual_coweight(phi)}", file=out)
    print(f"scott: {'yes' if is_scott_weight(phi) else 'no'}", file=out)
    cols = sorted(colimits(phi))
    print(f"colimits: {','.join(cols) if cols else 'none'}", file=out)
    return 0


def _config(args) -> TrialConfig:
    seed = args.seed if args.seed is not None else default_seed()
    checks = iter_checks(args.checks.split(",")) if getattr(args, "checks", None) else CHECKS
    return TrialConfig(seed=seed, trials=args.trials, max_points=args.max_points, checks=checks)


def cmd_suite(args, out) -> int:
    cfg = _config(args)
    with _mutation.mutate(*args.mutate):
        rep = run_battery(cfg)
    text = rep.render()
    print(text, file=out)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return 0 if rep.ok else 1


def cmd_case_study(args, out) -> int:
    rep = gn_case_study()
    for name in ("metric", "chain_join", "scott_weight", "separation"):
        print(f"{name}: {'PASS' if getattr(rep, name) else 'FAIL'}", file=out)
    for n in rep.notes:
        print(f"note: {n}", file=out)
    print(f"result: {'PASS' if rep.ok else 'FAIL'}", file=out)
    print(f"wall_time: {rep.seconds:.2f}s", file=out)
    return 0 if rep.ok else 1


def cmd_search(args, out) -> int:
    cfg = _config(args)
    rep = search_counterexample(args.target, cfg)
    print(search_body(rep, args.target), file=out)
    return 0 if not rep.witnesses else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="approach-lab", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", help="validate a space or approach-table file")
    c.add_argument("file")
    c.set_defaults(fn=cmd_check)

    d = sub.add_parser("dist", help="point-set distance on a finite space")
    d.add_argument("kind", choices=("alexandroff", "scott"))
    d.add_argument("file")
    d.add_argument("--x", required=True)
    d.add_argument("--A", required=True, help="comma separated points; empty for the empty set")
    d.set_defaults(fn=cmd_dist)

    s = sub.add_parser("sigma", help="Scott distance from a compact basis")
    s.add_argument("--space", default="DR", help="DL, DR or a finite space file")
    s.add_argument("--spec", help="algebraic spec file (overrides --space)")
    s.add_argument("--x", required=True)
    s.add_argument("--A", required=True)
    s.add_argument("--eps", default="1/1024")
    s.add_argument("--step", default="1", help="grid step of the basis enumeration")
    s.add_argument("--no-breakpoints", action="store_true", help="bracket by branch-and-bound instead")
    s.set_defaults(fn=cmd_sigma)

    t = sub.add_parser("topology", help="the four topologies of a finite space")
    t.add_argument("file")
    t.set_defaults(fn=cmd_topology)

    w = sub.add_parser("weights", help="weight calculus")
    wsub = w.add_subparsers(dest="wverb", required=True)
    wc = wsub.add_parser("classify")
    wc.add_argument("space")
    wc.add_argument("weight")
    wc.set_defaults(fn=cmd_weights)

    def battery_opts(q, trials: int) -> None:
        q.add_argument("--seed", type=int, default=None)
        q.add_argument("--trials", type=int, default=trials)
        q.add_argument("--max-points", type=int, default=6)

    u = sub.add_parser("suite", help="run the theorem battery")
    battery_opts(u, 500)
    u.add_argument("--checks", help="comma separated subset of B1..B12")
    u.add_argument("--mutate", action="append", default=[], choices=sorted(_mutation.KNOWN))
    u.add_argument("--out", help="also write the report here")
    u.set_defaults(fn=cmd_suite)

    cs = sub.add_parser("case-study", help="built-in case studies")
    cs.add_argument("name", choices=("gn",))
    cs.set_defaults(fn=cmd_case_study)

    se = sub.add_parser("search", help="counterexample search")
    se.add_argument("target", help=f"one of {', '.join(SEARCH_TARGETS)}")
    battery_opts(se, 100)
    se.set_defaults(fn=cmd_search)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args, out)
    except (UsageError, FormatError, SpaceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
