"""JSON file formats for spaces, weights, tables, topologies, nets and chains.

Every value is written as text (``"3"``, ``"3/2"``, ``"inf"``).  Parse
errors name the file, and the JSON line or the offending field.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebraic import AlgebraicSpec, GNSeq
from .approach import ApproachTable, TopologySpec
from .balls import BallChain, FormalBall
from .costs import ExtValue, ext, fmt
from .spaces import CanonicalSeq, CanonicalSpace, FiniteNet, FiniteSpace, PowerSeq, SpaceError
from .weights import WeightFn, weight

__all__ = [
    "FormatError",
    "load_json",
    "parse_value",
    "space_from_obj",
    "space_to_obj",
    "load_space",
    "weight_from_obj",
    "weight_to_obj",
    "load_weight",
    "table_from_obj",
    "table_to_obj",
    "subset_key",
    "parse_subset_key",
    "topology_from_obj",
    "topology_to_obj",
    "net_from_obj",
    "net_to_obj",
    "chain_from_obj",
    "algebraic_spec_from_obj",
]


class FormatError(ValueError):
    """A file that is not valid JSON or does not match the expected shape."""

    def __init__(self, where: str, message: str) -> None:
        super().__init__(f"{where}: {message}")
        self.where = where


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FormatError(str(path), e.strerror or str(e)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None


def _field(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise FormatError(where, "expected a JSON object")
    if key not in obj:
        raise FormatError(where, f"missing field {key!r}")
    return obj[key]


def parse_value(v: Any, where: str) -> ExtValue:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise FormatError(where, f"value must be text like \"3/2\" or \"inf\", got {v!r}")
    try:
        return ext(v)
    except (ValueError, TypeError) as e:
        raise FormatError(where, str(e)) from None


# ---------------------------------------------------------------------------
# spaces


def space_from_obj(obj: Any, where: str = "space") -> FiniteSpace | CanonicalSpace:
    """A ``{"points", "d"}`` object, or a canonical name such as ``"DR^2"``."""
    if isinstance(obj, str):
        try:
            return CanonicalSpace.parse(obj)
        except SpaceError as e:
            raise FormatError(where, str(e)) from None
    points = _field(obj, "points", where)
    rows = _field(obj, "d", where)
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise FormatError(f"{where}.points", "expected a list of labels")
    if not isinstance(rows, list) or len(rows) != len(points):
        raise FormatError(f"{where}.d", f"expected {len(points)} rows")
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(points):
            raise FormatError(f"{where}.d[{i}]", f"expected {len(points)} entries")
        parsed.append(tuple(parse_value(v, f"{where}.d[{i}][{j}]") for j, v in enumerate(row)))
    try:
        return FiniteSpace(tuple(points), tuple(parsed))
    except SpaceError as e:
        raise FormatError(where, str(e)) from None


def space_to_obj(space: FiniteSpace | CanonicalSpace) -> Any:
    if isinstance(space, CanonicalSpace):
        return space.name
    return {"points": list(space.points), "d": [[fmt(v) for v in row] for row in space.dist]}


def load_space(path: str | Path) -> FiniteSpace | CanonicalSpace:
    return space_from_obj(load_json(path), str(path))


# ---------------------------------------------------------------------------
# weights


def weight_from_obj(obj: Any, where: str = "weight", base: Path | None = None) -> WeightFn:
    """``{"space": <inline space or path>, "values": {point: value}}``."""
    sp = _field(obj, "space", where)
    if isinstance(sp, str) and sp.endswith(".json"):
        path = Path(sp) if base is None or Path(sp).is_absolute() else base / sp
        space = load_space(path)
    else:
        space = space_from_obj(sp, f"{where}.space")
    if not isinstance(space, FiniteSpace):
        raise FormatError(f"{where}.space", "weights are only stored over finite spaces")
    vals = _field(obj, "values", where)
    if not isinstance(vals, dict):
        raise FormatError(f"{where}.values", "expected an object mapping points to values")
    unknown = sorted(set(vals) - set(space.points))
    if unknown:
        raise FormatError(f"{where}.values", f"unknown points {unknown}")
    missing = [p for p in space.points if p not in vals]
    if missing:
        raise FormatError(f"{where}.values", f"missing points {missing}")
    values = {p: parse_value(vals[p], f"{where}.values.{p}") for p in space.points}
    try:
        return weight(space, values)
    except ValueError as e:
        raise FormatError(where, str(e)) from None


def weight_to_obj(phi: WeightFn) -> Any:
    return {"space": space_to_obj(phi.space), "values": {p: fmt(v) for p, v in phi.as_dict().items()}}


def load_weight(path: str | Path, space: FiniteSpace | None = None) -> WeightFn:
    """Load a weight file; ``space`` replaces the file's own space when given."""
    path = Path(path)
    obj = load_json(path)
    if space is not None and isinstance(obj, dict):
        obj = dict(obj, space=space_to_obj(space))
    return weight_from_obj(obj, str(path), base=path.parent)


# ---------------------------------------------------------------------------
# approach tables and topologies


def subset_key(labels) -> str:
    return "{" + ",".join(sorted(labels)) + "}"


def parse_subset_key(text: str, where: str) -> list[str]:
    text = text.strip()
    if text in ("{}", "∅"):
        return []
    if not (text.startswith("{") and text.endswith("}")):
        raise FormatError(where, f"subset must be written {{a,b}}, got {text!r}")
    return [p.strip() for p in text[1:-1].split(",")]


def table_from_obj(obj: Any, where: str = "table") -> ApproachTable:
    """``{"points": [...], "delta": {"x|{a,b}": value}}`` covering every pair."""
    points = _field(obj, "points", where)
    delta = _field(obj, "delta", where)
    if not isinstance(points, list) or not isinstance(delta, dict):
        raise FormatError(where, "expected a points list and a delta object")
    entries = {}
    for key, v in delta.items():
        x, sep, rest = key.partition("|")
        if not sep:
            raise FormatError(f"{where}.delta[{key!r}]", "key must look like x|{a,b}")
        A = frozenset(parse_subset_key(rest, f"{where}.delta[{key!r}]"))
        entries[(x.strip(), A)] = parse_value(v, f"{where}.delta[{key!r}]")
    try:
        return ApproachTable.from_mapping(points, entries)
    except KeyError as e:
        raise FormatError(where, f"unknown point {e.args[0]!r}") from None
    except ValueError as e:
        raise FormatError(where, str(e)) from None


def table_to_obj(t: ApproachTable) -> Any:
    delta = {}
    for x, p in enumerate(t.points):
        for m in range(1 << len(t)):
            delta[f"{p}|{subset_key(t.labels(m))}"] = fmt(t.table[x][m])
    return {"points": list(t.points), "delta": delta}


def topology_from_obj(obj: Any, where: str = "topology") -> TopologySpec:
    points = _field(obj, "points", where)
    closed = _field(obj, "closed", where)
    try:
        return TopologySpec.from_label_sets(points, closed)
    except ValueError as e:
        raise FormatError(where, str(e)) from None


def topology_to_obj(T: TopologySpec) -> Any:
    return {"points": list(T.points), "closed": [list(c) for c in T.closed_sets()]}


# ---------------------------------------------------------------------------
# nets and ball chains

_SEQ_FIELDS = ("limit", "scale", "ratio", "offset", "slope", "value")


def net_from_obj(obj: Any, space, where: str = "net"):
    """``{"prefix", "cycle"}`` over a finite space, or a closed-form sequence."""
    if not isinstance(obj, dict):
        raise FormatError(where, "expected a JSON object")
    try:
        if "cycle" in obj:
            if not isinstance(space, FiniteSpace):
                raise FormatError(where, "prefix/cycle nets need a finite space")
            return FiniteNet(space, tuple(obj.get("prefix", [])), tuple(obj["cycle"]))
        if "coords" in obj:
            return PowerSeq(tuple(net_from_obj(c, None, f"{where}.coords[{i}]") for i, c in enumerate(obj["coords"])))
        form = _field(obj, "form", where)
        params = {k: parse_value(obj[k], f"{where}.{k}") for k in _SEQ_FIELDS if k in obj}
        if obj.get("carrier") == "GN":
            return GNSeq(params.get("limit", 0), params.get("scale", 0), params.get("ratio", ext("1/2")),
                         int(obj.get("sign", 1)))
        carrier = obj.get("carrier") or (space.kind if isinstance(space, CanonicalSpace) else None)
        if carrier is None:
            raise FormatError(where, "sequence needs a carrier")
        return CanonicalSeq(carrier, form, sign=int(obj.get("sign", 1)), start=int(obj.get("start", 0)), **params)
    except SpaceError as e:
        raise FormatError(where, str(e)) from None


def net_to_obj(net) -> Any:
    if isinstance(net, FiniteNet):
        return {"prefix": list(net.prefix), "cycle": list(net.cycle)}
    if isinstance(net, PowerSeq):
        return {"coords": [net_to_obj(c) for c in net.coords]}
    out = {"carrier": net.carrier, "form": net.form}
    for k in _SEQ_FIELDS:
        out[k] = fmt(getattr(net, k))
    out["sign"] = net.sign
    out["start"] = net.start
    return out


def chain_from_obj(obj: Any, space, where: str = "chain") -> BallChain:
    """``{"balls": [[center, r], ...]}`` or a net plus ``"radius"``.

    ``"radius": {"form": "geometric"|"harmonic", "base", "scale", "ratio"}``.
    """
    if not isinstance(obj, dict):
        raise FormatError(where, "expected a JSON object")
    if "balls" in obj:
        balls = []
        for i, b in enumerate(obj["balls"]):
            if not isinstance(b, list) or len(b) != 2:
                raise FormatError(f"{where}.balls[{i}]", "expected [center, radius]")
            balls.append(FormalBall(b[0], parse_value(b[1], f"{where}.balls[{i}][1]")))
        return BallChain("finite", tuple(balls))
    rad = _field(obj, "radius", where)
    centers = net_from_obj(_field(obj, "centers", where), space, f"{where}.centers")
    kind = _field(rad, "form", f"{where}.radius")
    params = {k: parse_value(rad[k], f"{where}.radius.{k}") for k in ("base", "scale", "ratio") if k in rad}
    try:
        return BallChain(kind, centers=centers, **params)
    except ValueError as e:
        raise FormatError(where, str(e)) from None


def algebraic_spec_from_obj(obj: Any, where: str = "spec") -> AlgebraicSpec:
    """``{"carrier": <space>, "basis": "grid(step)" | [points], "bottom": point?}``."""
    carrier = space_from_obj(_field(obj, "carrier", where), f"{where}.carrier")
    basis = obj.get("basis")
    if isinstance(basis, list):
        basis = tuple(basis)
    try:
        return AlgebraicSpec(carrier, basis, obj.get("bottom"))
    except (SpaceError, ValueError) as e:
        raise FormatError(where, str(e)) from None
