"""JSON formats (all carry ``"format": 1``) and compact inline notations.

Inline signatures: ``[a,b,c]`` is a symmetric signature listed by Hamming
weight, ``(a,b,c,d)`` is a full table in index order.
"""
from __future__ import annotations

import json
import os

from .config import get_config
from .errors import ParseError
from .exactnum import format_scalar, parse_scalar
from .gadget import GadgetGraph
from .holant import CSPInstance, HolantInstance, WeightedGraph
from .signature import BinaryMatrix, Signature, detect_symmetric

FORMAT = 1


def _scalar(x, mode):
    if isinstance(x, bool):
        raise ParseError(f"boolean {x!r} is not a scalar")
    if isinstance(x, (int, float)):
        x = str(x)
    if not isinstance(x, str):
        raise ParseError(f"expected a scalar string, got {type(x).__name__}")
    return parse_scalar(x, mode)


def _check_format(obj):
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    fmt = obj.get("format", FORMAT)
    if fmt != FORMAT:
        raise ParseError(f"unsupported format version {fmt!r}")


def signature_from_json(obj) -> Signature:
    _check_format(obj)
    mode = obj.get("mode") or get_config().mode
    if "symmetric" in obj:
        vals = [_scalar(v, mode) for v in obj["symmetric"]]
        sig = Signature.symmetric(vals, mode)
    elif "entries" in obj:
        sig = Signature([_scalar(v, mode) for v in obj["entries"]], mode)
    else:
        raise ParseError("signature needs 'entries' or 'symmetric'")
    if "arity" in obj and obj["arity"] != sig.arity:
        raise ParseError(f"declared arity {obj['arity']} but table has arity {sig.arity}")
    return sig


def signature_to_json(sig: Signature, name: str | None = None) -> dict:
    out: dict = {"format": FORMAT}
    if name is not None:
        out["name"] = name
    out["arity"] = sig.arity
    out["mode"] = sig.mode
    out["entries"] = [format_scalar(v) for v in sig.table]
    sym = detect_symmetric(sig)
    if sym is not None:
        out["symmetric"] = [format_scalar(v) for v in sym.values]
    return out


def _split_top(body: str, offset: int) -> list:
    parts, depth, start = [], 0, 0
    for j, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((body[start:j], offset + start))
            start = j + 1
    parts.append((body[start:], offset + start))
    return parts


def parse_inline_signature(text: str, mode: str | None = None) -> Signature:
    mode = mode or get_config().mode
    s = text.strip()
    if len(s) < 2 or (s[0], s[-1]) not in (("[", "]"), ("(", ")")):
        raise ParseError("inline signature must be [..] (symmetric) or (..) (table)", 0)
    vals = []
    for part, pos in _split_top(s[1:-1], 1):
        try:
            vals.append(parse_scalar(part, mode))
        except ParseError as e:
            raise ParseError(f"bad entry {part.strip()!r}", pos + (e.position or 0)) from None
    if s[0] == "(" and (len(vals) & (len(vals) - 1)):
        raise ParseError(f"table length {len(vals)} is not a power of two", 0)
    return Signature.symmetric(vals, mode) if s[0] == "[" else Signature(vals, mode)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg}", e.pos) from None


def load_signature(ref: str, mode: str | None = None) -> Signature:
    """A file path (JSON signature object) or an inline signature."""
    if os.path.exists(ref):
        obj = _read_json(ref)
        if mode and isinstance(obj, dict):
            obj = {**obj, "mode": mode}
        return signature_from_json(obj)
    return parse_inline_signature(ref, mode)


def sigset_from_json(obj, base_dir: str = ".", mode: str | None = None) -> list:
    if isinstance(obj, dict):
        _check_format(obj)
        obj = obj.get("signatures")
    if not isinstance(obj, list):
        raise ParseError("signature set must be a JSON array")
    out = []
    for item in obj:
        if isinstance(item, str):
            path = item if os.path.isabs(item) else os.path.join(base_dir, item)
            out.append(load_signature(path if os.path.exists(path) else item, mode))
        else:
            if mode:
                item = {**item, "mode": mode}
            out.append(signature_from_json(item))
    return out


def load_sigset(path: str, mode: str | None = None) -> list:
    return sigset_from_json(_read_json(path), os.path.dirname(os.path.abspath(path)), mode)


def instance_from_json(obj, mode: str | None = None):
    _check_format(obj)
    mode = mode or obj.get("mode") or get_config().mode
    kind = obj.get("kind")

    def sig(o):
        if isinstance(o, str):
            return parse_inline_signature(o, mode)
        return signature_from_json({**o, "mode": mode})

    try:
        if kind == "holant":
            return HolantInstance(
                [sig(s) for s in obj["signatures"]],
                [list(i) for i in obj["incidence"]],
                obj["n_edges"],
                obj.get("sides"),
            )
        if kind == "csp":
            cons = [(sig(c["signature"]), list(c["vars"])) for c in obj["constraints"]]
            return CSPInstance(obj["n_vars"], cons, obj.get("max_occurrence"))
        if kind == "graph":
            edges = [(u, v, _scalar(w, mode)) for u, v, w in obj["edges"]]
            return WeightedGraph(obj["n"], edges)
    except KeyError as e:
        raise ParseError(f"{kind} instance is missing field {e.args[0]!r}") from None
    raise ParseError(f"unknown instance kind {kind!r}")


def load_instance(path: str, mode: str | None = None):
    return instance_from_json(_read_json(path), mode)


def parse_matrix(text: str, mode: str | None = None) -> BinaryMatrix:
    """``[[a,b],[c,d]]`` with scalar strings or numbers, or a JSON file."""
    mode = mode or get_config().mode
    if os.path.exists(text):
        rows = _read_json(text)
        if isinstance(rows, dict):
            _check_format(rows)
            rows = rows.get("matrix")
    else:
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ParseError("matrix must look like [[a,b],[c,d]]", 0)
        rows = [[p for p, _ in _split_top(r.strip()[1:-1], 0)] for r, _ in _split_top(s[1:-1], 1)]
    if not isinstance(rows, list) or len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ParseError("matrix must be 2x2")
    return BinaryMatrix.of([[_scalar(x.strip() if isinstance(x, str) else x, mode) for x in r] for r in rows], mode)


def gadget_to_json(gg: GadgetGraph) -> dict:
    out = {
        "format": FORMAT,
        "vertices": [
            {"signature": signature_to_json(v.sig), "side": v.side, "label": v.label} for v in gg.vertices
        ],
        "edges": [[list(a), list(b)] for a, b in gg.edges],
        "dangling": [list(p) for p in gg.dangling],
    }
    if gg.rotation is not None:
        out["rotation"] = {str(k): list(v) for k, v in sorted(gg.rotation.items())}
    return out


def gadget_from_json(obj) -> GadgetGraph:
    _check_format(obj)
    gg = GadgetGraph(rotation=None)
    for v in obj["vertices"]:
        gg.add(signature_from_json(v["signature"]), v.get("side"), v.get("label", ""))
    for a, b in obj["edges"]:
        gg.connect(tuple(a), tuple(b))
    for p in obj["dangling"]:
        gg.dangle(tuple(p))
    if "rotation" in obj:
        gg.rotation = {int(k): list(v) for k, v in obj["rotation"].items()}
    return gg


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


__all__ = [
    "FORMAT",
    "signature_from_json",
    "signature_to_json",
    "parse_inline_signature",
    "load_signature",
    "sigset_from_json",
    "load_sigset",
    "instance_from_json",
    "load_instance",
    "parse_matrix",
    "gadget_to_json",
    "gadget_from_json",
    "dumps",
]
