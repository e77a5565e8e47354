"""Command-line entry point: ``matchkit <command> ...``.

Exit codes: 0 success, 2 precondition failure, 3 parse error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys

from .classification import classify, classify_mp_type, is_permutable_matchgate
from .config import get_config
from .dichotomy import ProblemVariant, decide
from .errors import ParseError, PreconditionError
from .exactnum import Cyclo, format_scalar
from .gadget import check_rotation_planar, synthesize_star
from .holant import CSPInstance, HolantInstance, WeightedGraph, count_pm, eval_csp, eval_holant
from .io import dumps, gadget_to_json, load_instance, load_sigset, load_signature, parse_matrix, signature_to_json
from .matchgate import is_matchgate, mgi_check, normalize, permutation_preserves_matchgate
from .signature import Signature, transform
from .synthesis import realize_nondeg_binary, realize_symmetric_from_mp
from .gadget import contract


def _plain(x):
    """JSON-ready view of results."""
    if isinstance(x, Signature):
        return signature_to_json(x)
    if isinstance(x, (Cyclo, complex, float)):
        return format_scalar(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: _plain(getattr(x, f.name)) for f in dataclasses.fields(x)}
    return x


def _sig(args, ref):
    return load_signature(ref, args.mode)


def _table(sig: Signature) -> str:
    return "(" + ",".join(format_scalar(v) for v in sig.table) + ")"


def cmd_check(args):
    f = _sig(args, args.sig)
    if args.what == "mgi":
        v = mgi_check(f)
        data = {"ok": v.ok, "witness": v.witness}
        text = "pass" if v.ok else f"fail, witness β={v.witness[0]} γ={v.witness[1]}"
    elif args.what == "matchgate":
        v = is_matchgate(f, strategy="both")
        data = {"ok": v.ok, "witness": v.witness}
        text = "matchgate" if v.ok else "not a matchgate"
    else:
        if args.perm is None:
            raise PreconditionError("check perm needs a permutation")
        try:
            perm = [int(t) for t in args.perm.replace(",", " ").split()]
        except ValueError:
            raise ParseError(f"bad permutation {args.perm!r}") from None
        ok = permutation_preserves_matchgate(f, perm)
        data = {"preserved": ok, "permutation": perm}
        text = "preserved" if ok else "not preserved"
    return data, text


def cmd_classify(args):
    f = _sig(args, args.sig)
    v = classify(f)
    data = {"flags": v.flags(), "witnesses": _plain(v.witnesses)}
    lines = [f"{k}: {'yes' if b else 'no'}" for k, b in v.flags().items()]
    norm = normalize(f)
    if norm is not None and is_permutable_matchgate(f):
        t = classify_mp_type(norm[0])
        data["mp_type"] = _plain(t)
        lines.append(f"permutable type: {t.kind}")
    return data, "\n".join(lines)


def cmd_normalize(args):
    f = _sig(args, args.sig)
    res = normalize(f)
    if res is None:
        return {"normalized": None}, "zero signature, nothing to normalize"
    F, cert = res
    data = {"normalized": signature_to_json(F), "shift": cert.shift, "scale": format_scalar(cert.scale)}
    return data, f"{_table(F)}  shift={cert.shift}  scale={format_scalar(cert.scale)}"


def cmd_synth(args):
    f = _sig(args, args.sig)
    if args.kind == "star":
        st = synthesize_star(f)
        gg = st.to_gadget()
        data = {
            "kind": st.kind,
            "h": signature_to_json(st.h),
            "edges": [signature_to_json(e) for e in st.edge_signatures()],
            "scale": format_scalar(st.scale),
            "gadget": gadget_to_json(gg),
            "planar": check_rotation_planar(gg),
        }
        text = f"{st.kind} star, centre {st.h!r}, scale {format_scalar(st.scale)}"
    elif args.kind == "sym":
        r = realize_symmetric_from_mp(f)
        data = {"case": r.case, "form": r.form, "g": signature_to_json(r.g), "gadget": gadget_to_json(r.gadget)}
        text = f"case {r.case}: {r.g!r} (form {r.form}), {len(r.gadget.vertices)} vertices"
    else:
        gg = realize_nondeg_binary(f)
        g = contract(gg)
        data = {"g": signature_to_json(g), "gadget": gadget_to_json(gg)}
        text = f"binary {_table(g)}"
    return data, text


def cmd_eval(args):
    inst = load_instance(args.inst, args.mode)
    if args.kind == "holant":
        if not isinstance(inst, HolantInstance):
            raise PreconditionError("instance is not a Holant instance")
        z = eval_holant(inst)
    elif args.kind == "csp":
        if not isinstance(inst, CSPInstance):
            raise PreconditionError("instance is not a CSP instance")
        z = eval_csp(inst)
    else:
        if not isinstance(inst, WeightedGraph):
            raise PreconditionError("instance is not a graph")
        z = count_pm(inst)
    return {"value": format_scalar(z)}, f"Z = {format_scalar(z)}"


def cmd_transform(args):
    f = _sig(args, args.sig)
    T = parse_matrix(args.matrix, args.mode or f.mode)
    g = transform(T, f)
    return {"result": signature_to_json(g)}, _table(g)


def cmd_decide(args):
    F = load_sigset(args.sigset, args.mode)
    v = ProblemVariant.parse(args.variant, args.d)
    verdict = decide(F, v)
    data = verdict.to_json()
    if verdict.outcome == "poly":
        text = f"polynomial time ({verdict.cls})"
    else:
        text = "#P-hard; outside " + ", ".join(f"{c} (member {j})" for c, j in verdict.counterexamples.items())
    return data, text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchkit", description="Matchgate and counting CSP toolkit")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--mode", choices=("exact", "float"), default=None)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check")
    c.add_argument("what", choices=("mgi", "matchgate", "perm"))
    c.add_argument("sig")
    c.add_argument("perm", nargs="?")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify")
    c.add_argument("sig")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("normalize")
    c.add_argument("sig")
    c.set_defaults(func=cmd_normalize)

    c = sub.add_parser("synth")
    c.add_argument("kind", choices=("star", "sym", "nondeg"))
    c.add_argument("sig")
    c.set_defaults(func=cmd_synth)

    c = sub.add_parser("eval")
    c.add_argument("kind", choices=("holant", "csp", "pm"))
    c.add_argument("inst")
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("transform")
    c.add_argument("sig")
    c.add_argument("matrix")
    c.set_defaults(func=cmd_transform)

    c = sub.add_parser("decide")
    c.add_argument("sigset")
    c.add_argument("--variant", required=True)
    c.add_argument("--d", type=int, default=None)
    c.set_defaults(func=cmd_decide)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.mode is None:
        args.mode = get_config().mode
    try:
        data, text = args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 3
    except PreconditionError as e:
        print(f"precondition failed: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    if args.json:
        print(dumps({"format": 1, **_plain(data)}))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
