"""Command-line front end.

Every subcommand writes one JSON value to stdout and diagnostics to stderr.
Exit codes: 0 success, 1 property failure (a verification that ran and
failed), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import classify, jsonio, verify
from .bezout import restricted_bezout
from .errors import (
    DegeneratePeriodic,
    EmptyWord,
    EpshiftError,
    IncompatibleAlphabets,
    InputTooLarge,
    InvalidSpec,
    MalformedCell,
    NonPositive,
    NotCoprime,
    SymbolAbsent,
    UnknownSymbol,
    WrongAlphabet,
)
from .sequences import EPSeq, PeriodicSeq, anomaly_size, canonical, least_period, remove_anomaly, similar
from .sturmian import (
    Frequency,
    SturmianSpec,
    TYPE_S,
    TYPE_SPRIME,
    cell_series,
    expand_cells,
    skew_sturmian,
)

USAGE_ERRORS = (
    NotCoprime,
    NonPositive,
    InputTooLarge,
    InvalidSpec,
    DegeneratePeriodic,
    IncompatibleAlphabets,
    UnknownSymbol,
    EmptyWord,
    MalformedCell,
    WrongAlphabet,
    SymbolAbsent,
    ValueError,
)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _fail(kind: str, message: str, code: int) -> int:
    _emit({"error": {"kind": kind, "message": message}})
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_epseq(path: str) -> EPSeq:
    with open(path, "r", encoding="utf-8") as fh:
        return jsonio.parse_epseq(json.load(fh))


def _pretty_ep(x: EPSeq) -> str:
    w, v = x.period_word.text, x.anomaly.text
    return f"…{w} {w} [{v}] {w} {w}…"


def _pretty_per(p: PeriodicSeq) -> str:
    w = p.period_word.text
    return f"…{w} {w} {w}… (phase {p.phase})"


def _parse_freq(text: str) -> Frequency:
    if text == "inf":
        return Frequency.infinity()
    if text == "0":
        return Frequency.zero()
    if "/" in text:
        qs, ps = text.split("/", 1)
        return Frequency.rational(int(qs), int(ps))
    raise InvalidSpec(f"frequency must be q/p, 0 or inf, got {text!r}")


def cmd_bezout(args) -> int:
    bp = restricted_bezout(args.q, args.p)
    _emit({"a": bp.a, "b": bp.b, "check": "b*q-a*p=1"})
    return 0


def cmd_sturmian_gen(args) -> int:
    freq = _parse_freq(args.freq)
    stype = TYPE_S if args.type == "S" else TYPE_SPRIME
    spec = SturmianSpec(freq, stype, args.m)
    if args.emit == "epseq":
        x = skew_sturmian(spec)
        obj = jsonio.emit_epseq(x)
        if args.pretty:
            obj["pretty"] = _pretty_ep(x)
        _emit(obj)
        return 0
    if freq.kind != "rational":
        raise InvalidSpec(f"--emit {args.emit} needs a rational frequency")
    half = args.cells if args.cells is not None else 2 * (freq.p + 1) + 2
    cs = cell_series(spec, spec.m - half, spec.m + half)
    if args.emit == "cells":
        _emit([c.text for c in cs.cells])
    else:
        _emit(expand_cells(cs).text)
    return 0


def cmd_ep(args) -> int:
    x = _load_epseq(args.file)
    if args.ep_cmd == "anomaly-size":
        obj = {"anomaly_size": anomaly_size(x), "least_period": least_period(x)}
    elif args.ep_cmd == "least-period":
        obj = {"least_period": least_period(x)}
    elif args.ep_cmd == "canonical":
        c = canonical(x)
        obj = jsonio.emit_epseq(c)
        if args.pretty:
            obj["pretty"] = _pretty_ep(c)
    elif args.ep_cmd == "remove-anomaly":
        p = remove_anomaly(x)
        obj = jsonio.emit_perseq(p)
        if args.pretty:
            obj["pretty"] = _pretty_per(p)
    elif args.ep_cmd == "similar":
        y = _load_epseq(args.other)
        obj = {"similar": similar(x, y)}
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown ep subcommand {args.ep_cmd!r}")
    if args.pretty and "pretty" not in obj and args.ep_cmd in ("anomaly-size", "least-period"):
        obj["pretty"] = _pretty_ep(x)
    _emit(obj)
    return 0


def cmd_classify(args) -> int:
    if args.classify_cmd == "conjugate":
        x, y = _load_epseq(args.a), _load_epseq(args.b)
        res = classify.conjugate_ep(x, y)
        obj = {
            "conjugate": res,
            "invariants": {
                "x": {"least_period": least_period(x), "anomaly_size": anomaly_size(x)},
                "y": {"least_period": least_period(y), "anomaly_size": anomaly_size(y)},
            },
        }
        if args.witness:
            if res:
                fwd, inv = classify.conjugacy_witness(x, y)
                with open(args.witness, "w", encoding="utf-8") as fh:
                    json.dump(jsonio.emit_conjugacy(fwd, inv), fh, indent=2)
                obj["witness"] = args.witness
            else:
                obj["witness"] = None
        _emit(obj)
        return 0
    if args.classify_cmd == "flow":
        x, y = _load_epseq(args.a), _load_epseq(args.b)
        wit = classify.flow_witness(x, y)
        with open(args.witness, "w", encoding="utf-8") as fh:
            json.dump(jsonio.emit_flow_witness(wit), fh, indent=2)
        _emit({
            "flow_equivalent": True,
            "chain_x_moves": len(wit.chain_x),
            "chain_y_moves": len(wit.chain_y),
            "witness": args.witness,
        })
        return 0
    if args.classify_cmd == "check-witness":
        x, y = _load_epseq(args.a), _load_epseq(args.b)
        with open(args.witness_file, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        trail: list[str] = []
        fmt = raw.get("format") if isinstance(raw, dict) else None
        if fmt == jsonio.FLOW_FORMAT:
            wit = jsonio.parse_flow_witness(raw)
            valid = classify.verify_flow_witness(x, y, wit, trail)
        elif fmt == jsonio.CONJUGACY_FORMAT:
            fwd, inv = jsonio.parse_conjugacy(raw)
            valid = _check_conjugacy_pair(x, y, fwd, inv, trail)
        else:
            raise ValueError(f"unrecognized witness format {fmt!r}")
        _emit({"valid": valid, "trail": trail})
        return 0 if valid else 1
    raise ValueError(f"unknown classify subcommand {args.classify_cmd!r}")


def _check_conjugacy_pair(x, y, fwd, inv, trail: list[str]) -> bool:
    try:
        if not similar(classify.apply_code(fwd, x), canonical(y)):
            trail.append("forward image not similar to target")
            return False
        if not similar(classify.apply_code(inv, y), canonical(x)):
            trail.append("inverse image not similar to source")
            return False
        if classify.composition_shift_offset(fwd, inv, x) is None:
            trail.append("composition is not a shift")
            return False
    except EpshiftError as e:
        trail.append(f"replay error: {e}")
        return False
    return True


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else int(os.environ.get("SUBSHIFT_SEED", "0"))
    bounds = verify.VerifyBounds().capped(args.max_period_sum)

    def progress(chk):
        print(
            f"{chk.status}  {chk.tag}  ({chk.checked} instances, {chk.seconds:.2f}s)",
            file=sys.stderr,
        )

    report = verify.run_all(bounds, seed=seed, progress=progress)
    _emit(report.to_obj())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epshift",
        description="Eventually periodic subshifts: invariants, witnesses, skew Sturmian generators.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_bez = sub.add_parser("bezout", help="restricted Bézout coefficients for (q, p)")
    p_bez.add_argument("q", type=int)
    p_bez.add_argument("p", type=int)
    p_bez.set_defaults(func=cmd_bezout)

    p_st = sub.add_parser("sturmian", help="skew Sturmian generators")
    st_sub = p_st.add_subparsers(dest="sturmian_cmd", required=True)
    p_gen = st_sub.add_parser("gen", help="generate a skew Sturmian sequence")
    p_gen.add_argument("--freq", required=True, help="q/p, 0 or inf")
    p_gen.add_argument("--type", required=True, choices=["S", "Sprime"])
    p_gen.add_argument("--m", type=int, default=0, help="lattice offset (default 0)")
    p_gen.add_argument("--cells", type=int, default=None,
                       help="cells on each side of B_m for cells/symbols output")
    p_gen.add_argument("--emit", choices=["cells", "symbols", "epseq"], default="epseq")
    p_gen.add_argument("--pretty", action="store_true")
    p_gen.set_defaults(func=cmd_sturmian_gen)

    p_ep = sub.add_parser("ep", help="operations on eventually periodic sequences")
    ep_sub = p_ep.add_subparsers(dest="ep_cmd", required=True)
    for name in ("anomaly-size", "least-period", "canonical", "remove-anomaly"):
        q = ep_sub.add_parser(name)
        q.add_argument("file")
        q.add_argument("--pretty", action="store_true")
        q.set_defaults(func=cmd_ep)
    q = ep_sub.add_parser("similar")
    q.add_argument("file")
    q.add_argument("other")
    q.add_argument("--pretty", action="store_true")
    q.set_defaults(func=cmd_ep)

    p_cl = sub.add_parser("classify", help="conjugacy and flow equivalence")
    cl_sub = p_cl.add_subparsers(dest="classify_cmd", required=True)
    q = cl_sub.add_parser("conjugate")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--witness", default=None, help="write a conjugacy witness here")
    q.set_defaults(func=cmd_classify)
    q = cl_sub.add_parser("flow")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--witness", required=True, help="write the flow witness here")
    q.set_defaults(func=cmd_classify)
    q = cl_sub.add_parser("check-witness")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("witness_file")
    q.set_defaults(func=cmd_classify)

    p_ver = sub.add_parser("verify", help="run the theorem-verification suite")
    p_ver.add_argument("--max-period-sum", type=int, default=None,
                       help="cap every p+q bound at this value")
    p_ver.add_argument("--seed", type=int, default=None,
                       help="random-instance seed (default: SUBSHIFT_SEED or 0)")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as e:
        return _fail(type(e).__name__, str(e), 2)
    except (OSError, json.JSONDecodeError) as e:
        return _fail(type(e).__name__, str(e), 2)
    except EpshiftError as e:
        return _fail(type(e).__name__, str(e), 1)


if __name__ == "__main__":
    sys.exit(main())
