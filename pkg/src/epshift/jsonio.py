"""Version-tagged JSON formats for sequences, codes and witnesses.

All emitters are deterministic (sorted code tables, explicit alphabets) so
witnesses serialize reproducibly, and parse(emit(v)) == v for every value
the library produces.
"""

from __future__ import annotations

from typing import Any

from .classify import (
    ConjugacyMove,
    ExpandMove,
    FlowMove,
    FlowWitness,
    SlidingBlockCode,
)
from .sequences import EPSeq, PeriodicSeq, make_ep
from .words import Alphabet, Word, primitive_root, word

EPSEQ_FORMAT = "epseq/1"
PERSEQ_FORMAT = "perseq/1"
CODE_FORMAT = "sbc/1"
CONJUGACY_FORMAT = "conjugacy/1"
FLOW_FORMAT = "flowwitness/1"


def _expect(obj: Any, fmt: str) -> dict:
    if not isinstance(obj, dict):
        raise ValueError(f"expected a JSON object for {fmt}, got {type(obj).__name__}")
    got = obj.get("format")
    if got != fmt:
        raise ValueError(f"expected format {fmt!r}, got {got!r}")
    return obj


def emit_epseq(x: EPSeq) -> dict:
    return {
        "format": EPSEQ_FORMAT,
        "alphabet": list(x.alphabet.labels),
        "period": x.period_word.text,
        "anomaly": x.anomaly.text,
    }


def parse_epseq(obj: Any) -> EPSeq:
    d = _expect(obj, EPSEQ_FORMAT)
    alphabet = Alphabet(tuple(d["alphabet"]))
    return make_ep(word(d["period"], alphabet), word(d["anomaly"], alphabet))


def emit_perseq(p: PeriodicSeq) -> dict:
    return {
        "format": PERSEQ_FORMAT,
        "alphabet": list(p.period_word.alphabet.labels),
        "period": p.period_word.text,
        "phase": p.phase,
    }


def parse_perseq(obj: Any) -> PeriodicSeq:
    d = _expect(obj, PERSEQ_FORMAT)
    if "alphabet" in d:
        alphabet = Alphabet(tuple(d["alphabet"]))
    else:
        # infer from the period text, in order of first occurrence
        seen: list[str] = []
        text = d["period"]
        labels = text[1:-1].split(",") if text.startswith("[") else list(text)
        for lbl in labels:
            if lbl not in seen:
                seen.append(lbl)
        alphabet = Alphabet(tuple(seen))
    w = word(d["period"], alphabet)
    root, _ = primitive_root(w)
    return PeriodicSeq(root, int(d["phase"]) % len(root))


def emit_code(c: SlidingBlockCode) -> dict:
    src, dst = c.source_alphabet, c.target_alphabet
    rows = [
        [Word(block, src).text, dst.labels[out]]
        for block, out in c.entries
    ]
    return {
        "format": CODE_FORMAT,
        "memory": c.memory,
        "anticipation": c.anticipation,
        "source_alphabet": list(src.labels),
        "target_alphabet": list(dst.labels),
        "table": rows,
    }


def parse_code(obj: Any) -> SlidingBlockCode:
    d = _expect(obj, CODE_FORMAT)
    src = Alphabet(tuple(d["source_alphabet"]))
    dst = Alphabet(tuple(d["target_alphabet"]))
    entries = tuple(
        sorted((word(block, src).symbols, dst.index(out)) for block, out in d["table"])
    )
    return SlidingBlockCode(int(d["memory"]), int(d["anticipation"]), entries, src, dst)


def emit_conjugacy(fwd: SlidingBlockCode, inv: SlidingBlockCode) -> dict:
    return {
        "format": CONJUGACY_FORMAT,
        "forward": emit_code(fwd),
        "inverse": emit_code(inv),
    }


def parse_conjugacy(obj: Any) -> tuple[SlidingBlockCode, SlidingBlockCode]:
    d = _expect(obj, CONJUGACY_FORMAT)
    return parse_code(d["forward"]), parse_code(d["inverse"])


def _emit_move(m: FlowMove) -> dict:
    if isinstance(m, ConjugacyMove):
        return {"kind": "conjugacy", "code": emit_code(m.code), "result": emit_epseq(m.result)}
    if isinstance(m, ExpandMove):
        return {
            "kind": "expand",
            "symbol": m.symbol,
            "fresh": m.fresh,
            "result": emit_epseq(m.result),
        }
    raise ValueError(f"unknown move type {type(m).__name__}")


def _parse_move(obj: Any) -> FlowMove:
    kind = obj.get("kind")
    if kind == "conjugacy":
        return ConjugacyMove(parse_code(obj["code"]), parse_epseq(obj["result"]))
    if kind == "expand":
        return ExpandMove(obj["symbol"], obj["fresh"], parse_epseq(obj["result"]))
    raise ValueError(f"unknown move kind {kind!r}")


def emit_flow_witness(w: FlowWitness) -> dict:
    return {
        "format": FLOW_FORMAT,
        "chain_x": [_emit_move(m) for m in w.chain_x],
        "chain_y": [_emit_move(m) for m in w.chain_y],
        "final_forward": emit_code(w.final_forward),
        "final_inverse": emit_code(w.final_inverse),
    }


def parse_flow_witness(obj: Any) -> FlowWitness:
    d = _expect(obj, FLOW_FORMAT)
    return FlowWitness(
        tuple(_parse_move(m) for m in d["chain_x"]),
        tuple(_parse_move(m) for m in d["chain_y"]),
        parse_code(d["final_forward"]),
        parse_code(d["final_inverse"]),
    )
