"""Exhaustive small-instance verification of the classification theorems.

Every check pits an operation against an independent route: the Bézout
solver against an exhaustive range scan, the anomaly-size formula against
the brute-force window search, the generators against the cutting-sequence
construction, and every witness against a replayer.  Failures are recorded
as re-parseable counterexamples; an empty failure list is a pass.

The default bounds reproduce the acceptance suite, so `epshift verify`
with no flags is the acceptance run.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Any, Callable, Iterator, Optional

from . import classify, jsonio, sturmian
from .bezout import restricted_bezout
from .errors import DegeneratePeriodic, EpshiftError
from .sequences import (
    EPSeq,
    PeriodicSeq,
    anomaly_size,
    anomaly_windows,
    canonical,
    least_period,
    make_ep,
    remove_anomaly,
    remove_window,
    similar,
)
from .sturmian import (
    Frequency,
    SturmianSpec,
    TYPE_S,
    TYPE_SPRIME,
    cell_series,
    chain_zero_counts,
    cutting_sequence,
    expand_cells,
    skew_sturmian,
    symbol_reverse,
)
from .words import BINARY, Word, is_balanced_chains, rotate

REPORT_FORMAT = "verifyreport/1"


@dataclass
class TheoremCheck:
    """Result record for one verified statement."""

    tag: str
    bounds: dict[str, Any]
    checked: int
    failures: list[dict]
    seconds: float

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def to_obj(self) -> dict:
        return {
            "tag": self.tag,
            "bounds": self.bounds,
            "checked": self.checked,
            "status": self.status,
            "failures": self.failures,
            "seconds": round(self.seconds, 3),
        }

    @staticmethod
    def from_obj(obj: dict) -> "TheoremCheck":
        return TheoremCheck(
            tag=obj["tag"],
            bounds=dict(obj["bounds"]),
            checked=int(obj["checked"]),
            failures=list(obj["failures"]),
            seconds=float(obj["seconds"]),
        )


@dataclass
class VerifyReport:
    checks: list[TheoremCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_obj(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "ok": self.ok,
            "checks": [c.to_obj() for c in self.checks],
        }

    @staticmethod
    def from_obj(obj: dict) -> "VerifyReport":
        if obj.get("format") != REPORT_FORMAT:
            raise ValueError(f"expected format {REPORT_FORMAT!r}")
        return VerifyReport([TheoremCheck.from_obj(c) for c in obj["checks"]])


@dataclass(frozen=True)
class VerifyBounds:
    """Quantification bounds; the defaults are the acceptance criteria."""

    bezout_sum: int = 200
    formula_sum: int = 25
    family_w: int = 4
    family_v: int = 6
    family_random: int = 200
    conj_skew_sum: int = 14
    corollary_sum: int = 20
    flow_sum: int = 12
    flow_random_pairs: int = 50
    crossval_sum: int = 25
    crossval_ms: tuple[int, ...] = (-1, 0, 2)
    reciprocal_sum: int = 20

    def capped(self, max_period_sum: Optional[int]) -> "VerifyBounds":
        if max_period_sum is None:
            return self
        b = max_period_sum
        return replace(
            self,
            bezout_sum=b,
            formula_sum=b,
            conj_skew_sum=b,
            corollary_sum=b,
            flow_sum=b,
            crossval_sum=b,
            reciprocal_sum=b,
        )


def coprime_pairs(max_sum: int) -> Iterator[tuple[int, int]]:
    """All (q, p) with q, p >= 1, q + p <= max_sum, gcd(p, q) = 1."""
    for s in range(2, max_sum + 1):
        for q in range(1, s):
            p = s - q
            if gcd(p, q) == 1:
                yield q, p


def exhaustive_family(wmax: int, vmax: int) -> list[EPSeq]:
    """All (deduplicated) EPSeq(w, v) over {0,1} with |w| <= wmax, |v| <= vmax."""
    out: set[EPSeq] = set()
    for wlen in range(1, wmax + 1):
        for wbits in range(2 ** wlen):
            wsyms = tuple((wbits >> i) & 1 for i in range(wlen))
            w = Word(wsyms, BINARY)
            for vlen in range(1, vmax + 1):
                for vbits in range(2 ** vlen):
                    vsyms = tuple((vbits >> i) & 1 for i in range(vlen))
                    try:
                        out.add(make_ep(w, Word(vsyms, BINARY)))
                    except DegeneratePeriodic:
                        continue
    return sorted(out, key=lambda x: (x.period_word.symbols, x.anomaly.symbols))


def random_ep(rng: random.Random, wmax: int = 7, vmax: int = 10) -> EPSeq:
    while True:
        wsyms = tuple(rng.randrange(2) for _ in range(rng.randint(1, wmax)))
        vsyms = tuple(rng.randrange(2) for _ in range(rng.randint(1, vmax)))
        try:
            return make_ep(Word(wsyms, BINARY), Word(vsyms, BINARY))
        except DegeneratePeriodic:
            continue


def random_instances(count: int, seed: int, wmax: int = 7, vmax: int = 10) -> list[EPSeq]:
    rng = random.Random(seed)
    return [random_ep(rng, wmax, vmax) for _ in range(count)]


def _timed(tag: str, bounds: dict, body: Callable[[list[dict]], int]) -> TheoremCheck:
    failures: list[dict] = []
    t0 = time.perf_counter()
    checked = body(failures)
    return TheoremCheck(tag, bounds, checked, failures, time.perf_counter() - t0)


def check_bezout_oracle(max_sum: int = 200) -> TheoremCheck:
    """Criterion 1: restricted Bézout vs exhaustive scan, uniqueness, and
    coprimality of a+b with p+q."""

    def body(failures: list[dict]) -> int:
        checked = 0
        for q, p in coprime_pairs(max_sum):
            checked += 1
            sols = []
            for a in range(q):
                num = 1 + a * p
                if num % q == 0 and 0 < num // q <= p:
                    sols.append((a, num // q))
            bp = restricted_bezout(q, p)
            if sols != [(bp.a, bp.b)]:
                failures.append({"q": q, "p": p, "oracle": sols, "got": [bp.a, bp.b]})
            elif gcd(bp.a + bp.b, p + q) != 1:
                failures.append({"q": q, "p": p, "reason": "gcd(a+b, p+q) != 1"})
        return checked

    return _timed("bezout-oracle", {"max_period_sum": max_sum}, body)


def _skew(q: int, p: int, stype: str, m: int = 0) -> EPSeq:
    return skew_sturmian(SturmianSpec(Frequency.rational(q, p), stype, m))


def check_anomaly_size_formula(max_sum: int = 25) -> TheoremCheck:
    """Criterion 2: generated skew sequences have least period p+q and the
    anomaly size a+b (type S) or p+q-(a+b) (type S'), where anomaly_size is
    the independent brute-force window search."""

    def body(failures: list[dict]) -> int:
        checked = 0
        for q, p in coprime_pairs(max_sum):
            bp = restricted_bezout(q, p)
            for stype, expected in ((TYPE_S, bp.a + bp.b), (TYPE_SPRIME, p + q - (bp.a + bp.b))):
                checked += 1
                try:
                    x = _skew(q, p, stype)
                    n, a = least_period(x), anomaly_size(x)
                except EpshiftError as e:
                    failures.append({"q": q, "p": p, "type": stype, "error": str(e)})
                    continue
                if n != p + q or a != expected:
                    failures.append(
                        {"q": q, "p": p, "type": stype,
                         "expected": [p + q, expected], "got": [n, a]}
                    )
        return checked

    return _timed("anomaly-size-formula", {"max_period_sum": max_sum}, body)


SPOT_VALUES = (
    # (q, p) -> (least period, type-S anomaly size)
    (1, 1, 2, 1),
    (1, 2, 3, 1),
    (2, 5, 7, 4),
    (3, 5, 8, 3),
)


def check_spot_values() -> TheoremCheck:
    """Criterion 3: frozen spot values for (q,p) in the table above."""

    def body(failures: list[dict]) -> int:
        for q, p, per, size in SPOT_VALUES:
            x = _skew(q, p, TYPE_S)
            if least_period(x) != per or anomaly_size(x) != size:
                failures.append(
                    {"q": q, "p": p, "expected": [per, size],
                     "got": [least_period(x), anomaly_size(x)]}
                )
        return len(SPOT_VALUES)

    return _timed("spot-values", {}, body)


def family_instances(bounds: VerifyBounds, seed: int) -> list[EPSeq]:
    fam = exhaustive_family(bounds.family_w, bounds.family_v)
    fam.extend(random_instances(bounds.family_random, seed))
    return fam


def check_window_lemmas(bounds: VerifyBounds, seed: int = 0) -> TheoremCheck:
    """Criterion 4: all anomaly-window removals of one sequence are
    pointwise-equal periodic sequences, and all window lengths are
    congruent mod the least period."""

    def body(failures: list[dict]) -> int:
        fam = family_instances(bounds, seed)
        for x in fam:
            n = least_period(x)
            wins = anomaly_windows(x)
            entry = jsonio.emit_epseq(x)
            if not any(w.start == 0 and w.length == len(x.anomaly) for w in wins):
                failures.append({"instance": entry, "reason": "stored anomaly not found"})
                continue
            if any((w.length - len(x.anomaly)) % n != 0 for w in wins):
                failures.append({"instance": entry, "reason": "window length not congruent"})
                continue
            removals = [remove_window(x, w) for w in wins]
            if not all(isinstance(r, PeriodicSeq) for r in removals):
                failures.append({"instance": entry, "reason": "removal not periodic"})
                continue
            base = removals[0]
            if not all(base.same_sequence(r) for r in removals[1:]):
                failures.append({"instance": entry, "reason": "removals differ pointwise"})
        return len(fam)

    return _timed(
        "window-lemmas",
        {"family_w": bounds.family_w, "family_v": bounds.family_v,
         "random": bounds.family_random, "seed": seed},
        body,
    )


def _witness_verifies(x: EPSeq, y: EPSeq) -> Optional[str]:
    """Build a conjugacy witness for (x, y) and check it independently;
    returns a failure reason or None."""
    fwd, inv = classify.conjugacy_witness(x, y)
    if not similar(classify.apply_code(fwd, x), canonical(y)):
        return "forward image not similar to target"
    if not similar(classify.apply_code(inv, y), canonical(x)):
        return "inverse image not similar to source"
    if classify.composition_shift_offset(fwd, inv, x) is None:
        return "composition is not a shift"
    img_per = classify.apply_code_to_periodic(fwd, remove_anomaly(x))
    target_per = remove_anomaly(y)
    n = target_per.least_period
    if img_per.least_period != n:
        return "periodic orbit least period not preserved"
    if not any(rotate(target_per.period_word, r) == img_per.period_word for r in range(n)):
        return "periodic orbit not mapped onto the target orbit"
    return None


def check_conjugacy_witnesses(bounds: VerifyBounds, seed: int = 0) -> TheoremCheck:
    """Criterion 5: whenever the invariants say conjugate, a witness exists
    and verifies.  Instances are grouped by invariant class and each member
    is paired with its class representative; all conjugate skew pairs with
    p+q <= conj_skew_sum are checked as well."""

    def body(failures: list[dict]) -> int:
        checked = 0
        groups: dict[tuple[int, int], list[EPSeq]] = {}
        for x in family_instances(bounds, seed):
            groups.setdefault((least_period(x), anomaly_size(x) % least_period(x)), []).append(x)
        for members in groups.values():
            rep = members[0]
            for other in members[1:]:
                checked += 1
                try:
                    reason = _witness_verifies(rep, other)
                except EpshiftError as e:
                    reason = f"witness construction failed: {e}"
                if reason:
                    failures.append(
                        {"x": jsonio.emit_epseq(rep), "y": jsonio.emit_epseq(other),
                         "reason": reason}
                    )
        for q, p in coprime_pairs(bounds.conj_skew_sum):
            checked += 1
            x = _skew(q, p, TYPE_S)
            y = _skew(p, q, TYPE_SPRIME)
            try:
                reason = _witness_verifies(x, y)
            except EpshiftError as e:
                reason = f"witness construction failed: {e}"
            if reason:
                failures.append({"q": q, "p": p, "reason": reason})
        return checked

    return _timed(
        "conjugacy-witnesses",
        {"family_w": bounds.family_w, "family_v": bounds.family_v,
         "random": bounds.family_random, "skew_sum": bounds.conj_skew_sum, "seed": seed},
        body,
    )


def _all_specs(max_sum: int) -> list[SturmianSpec]:
    specs = [SturmianSpec(Frequency.infinity(), TYPE_S),
             SturmianSpec(Frequency.zero(), TYPE_SPRIME)]
    for q, p in coprime_pairs(max_sum):
        specs.append(SturmianSpec(Frequency.rational(q, p), TYPE_S))
        specs.append(SturmianSpec(Frequency.rational(q, p), TYPE_SPRIME))
    return specs


def check_conjugacy_classes(max_sum: int = 20) -> TheoremCheck:
    """Criterion 6: over all specs with p+q <= max_sum plus the Infinity/S
    and Zero/S' cases, the invariant-level conjugacy relation partitions
    the specs exactly into the pairs {spec, inverse-frequency-opposite-type}."""

    def body(failures: list[dict]) -> int:
        specs = _all_specs(max_sum)
        seqs = {s: skew_sturmian(s) for s in specs}
        checked = 0
        for s in specs:
            partner_set = classify.skew_conjugacy_class(s)
            if len(partner_set) != 2:
                failures.append({"spec": _spec_obj(s), "reason": "class is not a pair"})
                continue
            for t in specs:
                checked += 1
                expected = t in partner_set
                got = classify.conjugate_ep(seqs[s], seqs[t])
                if got != expected:
                    failures.append(
                        {"x": _spec_obj(s), "y": _spec_obj(t),
                         "expected": expected, "got": got}
                    )
        return checked

    return _timed("conjugacy-classes", {"max_period_sum": max_sum}, body)


def _spec_obj(s: SturmianSpec) -> dict:
    return {"freq": s.freq.text, "type": s.stype, "m": s.m}


def check_flow_witnesses(bounds: VerifyBounds, seed: int = 0) -> TheoremCheck:
    """Criterion 7: flow witnesses construct and replay for every pair of
    skew specs with p+q <= flow_sum (plus the two limit specs) and for
    seeded random EPSeq pairs."""

    def body(failures: list[dict]) -> int:
        specs = _all_specs(bounds.flow_sum)
        seqs = [skew_sturmian(s) for s in specs]
        pairs: list[tuple[EPSeq, EPSeq, dict]] = []
        for i, x in enumerate(seqs):
            for j in range(i, len(seqs)):
                pairs.append((x, seqs[j], {"x": _spec_obj(specs[i]), "y": _spec_obj(specs[j])}))
        rng = random.Random(seed)
        for _ in range(bounds.flow_random_pairs):
            x = random_ep(rng, wmax=3, vmax=4)
            y = random_ep(rng, wmax=3, vmax=4)
            pairs.append((x, y, {"x": jsonio.emit_epseq(x), "y": jsonio.emit_epseq(y)}))
        for x, y, ident in pairs:
            trail: list[str] = []
            try:
                wit = classify.flow_witness(x, y)
                ok = classify.verify_flow_witness(x, y, wit, trail)
            except EpshiftError as e:
                ok = False
                trail.append(str(e))
            if not ok:
                failures.append({**ident, "trail": trail})
        return len(pairs)

    return _timed(
        "flow-witnesses",
        {"max_period_sum": bounds.flow_sum, "random_pairs": bounds.flow_random_pairs,
         "seed": seed},
        body,
    )


def check_generator_crossval(max_sum: int = 25, ms: tuple[int, ...] = (-1, 0, 2)) -> TheoremCheck:
    """Criterion 8: the cutting sequence agrees with the cell-series
    expansion up to one alignment offset, cell windows are balanced, and
    exactly one p-chain in an anomaly-centred window has q-1 zeros."""

    def body(failures: list[dict]) -> int:
        checked = 0
        for q, p in coprime_pairs(max_sum):
            for stype in (TYPE_S, TYPE_SPRIME):
                for m in ms:
                    checked += 1
                    spec = SturmianSpec(Frequency.rational(q, p), stype, m)
                    ident = {"q": q, "p": p, "type": stype, "m": m}
                    reason = _crossval_one(spec, q, p, m)
                    if reason:
                        failures.append({**ident, "reason": reason})
        return checked

    return _timed("generator-crossval", {"max_period_sum": max_sum, "ms": list(ms)}, body)


def _crossval_one(spec: SturmianSpec, q: int, p: int, m: int) -> Optional[str]:
    half = 3 * (p + 1)
    cs = cell_series(spec, m - half, m + half)
    if not is_balanced_chains(list(cs.cells)):
        return "cell window is not balanced"
    # type S has a unique deficient p-chain (q-1 zeros); type S' a unique
    # surplus one (q+1 zeros); all other p-chains carry exactly q zeros
    special = q - 1 if spec.stype == TYPE_S else q + 1
    counts = chain_zero_counts(cs, p)
    wrong = {c: k for c, k in counts.items() if c not in (special, q)}
    if wrong or counts.get(special, 0) != 1:
        return f"p-chain zero counts {dict(counts)} are not one of {special} and rest {q}"
    n_lo, n_hi = m - (p + 2), m + (p + 2)
    cut = cutting_sequence(spec, n_lo, n_hi).text
    wide_cs = cell_series(spec, n_lo - 1, n_hi + 1)
    wide = expand_cells(wide_cs).text
    core_len = len(expand_cells(cell_series(spec, n_lo, n_hi)))
    if abs(len(cut) - core_len) > 2:
        return f"cutting window length {len(cut)} vs expansion length {core_len}"
    pos = wide.find(cut)
    boundary = len(wide_cs.cell(n_lo - 1))
    while pos != -1:
        if abs(pos - boundary) <= 1:
            return None
        pos = wide.find(cut, pos + 1)
    return "cutting sequence does not occur at the cell-aligned offset"


def check_reciprocals(max_sum: int = 20) -> TheoremCheck:
    """Criterion 9: symbol reversal carries S(q/p) onto a sequence similar
    to S'(p/q)."""

    def body(failures: list[dict]) -> int:
        checked = 0
        for q, p in coprime_pairs(max_sum):
            checked += 1
            x = symbol_reverse(_skew(q, p, TYPE_S))
            y = _skew(p, q, TYPE_SPRIME)
            if not similar(x, y):
                failures.append({"q": q, "p": p})
        return checked

    return _timed("reciprocals", {"max_period_sum": max_sum}, body)


def run_all(
    bounds: VerifyBounds = VerifyBounds(),
    seed: int = 0,
    progress: Optional[Callable[[TheoremCheck], None]] = None,
) -> VerifyReport:
    report = VerifyReport()
    suites = (
        lambda: check_bezout_oracle(bounds.bezout_sum),
        lambda: check_anomaly_size_formula(bounds.formula_sum),
        check_spot_values,
        lambda: check_window_lemmas(bounds, seed),
        lambda: check_conjugacy_witnesses(bounds, seed),
        lambda: check_conjugacy_classes(bounds.corollary_sum),
        lambda: check_flow_witnesses(bounds, seed),
        lambda: check_generator_crossval(bounds.crossval_sum, bounds.crossval_ms),
        lambda: check_reciprocals(bounds.reciprocal_sum),
    )
    for suite in suites:
        chk = suite()
        report.checks.append(chk)
        if progress is not None:
            progress(chk)
    return report
