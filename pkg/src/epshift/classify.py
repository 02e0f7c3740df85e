"""Conjugacy and flow equivalence of eventually periodic subshifts.

Decisions are invariant comparisons (least period, anomaly size mod that
period); witnesses are constructive certificates (sliding block codes,
expansion moves) that an independent replayer can check.  The two are kept
separate so a certificate is never trusted on the authority of the code
that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .errors import (
    DegenerateImage,
    EpshiftError,
    IncompatibleAlphabets,
    InternalMismatch,
    MissingBlock,
    NotConjugate,
    PostconditionFailed,
    SymbolAbsent,
    WindowExhausted,
)
from .sequences import (
    EPSeq,
    PeriodicSeq,
    _reanchor,
    anomaly_size,
    canonical,
    least_period,
    similar,
)
from .sturmian import SturmianSpec, TYPE_S, TYPE_SPRIME
from .words import Alphabet, Word, primitive_root


@dataclass(frozen=True)
class SlidingBlockCode:
    """A block map with the given memory and anticipation.

    `entries` is a sorted tuple of ((block symbol ids), output symbol id)
    pairs and must be total on the allowed-block set of any sequence the
    code is applied to.
    """

    memory: int
    anticipation: int
    entries: tuple[tuple[tuple[int, ...], int], ...]
    source_alphabet: Alphabet
    target_alphabet: Alphabet

    def __post_init__(self) -> None:
        if self.memory < 0 or self.anticipation < 0:
            raise ValueError("memory and anticipation must be non-negative")
        n = self.block_length
        seen = {}
        for block, out in self.entries:
            if len(block) != n:
                raise ValueError(f"block {block} has length {len(block)}, expected {n}")
            if block in seen and seen[block] != out:
                raise ValueError(f"block {block} mapped to two outputs")
            seen[block] = out
        object.__setattr__(self, "_lookup", seen)

    @property
    def block_length(self) -> int:
        return self.memory + self.anticipation + 1

    def out(self, block: tuple[int, ...]) -> int:
        try:
            return self._lookup[block]  # type: ignore[attr-defined]
        except KeyError:
            raise MissingBlock(f"block {block} not in code table") from None


def identity_code(alphabet: Alphabet) -> SlidingBlockCode:
    entries = tuple(((s,), s) for s in range(len(alphabet)))
    return SlidingBlockCode(0, 0, entries, alphabet, alphabet)


def conjugate_ep(x: EPSeq, y: EPSeq) -> bool:
    """Conjugacy decision by invariants: equal least period N and congruent
    anomaly sizes mod N.  Alphabets may differ."""
    n = least_period(x)
    return n == least_period(y) and (anomaly_size(x) - anomaly_size(y)) % n == 0


def _buffer(x: EPSeq, lo: int, hi: int) -> list[int]:
    return [x.symbol_id_at(k) for k in range(lo, hi + 1)]


@lru_cache(maxsize=None)
def _code_image(code: SlidingBlockCode, x: EPSeq) -> Union[PeriodicSeq, EPSeq]:
    """Exact image of x under the code, classified as periodic or not.

    The image's periodic part is the code applied to the periodic orbit of
    x; its least period divides N and fixes the re-anchoring grid.
    """
    if x.alphabet != code.source_alphabet:
        raise IncompatibleAlphabets("sequence alphabet differs from the code's source alphabet")
    mm, aa = code.memory, code.anticipation
    n = least_period(x)
    vl = len(x.anomaly)
    w = x.period_word.symbols
    per_img = tuple(
        code.out(tuple(w[(i + d) % n] for d in range(-mm, aa + 1))) for i in range(n)
    )
    root, _ = primitive_root(Word(per_img, code.target_alphabet))
    n_img = len(root)

    lo = -aa - 1 - 2 * n
    hi = vl + mm + 2 * n
    buf = _buffer(x, lo - mm, hi + aa)

    def sym(i: int) -> int:
        if lo <= i <= hi:
            base = i - (lo - mm)
            return code.out(tuple(buf[base - mm:base + aa + 1]))
        if i < lo:
            return per_img[i % n]
        return per_img[(i - vl) % n]

    if all(sym(i) == per_img[i % n] for i in range(lo, hi + 1)):
        return PeriodicSeq(root, 0)
    res, _ = _reanchor(sym, n_img, -aa - 1, vl + mm, code.target_alphabet)
    return res


def apply_code(code: SlidingBlockCode, x: EPSeq) -> EPSeq:
    """The image sequence of x under the code, reconstructed as an EPSeq.

    Raises DegenerateImage if the image is periodic (in which case the code
    cannot be a conjugacy witness for x).
    """
    res = _code_image(code, x)
    if isinstance(res, PeriodicSeq):
        raise DegenerateImage("image of the sequence under the code is periodic")
    return res


def apply_code_to_periodic(code: SlidingBlockCode, p: PeriodicSeq) -> PeriodicSeq:
    """Image of a periodic sequence under the code (always periodic)."""
    mm, aa = code.memory, code.anticipation
    n = p.least_period
    img = tuple(
        code.out(tuple(p.symbol_id_at(i + d) for d in range(-mm, aa + 1))) for i in range(n)
    )
    root, _ = primitive_root(Word(img, code.target_alphabet))
    return PeriodicSeq(root, 0)


def image_window(code: SlidingBlockCode, x: EPSeq, i: int, j: int) -> Word:
    """The word (image of x)_i ... (image of x)_j without reconstructing
    the whole image."""
    if i > j:
        raise ValueError(f"window requires i <= j, got {i} > {j}")
    mm, aa = code.memory, code.anticipation
    buf = _buffer(x, i - mm, j + aa)
    out = tuple(
        code.out(tuple(buf[k:k + mm + aa + 1])) for k in range(j - i + 1)
    )
    return Word(out, code.target_alphabet)


def _build_block_map(src: EPSeq, dst: EPSeq, k: int) -> Optional[SlidingBlockCode]:
    """Block map of window radius k sending the anchored src sequence onto
    the anchored dst sequence position-by-position; None if two occurrences
    of one block would demand different outputs."""
    n = least_period(src)
    blen = 2 * k + 1
    lo = -blen - n
    hi = len(src.anomaly) + n
    buf = _buffer(src, lo, hi + blen - 1)
    table: dict[tuple[int, ...], int] = {}
    for s in range(lo, hi + 1):
        base = s - lo
        block = tuple(buf[base:base + blen])
        out = dst.symbol_id_at(s + k)
        if table.setdefault(block, out) != out:
            return None
    entries = tuple(sorted(table.items()))
    return SlidingBlockCode(k, k, entries, src.alphabet, dst.alphabet)


def composition_shift_offset(
    fwd: SlidingBlockCode, inv: SlidingBlockCode, x: EPSeq, half_len: Optional[int] = None
) -> Optional[int]:
    """If inv∘fwd acts on x as some power of the shift over the test window
    [-H, H], return that power; otherwise None."""
    if half_len is None:
        half_len = 3 * least_period(x) + len(x.anomaly)
    h = half_len
    reach = fwd.memory + fwd.anticipation + inv.memory + inv.anticipation
    mid = image_window(fwd, x, -h - inv.memory, h + inv.anticipation)
    blen_i = inv.memory + inv.anticipation + 1
    syms = mid.symbols
    psi = tuple(
        inv.out(tuple(syms[t:t + blen_i])) for t in range(2 * h + 1)
    )
    span = reach + least_period(x)
    xbuf = _buffer(x, -h - span, h + span)
    for t in range(-span, span + 1):
        base = t + span
        if all(psi[i] == xbuf[base + i] for i in range(2 * h + 1)):
            return t
    return None


def conjugacy_witness(x: EPSeq, y: EPSeq) -> tuple[SlidingBlockCode, SlidingBlockCode]:
    """A (forward, inverse) pair of sliding block codes witnessing the
    conjugacy of the subshifts of x and y.

    Built by aligning the canonical forms at their anomaly anchors and
    reading the aligned target symbol; the window radius starts at the
    longer anomaly length and grows by N on a table conflict, up to
    |u| + |v| + 4N (exceeding the cap would contradict the existence
    theorem, so it raises WindowExhausted).
    """
    if not conjugate_ep(x, y):
        raise NotConjugate(
            f"invariants differ: (N={least_period(x)}, a={anomaly_size(x)}) vs "
            f"(N={least_period(y)}, a={anomaly_size(y)})"
        )
    if x == y:
        code = identity_code(x.alphabet)
        return code, code
    cx, cy = canonical(x), canonical(y)
    n = least_period(cx)
    lu, lv = len(cx.anomaly), len(cy.anomaly)
    cap = lu + lv + 4 * n

    def build(src, dst):
        k = max(lu, lv)
        while k <= cap:
            code = _build_block_map(src, dst, k)
            if code is not None:
                return code
            k += n
        raise WindowExhausted(
            f"no consistent block map with radius <= {cap}; this contradicts "
            "the existence theorem and indicates a bug"
        )

    fwd = build(cx, cy)
    inv = build(cy, cx)
    img = apply_code(fwd, x)
    if not similar(img, cy):
        raise InternalMismatch("forward witness image is not similar to the target")
    img_back = apply_code(inv, y)
    if not similar(img_back, cx):
        raise InternalMismatch("inverse witness image is not similar to the source")
    if composition_shift_offset(fwd, inv, x) is None:
        raise InternalMismatch("witness composition does not act as a shift")
    return fwd, inv


def expand_symbol(x: EPSeq, label: str) -> tuple[EPSeq, str]:
    """Replace every occurrence of the symbol by symbol·fresh, where fresh
    is a deterministically minted new symbol appended to the alphabet."""
    if label not in x.alphabet:
        raise SymbolAbsent(f"symbol {label!r} is not in the alphabet")
    s = x.alphabet.index(label)
    if s not in x.period_word.symbols and s not in x.anomaly.symbols:
        raise SymbolAbsent(f"symbol {label!r} does not occur in the sequence")
    fresh_label = x.alphabet.mint_label()
    bigger = x.alphabet.extend(fresh_label)
    f = bigger.index(fresh_label)

    def subst(syms: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        for t in syms:
            out.append(t)
            if t == s:
                out.append(f)
        return tuple(out)

    return (
        EPSeq(Word(subst(x.period_word.symbols), bigger), Word(subst(x.anomaly.symbols), bigger)),
        fresh_label,
    )


def contract_symbol(x: EPSeq, fresh_label: str) -> EPSeq:
    """Inverse of expand_symbol: delete every occurrence of the fresh symbol
    and drop it from the alphabet (it must be the last symbol)."""
    f = x.alphabet.index(fresh_label)
    if f != len(x.alphabet) - 1:
        raise ValueError("can only contract the most recently minted symbol")
    smaller = Alphabet(x.alphabet.labels[:-1])
    strip = lambda syms: tuple(t for t in syms if t != f)
    return EPSeq(Word(strip(x.period_word.symbols), smaller),
                 Word(strip(x.anomaly.symbols), smaller))


@dataclass(frozen=True)
class ConjugacyMove:
    """Move to a conjugate sequence; `code` applied to the current sequence
    yields a sequence similar to `result`."""

    code: SlidingBlockCode
    result: EPSeq
    kind: str = "conjugacy"


@dataclass(frozen=True)
class ExpandMove:
    """Symbol expansion: `result` is the current sequence with every
    occurrence of `symbol` replaced by symbol·fresh."""

    symbol: str
    fresh: str
    result: EPSeq
    kind: str = "expand"


FlowMove = Union[ConjugacyMove, ExpandMove]


@lru_cache(maxsize=None)
def _raise_period_moves(x: EPSeq) -> tuple[tuple[FlowMove, ...], EPSeq]:
    """Flow moves from x to a sequence with least period N+1 and unchanged
    anomaly size: replace the last letter of the period word with a fresh
    symbol everywhere the period word occurs (a conjugacy), then expand
    that fresh symbol (one occurrence per period, none in the anomaly)."""
    c = canonical(x)
    n = least_period(c)
    size = len(c.anomaly)
    primed_label = c.alphabet.mint_label()
    bigger = c.alphabet.extend(primed_label)
    bp = bigger.index(primed_label)
    w1 = Word(c.period_word.symbols[:-1] + (bp,), bigger)
    x_a = EPSeq(w1, Word(c.anomaly.symbols, bigger))
    if not conjugate_ep(c, x_a):
        raise PostconditionFailed(
            f"period-tail replacement changed the invariants: "
            f"(N={least_period(x_a)}, a={anomaly_size(x_a)}), expected (N={n}, a={size})"
        )
    code, _ = conjugacy_witness(x, x_a)
    y1, fresh = expand_symbol(x_a, primed_label)
    if least_period(y1) != n + 1 or anomaly_size(y1) != anomaly_size(x):
        raise PostconditionFailed(
            f"raise_period postcondition: got (N={least_period(y1)}, a={anomaly_size(y1)}), "
            f"expected (N={n + 1}, a={anomaly_size(x)})"
        )
    moves = (ConjugacyMove(code, x_a), ExpandMove(primed_label, fresh, y1))
    return moves, y1


@lru_cache(maxsize=None)
def _raise_anomaly_moves(x: EPSeq) -> tuple[tuple[FlowMove, ...], EPSeq]:
    """Flow moves from x to a sequence with unchanged least period and
    anomaly size a(x)+1: replace the last letter of the minimal anomaly
    with a fresh symbol (a conjugacy), then expand that fresh symbol (it
    occurs only in the anomaly)."""
    c = canonical(x)
    n = least_period(c)
    primed_label = c.alphabet.mint_label()
    bigger = c.alphabet.extend(primed_label)
    ap = bigger.index(primed_label)
    u1 = Word(c.anomaly.symbols[:-1] + (ap,), bigger)
    x_b = EPSeq(Word(c.period_word.symbols, bigger), u1)
    if not conjugate_ep(c, x_b):
        raise PostconditionFailed(
            f"anomaly-tail replacement changed the invariants: "
            f"(N={least_period(x_b)}, a={anomaly_size(x_b)})"
        )
    code, _ = conjugacy_witness(x, x_b)
    z1, fresh = expand_symbol(x_b, primed_label)
    if least_period(z1) != n or anomaly_size(z1) != anomaly_size(x) + 1:
        raise PostconditionFailed(
            f"raise_anomaly postcondition: got (N={least_period(z1)}, a={anomaly_size(z1)}), "
            f"expected (N={n}, a={anomaly_size(x) + 1})"
        )
    moves = (ConjugacyMove(code, x_b), ExpandMove(primed_label, fresh, z1))
    return moves, z1


def raise_period(x: EPSeq) -> EPSeq:
    """A flow-equivalent sequence with least period N+1 and anomaly size
    a(x); the postconditions are re-verified by the window search."""
    return _raise_period_moves(x)[1]


def raise_anomaly(x: EPSeq) -> EPSeq:
    """A flow-equivalent sequence with least period N and anomaly size
    a(x)+1; the postconditions are re-verified by the window search."""
    return _raise_anomaly_moves(x)[1]


@dataclass(frozen=True)
class FlowWitness:
    """Two chains of flow moves whose endpoints are conjugate, plus the
    final conjugacy witness pair linking them."""

    chain_x: tuple[FlowMove, ...]
    chain_y: tuple[FlowMove, ...]
    final_forward: SlidingBlockCode
    final_inverse: SlidingBlockCode


def flow_witness(x: EPSeq, y: EPSeq) -> FlowWitness:
    """A checkable certificate that the subshifts of x and y are flow
    equivalent: raise periods to max(M, M'), then anomaly sizes to
    max(a(x), a(y)); the equalized endpoints are conjugate."""
    target_n = max(least_period(x), least_period(y))
    target_a = max(anomaly_size(x), anomaly_size(y))

    def chain(start: EPSeq) -> tuple[tuple[FlowMove, ...], EPSeq]:
        moves: list[FlowMove] = []
        cur = start
        while least_period(cur) < target_n:
            mv, cur = _raise_period_moves(cur)
            moves.extend(mv)
        while anomaly_size(cur) < target_a:
            mv, cur = _raise_anomaly_moves(cur)
            moves.extend(mv)
        return tuple(moves), cur

    chain_x, end_x = chain(x)
    chain_y, end_y = chain(y)
    fwd, inv = conjugacy_witness(end_x, end_y)
    return FlowWitness(chain_x, chain_y, fwd, inv)


def verify_flow_witness(
    x: EPSeq, y: EPSeq, wit: FlowWitness, trail: Optional[list[str]] = None
) -> bool:
    """Independently replay a flow witness: every move's invariant is
    re-checked from the move's inputs, and the final codes are checked to
    be mutually inverse conjugacies between the chain endpoints.  Returns
    False (appending diagnostics to `trail`) instead of raising."""
    log = trail if trail is not None else []

    def replay(start: EPSeq, chain: tuple[FlowMove, ...], name: str) -> Optional[EPSeq]:
        cur = start
        for idx, move in enumerate(chain):
            tag = f"{name}[{idx}]"
            try:
                if isinstance(move, ConjugacyMove):
                    img = apply_code(move.code, cur)
                    if not similar(img, move.result):
                        log.append(f"{tag}: conjugacy image not similar to recorded result")
                        return None
                elif isinstance(move, ExpandMove):
                    if move.fresh in cur.alphabet:
                        log.append(f"{tag}: fresh symbol {move.fresh!r} already in alphabet")
                        return None
                    expanded, fresh = expand_symbol(cur, move.symbol)
                    if fresh != move.fresh or expanded != move.result:
                        log.append(f"{tag}: expansion does not reproduce recorded result")
                        return None
                else:
                    log.append(f"{tag}: unknown move kind")
                    return None
            except EpshiftError as e:
                log.append(f"{tag}: replay error: {e}")
                return None
            cur = move.result
        return cur

    end_x = replay(x, wit.chain_x, "chain_x")
    end_y = replay(y, wit.chain_y, "chain_y")
    if end_x is None or end_y is None:
        return False
    n = least_period(end_x)
    if n != least_period(end_y) or (anomaly_size(end_x) - anomaly_size(end_y)) % n != 0:
        log.append("endpoints have different invariants")
        return False
    try:
        if not similar(apply_code(wit.final_forward, end_x), canonical(end_y)):
            log.append("final forward code does not map endpoint x onto endpoint y")
            return False
        if not similar(apply_code(wit.final_inverse, end_y), canonical(end_x)):
            log.append("final inverse code does not map endpoint y onto endpoint x")
            return False
        if composition_shift_offset(wit.final_forward, wit.final_inverse, end_x) is None:
            log.append("final codes are not mutually inverse on the test window")
            return False
    except EpshiftError as e:
        log.append(f"final conjugacy replay error: {e}")
        return False
    return True


def skew_conjugacy_class(spec: SturmianSpec) -> set[SturmianSpec]:
    """The conjugacy class of a skew Sturmian spec: itself and the spec
    with inverse frequency and opposite type (always exactly two members;
    Infinity/S pairs with Zero/S')."""
    opposite = TYPE_SPRIME if spec.stype == TYPE_S else TYPE_S
    partner = SturmianSpec(spec.freq.inverse(), opposite, spec.m)
    return {spec, partner}
