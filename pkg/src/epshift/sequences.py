"""Exact finite representations of eventually periodic bi-infinite sequences.

An ``EPSeq`` stores a primitive period word ``w`` (length N) and an anomaly
word ``v`` and denotes the bi-infinite sequence

    x_k = w[k mod N]            for k < 0   (so x_-1 is the last letter of w)
    x_k = v[k]                  for 0 <= k < |v|
    x_k = w[(k - |v|) mod N]    for k >= |v|

i.e. the periodic left tail runs right up to index -1, the anomaly occupies
[0, |v|), and the right tail resumes the period at offset 0.  Removing the
window [0, |v|) therefore yields the periodic sequence k -> w[k mod N] by
construction.

Representations are normalized: ``w`` is primitive and ``v`` never ends with
a full copy of ``w`` (such a copy belongs to the right tail).  Under this
normalization two EPSeq values are structurally equal iff they denote the
same bi-infinite sequence, so ``==`` is sequence equality.

One representational limit is inherent to the anchoring: a sequence whose
leftmost deviation from its periodic tail sits at a negative index has no
anchored form at all.  Operations that produce shifted sequences (``shift``,
and code application in :mod:`epshift.classify`) therefore return the exact
result whenever it is representable and otherwise the representable sequence
nearest to the requested one (differing from it by a shift); similarity-level
contracts are unaffected.  Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

from .errors import DegeneratePeriodic, InternalMismatch
from .words import Alphabet, Word, is_primitive, primitive_root, require_same_alphabet


@dataclass(frozen=True)
class PeriodicSeq:
    """A periodic bi-infinite sequence: value at k is period_word[(k + phase) mod N]."""

    period_word: Word
    phase: int

    def __post_init__(self) -> None:
        if not is_primitive(self.period_word):
            raise ValueError("period word of a PeriodicSeq must be primitive")
        if not 0 <= self.phase < len(self.period_word):
            raise ValueError(f"phase {self.phase} out of range [0, {len(self.period_word)})")

    @property
    def least_period(self) -> int:
        return len(self.period_word)

    def symbol_id_at(self, k: int) -> int:
        n = len(self.period_word)
        return self.period_word.symbols[(k + self.phase) % n]

    def symbol_at(self, k: int) -> str:
        return self.period_word.alphabet.labels[self.symbol_id_at(k)]

    def window(self, i: int, j: int) -> Word:
        if i > j:
            raise ValueError(f"window requires i <= j, got {i} > {j}")
        return Word(tuple(self.symbol_id_at(k) for k in range(i, j + 1)),
                    self.period_word.alphabet)

    def same_sequence(self, other: PeriodicSeq) -> bool:
        """Pointwise equality as bi-infinite sequences."""
        if self.period_word.alphabet != other.period_word.alphabet:
            return False
        n = self.least_period
        if n != other.least_period:
            return False
        return all(self.symbol_id_at(k) == other.symbol_id_at(k) for k in range(n))


@dataclass(frozen=True)
class AnomalyWindow:
    """Index window [start, start+length) whose removal leaves a periodic sequence."""

    start: int
    length: int


@dataclass(frozen=True)
class EPSeq:
    """Anchored representation of an eventually periodic sequence.

    Construct through :func:`make_ep`, which normalizes arbitrary input;
    the constructor itself insists on already-normalized data.
    """

    period_word: Word
    anomaly: Word

    def __post_init__(self) -> None:
        require_same_alphabet(self.period_word, self.anomaly)
        if len(self.period_word) == 0 or len(self.anomaly) == 0:
            raise ValueError("period word and anomaly must be non-empty")
        if not is_primitive(self.period_word):
            raise ValueError("period word must be primitive (use make_ep to normalize)")
        n = len(self.period_word)
        v = self.anomaly.symbols
        w = self.period_word.symbols
        if len(v) % n == 0 and v == w * (len(v) // n):
            raise DegeneratePeriodic(
                "anomaly is a power of the period word; the sequence would be periodic"
            )
        if len(v) > n and v[-n:] == w:
            raise ValueError("anomaly ends with the period word (use make_ep to normalize)")

    @property
    def alphabet(self) -> Alphabet:
        return self.period_word.alphabet

    def symbol_id_at(self, k: int) -> int:
        w = self.period_word.symbols
        v = self.anomaly.symbols
        n = len(w)
        if k < 0:
            return w[k % n]
        if k < len(v):
            return v[k]
        return w[(k - len(v)) % n]

    def __repr__(self) -> str:
        return f"EPSeq(period={self.period_word.text!r}, anomaly={self.anomaly.text!r})"


def make_ep(w: Word, v: Word) -> EPSeq:
    """Build the anchored EPSeq for period word `w` and anomaly `v`.

    Normalizes `w` to its primitive root, then strips trailing copies of the
    period from `v` (they denote right-tail content, so stripping preserves
    the denoted sequence).  Rejects periodic (degenerate) input.
    """
    require_same_alphabet(w, v)
    if len(w) == 0 or len(v) == 0:
        raise ValueError("period word and anomaly must be non-empty")
    root, _ = primitive_root(w)
    n = len(root)
    vs = v.symbols
    if len(vs) % n == 0 and vs == root.symbols * (len(vs) // n):
        raise DegeneratePeriodic(
            f"anomaly {v.text!r} is a power of the period {root.text!r}"
        )
    while len(vs) > n and vs[-n:] == root.symbols:
        vs = vs[:-n]
    return EPSeq(root, Word(vs, w.alphabet))


def symbol_at(x: EPSeq, k: int) -> str:
    """The symbol label of the sequence at index k."""
    return x.alphabet.labels[x.symbol_id_at(k)]


def window(x: EPSeq, i: int, j: int) -> Word:
    """The word x_i x_{i+1} ... x_j (inclusive)."""
    if i > j:
        raise ValueError(f"window requires i <= j, got {i} > {j}")
    return Word(tuple(x.symbol_id_at(k) for k in range(i, j + 1)), x.alphabet)


def least_period(x: EPSeq) -> int:
    return len(x.period_word)


def _removal_is_periodic(x: EPSeq, start: int, length: int) -> bool:
    """Exact check: does deleting [start, start+length) leave the periodic
    extension of the left tail?

    The removed sequence y and the candidate z_k = w[k mod N] agree
    automatically for k < min(0, start) and are both N-periodic for
    k >= max(start, |v| - length); checking the finite range between (with a
    2N margin to lock the phase) is therefore an exact decision.
    """
    w = x.period_word.symbols
    v = x.anomaly.symbols
    n = len(w)
    vl = len(v)
    lo = min(0, start) - n
    hi = max(start, vl - length) + 2 * n
    for k in range(lo, hi + 1):
        j = k if k < start else k + length
        if j < 0:
            yk = w[j % n]
        elif j < vl:
            yk = v[j]
        else:
            yk = w[(j - vl) % n]
        if yk != w[k % n]:
            return False
    return True


def remove_window(x: EPSeq, win: AnomalyWindow) -> Union[PeriodicSeq, EPSeq]:
    """Delete the window from the sequence: y_k = x_k for k < start and
    y_k = x_{k+length} for k >= start.

    The periodic-or-not classification is exact.  A periodic result is the
    extension of the left tail, hence PeriodicSeq(period_word, 0).  A
    non-periodic result is re-anchored (see module docstring).
    """
    if win.length < 1:
        raise ValueError("window length must be >= 1")
    s, length = win.start, win.length
    if _removal_is_periodic(x, s, length):
        return PeriodicSeq(x.period_word, 0)
    n = len(x.period_word)
    vl = len(x.anomaly)

    def sym(k: int) -> int:
        return x.symbol_id_at(k if k < s else k + length)

    res, _ = _reanchor(sym, n, min(0, s) - 1, max(s, vl - length), x.alphabet)
    return res


@lru_cache(maxsize=None)
def _windows_cached(x: EPSeq, extra_start: int, extra_len: int) -> tuple[AnomalyWindow, ...]:
    n = len(x.period_word)
    vl = len(x.anomaly)
    found = []
    length = vl % n if vl % n else n
    while length <= vl + extra_len:
        for s in range(-length - 2 * n - extra_start, vl + 2 * n + extra_start + 1):
            if _removal_is_periodic(x, s, length):
                found.append(AnomalyWindow(s, length))
        length += n
    found.sort(key=lambda a: (a.length, a.start))
    return tuple(found)


def anomaly_windows(x: EPSeq) -> list[AnomalyWindow]:
    """All removal windows that leave a periodic sequence, for lengths
    0 < L <= |anomaly| congruent to |anomaly| mod N and starts in
    [-L-2N, |anomaly|+2N].  Sorted by (length, start); never empty since
    [0, |anomaly|) always qualifies.
    """
    wins = _windows_cached(x, 0, 0)
    if not wins:
        raise InternalMismatch("anomaly window search found nothing; bug")
    return list(wins)


def anomaly_size(x: EPSeq) -> int:
    """Minimum length over all anomaly windows (brute-force search)."""
    return anomaly_windows(x)[0].length


def remove_anomaly(x: EPSeq) -> PeriodicSeq:
    """The periodic sequence obtained by deleting an anomaly window; the
    result is pointwise independent of which window is deleted."""
    res = remove_window(x, AnomalyWindow(0, len(x.anomaly)))
    if not isinstance(res, PeriodicSeq):
        raise InternalMismatch("removing the stored anomaly must yield a periodic sequence")
    return res


@lru_cache(maxsize=None)
def canonical(x: EPSeq) -> EPSeq:
    """Deterministic representative of the similarity class of x.

    Re-anchors at the leftmost anomaly window of minimal length, so the
    result's stored anomaly has length anomaly_size(x).  Idempotent, and
    invariant under shift.
    """
    best = anomaly_windows(x)[0]
    n = len(x.period_word)
    w_star = window(x, best.start - n, best.start - 1)
    v_star = window(x, best.start, best.start + best.length - 1)
    return make_ep(w_star, v_star)


def similar(x: EPSeq, y: EPSeq) -> bool:
    """True iff some shift of x equals y (decided via canonical forms)."""
    require_same_alphabet(x.period_word, y.period_word)
    return canonical(x) == canonical(y)


def shift(x: EPSeq, k: int) -> EPSeq:
    """A representation of the k-fold shift of x (positive k moves the
    viewing window right: result_i = x_{i+k}).

    Exact whenever the shifted sequence is anchored-representable (always
    for k <= 0); otherwise the nearest representable shift is returned.
    """
    n = len(x.period_word)
    vl = len(x.anomaly)

    def sym(i: int) -> int:
        return x.symbol_id_at(i + k)

    res, _ = _reanchor(sym, n, -k - 1, vl - k, x.alphabet)
    return res


def enumerate_blocks(x: EPSeq, n: int) -> set[Word]:
    """All length-n words allowed in the subshift generated by x: every
    window overlapping the anomaly plus all blocks of the periodic part."""
    if n < 1:
        raise ValueError("block length must be >= 1")
    N = len(x.period_word)
    vl = len(x.anomaly)
    return {window(x, s, s + n - 1) for s in range(-n - N, vl + N + 1)}


def first_defect(x: EPSeq) -> int:
    """Smallest index k >= 0 where x differs from the extension of its left
    periodic tail.  Exists for every (non-degenerate) EPSeq."""
    w = x.period_word.symbols
    n = len(w)
    for k in range(len(x.anomaly) + n):
        if x.symbol_id_at(k) != w[k % n]:
            return k
    raise InternalMismatch("no defect found; sequence would be periodic")


def _reanchor(
    sym: Callable[[int], int],
    n: int,
    guard_lo: int,
    guard_hi: int,
    alphabet: Alphabet,
    prefer: int = 0,
) -> tuple[EPSeq, int]:
    """Find an anchored representation of the sequence given by `sym`.

    Preconditions: the sequence is not periodic; sym(k) == sym(k - n) for
    all k <= guard_lo and sym(k) == sym(k + n) for all k >= guard_hi, where
    n is the least period of the tails.

    Returns (EPSeq, t) where the EPSeq denotes the t-fold shift of the
    sequence, with t the representable value nearest `prefer` (ties toward
    larger t).  Exact (t == prefer) whenever a representation of the
    requested sequence exists.
    """
    span = (guard_hi - guard_lo) + 4 * n + 8
    for delta in range(span + 1):
        candidates = (prefer,) if delta == 0 else (prefer + delta, prefer - delta)
        for t in candidates:
            res = _try_anchor(sym, n, guard_lo, guard_hi, alphabet, t)
            if res is not None:
                return res, t
    raise InternalMismatch("no anchored representation found near the requested shift")


def _try_anchor(sym, n, guard_lo, guard_hi, alphabet, t):
    wsyms = tuple(sym(t + k) for k in range(-n, 0))
    # Left purity: the whole ray below 0 must extend wsyms periodically.
    # Below guard_lo the ray is n-periodic, so a 2n margin is exact.
    for k in range(guard_lo - t - 2 * n, 0):
        if sym(t + k) != wsyms[k % n]:
            return None
    # Resumption: smallest L >= 1 from which the ray continues wsyms at
    # offset 0.  Checking through guard_hi plus a 2n margin is exact.
    hi_base = guard_hi - t
    for L in range(1, max(1, hi_base) + 2 * n + 1):
        ok = True
        for k in range(L, max(L, hi_base) + 2 * n + 1):
            if sym(t + k) != wsyms[(k - L) % n]:
                ok = False
                break
        if ok:
            vsyms = tuple(sym(t + k) for k in range(L))
            return make_ep(Word(wsyms, alphabet), Word(vsyms, alphabet))
    return None


def extended_anomaly_windows(x: EPSeq, extra_start: int, extra_len: int) -> list[AnomalyWindow]:
    """Window search with enlarged bounds; used to property-test that the
    standard bounds never miss a window shorter than anomaly_size(x)."""
    return list(_windows_cached(x, extra_start, extra_len))
