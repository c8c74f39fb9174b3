"""Semi-simple splicing: rules, single splices and a bounded closure oracle.

A semi-simple (i, j) rule is fixed by a marker ``(a, b)``. Splicing ``x`` and
``y`` cuts ``x`` at an occurrence of ``a`` and ``y`` at an occurrence of
``b`` and joins a prefix of ``x`` to a suffix of ``y``:

==========  =============  ================
variant     rule           result
==========  =============  ================
``V13``     (a, ε; b, ε)   x1 · a · y2
``V14``     (a, ε; ε, b)   x1 · a b · y2
``V23``     (ε, a; b, ε)   x1 · y2
``V24``     (ε, a; ε, b)   x1 · b · y2
==========  =============  ================

where ``x = x1 a x2`` and ``y = y1 b y2``.

The closure oracle works on length-bounded word sets. A splice result only
depends on the prefix ``x1`` and the suffix ``y2``, so one step of the
closure is computed from the prefix and suffix languages of the current set
instead of from all word pairs.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .automata import (AutomatonError, Dfa, ResourceLimitExceeded, Word, as_word,
                       complete, image, is_acyclic_off_sink, useful_states)


class Variant(enum.Enum):
    V13 = "13"
    V14 = "14"
    V23 = "23"
    V24 = "24"

    @classmethod
    def parse(cls, text) -> "Variant":
        if isinstance(text, Variant):
            return text
        key = str(text).strip().upper().replace("(", "").replace(")", "").replace(",", "")
        key = key.lstrip("V")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown splicing variant {text!r}") from None

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class Marker:
    a: str
    b: str

    def __str__(self):
        return f"{self.a}:{self.b}"


def parse_markers(text: str) -> tuple[Marker, ...]:
    """Parse ``"a:b,c:c"`` into markers. Empty text gives no markers."""
    out = []
    for item in _split_top(text):
        item = item.strip()
        if not item:
            continue
        a, sep, b = item.partition(":")
        if not sep or not a.strip() or not b.strip():
            raise ValueError(f"bad marker {item!r}; expected 'a:b'")
        out.append(Marker(a.strip(), b.strip()))
    return tuple(out)


def _split_top(text: str) -> list[str]:
    """Split on commas that are not inside braces (``a_{2,3}`` is one symbol)."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth = max(depth - 1, 0)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def format_markers(markers: Iterable[Marker]) -> str:
    return ",".join(str(m) for m in markers)


@dataclass(frozen=True)
class SplicingSystem:
    variant: Variant
    initial: Dfa
    markers: tuple[Marker, ...]

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        object.__setattr__(self, "initial", complete(self.initial))
        ms = []
        for m in self.markers:
            if not isinstance(m, Marker):
                m = Marker(*m)
            if m not in ms:
                ms.append(m)
        rank = {s: i for i, s in enumerate(self.initial.alphabet)}
        big = len(rank)
        ms.sort(key=lambda m: (rank.get(m.a, big), m.a, rank.get(m.b, big), m.b))
        object.__setattr__(self, "markers", tuple(ms))

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.initial.alphabet

    @property
    def m1(self) -> tuple[str, ...]:
        left = {m.a for m in self.markers}
        return tuple(s for s in self.alphabet if s in left)

    @property
    def m2(self) -> tuple[str, ...]:
        right = {m.b for m in self.markers}
        return tuple(s for s in self.alphabet if s in right)

    @property
    def is_simple(self) -> bool:
        return all(m.a == m.b for m in self.markers)

    @property
    def finite_initial(self) -> bool:
        return is_acyclic_off_sink(self.initial)

    def with_markers(self, markers) -> "SplicingSystem":
        return SplicingSystem(self.variant, self.initial, tuple(markers))


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" or "warning"
    code: str
    message: str


@dataclass(frozen=True)
class Validation:
    diagnostics: tuple[Diagnostic, ...]
    finite_initial: bool
    simple: bool

    @property
    def ok(self) -> bool:
        return not any(d.level == "error" for d in self.diagnostics)


def validate(system: SplicingSystem) -> Validation:
    diags = []
    alphabet = set(system.alphabet)
    for m in system.markers:
        for s in (m.a, m.b):
            if s not in alphabet:
                diags.append(Diagnostic("error", "unknown-symbol",
                                        f"marker {m} uses {s!r}, which is not in the alphabet"))
    useful = useful_states(system.initial)
    for m in system.markers:
        if m.a in alphabet and not (image(system.initial, m.a) & useful):
            diags.append(Diagnostic("warning", "inert-marker",
                                    f"marker {m} is inert: every {m.a!r}-transition is useless"))
    return Validation(tuple(diags), system.finite_initial, system.is_simple)


def require_valid(system: SplicingSystem) -> None:
    errors = [d.message for d in validate(system).diagnostics if d.level == "error"]
    if errors:
        raise AutomatonError("; ".join(errors))


def splice(variant, m: Marker, x, y) -> set[Word]:
    """Every word produced by one application of marker ``m`` to ``(x, y)``."""
    variant = Variant.parse(variant)
    x = as_word((m.a, m.b), x)
    y = as_word((m.a, m.b), y)
    cuts_x = [i for i, s in enumerate(x) if s == m.a]
    cuts_y = [j for j, s in enumerate(y) if s == m.b]
    mid = _middle(variant, m.a, m.b)
    return {x[:i] + mid + y[j + 1:] for i in cuts_x for j in cuts_y}


def _middle(variant: Variant, a, b) -> tuple:
    if variant is Variant.V13:
        return (a,)
    if variant is Variant.V24:
        return (b,)
    if variant is Variant.V14:
        return (a, b)
    return ()


# ---------------------------------------------------------------------------
# length-bounded word sets

def default_max_words() -> int:
    return int(os.environ.get("SEMISPLICE_MAX_WORDS", "20000000"))


_DENSE_LIMIT = 1 << 23
_CODE_LIMIT = 1 << 62


@dataclass(frozen=True, eq=False)
class WordSet:
    """Words of length at most ``cap``. Level ``l`` holds the sorted base-k
    codes (most significant symbol first) of the member words of length l."""

    alphabet: tuple[str, ...]
    cap: int
    levels: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.levels) != self.cap + 1:
            raise ValueError("need one level per length 0..cap")

    @classmethod
    def from_words(cls, alphabet: Sequence[str], words: Iterable, cap: int) -> "WordSet":
        alphabet = tuple(alphabet)
        index = {s: i for i, s in enumerate(alphabet)}
        k = len(alphabet)
        buckets: list[set[int]] = [set() for _ in range(cap + 1)]
        for w in words:
            w = as_word(alphabet, w)
            if len(w) > cap:
                raise ValueError(f"word {w} longer than cap {cap}")
            code = 0
            for s in w:
                if s not in index:
                    raise AutomatonError(f"symbol {s!r} not in alphabet")
                code = code * k + index[s]
            buckets[len(w)].add(code)
        levels = tuple(np.array(sorted(b), dtype=np.int64) for b in buckets)
        return cls(alphabet, cap, levels)

    @classmethod
    def from_dfa(cls, dfa: Dfa, cap: int) -> "WordSet":
        """Accepted words of ``dfa`` up to length ``cap``."""
        return _Levels.from_dfa(complete(dfa), cap).to_wordset()

    def __len__(self):
        return int(sum(len(lv) for lv in self.levels))

    def __contains__(self, w) -> bool:
        w = as_word(self.alphabet, w)
        if len(w) > self.cap:
            return False
        index = {s: i for i, s in enumerate(self.alphabet)}
        code = 0
        for s in w:
            if s not in index:
                return False
            code = code * len(self.alphabet) + index[s]
        lv = self.levels[len(w)]
        pos = np.searchsorted(lv, code)
        return bool(pos < len(lv) and lv[pos] == code)

    def __eq__(self, other):
        if not isinstance(other, WordSet):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.cap == other.cap
                and all(np.array_equal(x, y) for x, y in zip(self.levels, other.levels)))

    def restrict(self, max_len: int) -> "WordSet":
        if max_len > self.cap:
            raise ValueError("cannot extend a word set past its cap")
        return WordSet(self.alphabet, max_len, self.levels[:max_len + 1])

    def words(self) -> list[Word]:
        """Members sorted lexicographically."""
        out = []
        k = len(self.alphabet)
        for length, lv in enumerate(self.levels):
            for code in lv.tolist():
                digits = []
                for _ in range(length):
                    code, d = divmod(code, k)
                    digits.append(self.alphabet[d])
                out.append(tuple(reversed(digits)))
        rank = {s: i for i, s in enumerate(self.alphabet)}
        out.sort(key=lambda w: [rank[s] for s in w])
        return out

    def difference(self, other: "WordSet") -> list[Word]:
        """Sorted words in ``self`` but not in ``other`` (lengths up to the
        smaller cap)."""
        cap = min(self.cap, other.cap)
        diff = WordSet(self.alphabet, cap, tuple(
            np.setdiff1d(self.levels[l], other.levels[l], assume_unique=True)
            for l in range(cap + 1)))
        return diff.words()


class _Levels:
    """Working representation for the fixpoint loop: dense boolean arrays
    when ``k**cap`` is small, sorted code arrays otherwise."""

    def __init__(self, k: int, cap: int, levels: list[np.ndarray], dense: bool, alphabet):
        self.k, self.cap, self.levels, self.dense = k, cap, levels, dense
        self.alphabet = alphabet

    @staticmethod
    def pick_dense(k: int, cap: int) -> bool:
        total = sum(k ** l for l in range(cap + 1))
        if total > _CODE_LIMIT:
            raise ResourceLimitExceeded(
                f"{k} symbols up to length {cap} exceed the word-code range")
        return total <= _DENSE_LIMIT

    @classmethod
    def from_wordset(cls, ws: WordSet, cap: int | None = None) -> "_Levels":
        cap = ws.cap if cap is None else cap
        k = len(ws.alphabet)
        dense = cls.pick_dense(k, cap)
        levels = []
        for l in range(cap + 1):
            codes = ws.levels[l] if l <= ws.cap else np.zeros(0, dtype=np.int64)
            if dense:
                arr = np.zeros(k ** l, dtype=bool)
                arr[codes] = True
                levels.append(arr)
            else:
                levels.append(codes)
        return cls(k, cap, levels, dense, ws.alphabet)

    @classmethod
    def from_dfa(cls, dfa: Dfa, cap: int) -> "_Levels":
        k = len(dfa.alphabet)
        dense = cls.pick_dense(k, cap)
        delta = np.asarray(dfa.delta)
        final = np.zeros(dfa.n, dtype=bool)
        final[list(dfa.finals)] = True
        useful = np.zeros(dfa.n, dtype=bool)
        useful[list(useful_states(dfa))] = True
        levels = []
        states = np.array([dfa.start], dtype=np.int64)
        codes = np.zeros(1, dtype=np.int64)
        for l in range(cap + 1):
            if dense:
                levels.append(final[states])
                if l < cap:
                    states = delta[states].reshape(-1)
            else:
                levels.append(codes[final[states]])
                if l < cap:
                    keep = useful[states]
                    states, codes = states[keep], codes[keep]
                    states = delta[states].reshape(-1)
                    codes = (codes[:, None] * k + np.arange(k)[None, :]).reshape(-1)
        return cls(k, cap, levels, dense, dfa.alphabet)

    def to_wordset(self) -> WordSet:
        if self.dense:
            levels = tuple(np.flatnonzero(lv).astype(np.int64) for lv in self.levels)
        else:
            levels = tuple(self.levels)
        return WordSet(self.alphabet, self.cap, levels)

    def size(self) -> int:
        if self.dense:
            return int(sum(int(lv.sum()) for lv in self.levels))
        return int(sum(len(lv) for lv in self.levels))

    def same(self, other: "_Levels") -> bool:
        return all(np.array_equal(x, y) for x, y in zip(self.levels, other.levels))

    def _prefix_levels(self):
        k, pre = self.k, [None] * (self.cap + 1)
        pre[self.cap] = self.levels[self.cap]
        for l in range(self.cap - 1, -1, -1):
            if self.dense:
                pre[l] = self.levels[l] | pre[l + 1].reshape(k ** l, k).any(axis=1)
            else:
                pre[l] = np.union1d(self.levels[l], pre[l + 1] // k)
        return pre

    def _suffix_levels(self):
        k, suf = self.k, [None] * (self.cap + 1)
        suf[self.cap] = self.levels[self.cap]
        for l in range(self.cap - 1, -1, -1):
            if self.dense:
                suf[l] = self.levels[l] | suf[l + 1].reshape(k, k ** l).any(axis=0)
            else:
                suf[l] = np.union1d(self.levels[l], suf[l + 1] % (k ** l))
        return suf

    def _empty(self, arr) -> bool:
        return not arr.any() if self.dense else not len(arr)

    def step(self, variant: Variant, markers: Sequence[tuple[int, int]],
             max_words: int | None = None) -> "_Levels":
        """One application of every marker (given as symbol indices) to every
        pair of members, unioned with the current set."""
        k, cap = self.k, self.cap
        pending = 0
        pre, suf = self._prefix_levels(), self._suffix_levels()

        def left(a, i):  # x1 of length i with x1 a a prefix of a member
            lv = pre[i + 1]
            if self.dense:
                return lv.reshape(k ** i, k)[:, a]
            return lv[lv % k == a] // k

        def right(b, j):  # y2 of length j with b y2 a suffix of a member
            lv = suf[j + 1]
            if self.dense:
                return lv.reshape(k, k ** j)[b]
            p = k ** j
            return lv[lv // p == b] % p

        new = [lv.copy() for lv in self.levels]
        extra: list[list[np.ndarray]] = [[] for _ in range(cap + 1)]
        for a, b in markers:
            mid = _middle(variant, a, b)
            mid_code = 0
            for s in mid:
                mid_code = mid_code * k + s
            width = len(mid)
            lefts = [left(a, i) for i in range(cap)]
            rights = [right(b, j) for j in range(cap)]
            for i in range(cap):
                P = lefts[i]
                if self._empty(P):
                    continue
                for j in range(min(cap, cap - i - width + 1)):
                    S = rights[j]
                    if self._empty(S):
                        continue
                    t = i + width + j
                    if self.dense:
                        view = new[t].reshape(k ** i, k ** width, k ** j)
                        view[:, mid_code, :] |= P[:, None] & S[None, :]
                    else:
                        pending += len(P) * len(S)
                        if max_words is not None and pending > max_words:
                            raise ResourceLimitExceeded(
                                f"closure step produced more than {max_words} candidate words")
                        head = (P * (k ** width) + mid_code) * (k ** j)
                        extra[t].append((head[:, None] + S[None, :]).reshape(-1))
        if not self.dense:
            for t in range(cap + 1):
                if extra[t]:
                    new[t] = np.union1d(new[t], np.concatenate(extra[t]))
        return _Levels(k, cap, new, self.dense, self.alphabet)


def _marker_indices(system: SplicingSystem) -> list[tuple[int, int]]:
    require_valid(system)
    idx = {s: i for i, s in enumerate(system.alphabet)}
    return [(idx[m.a], idx[m.b]) for m in system.markers]


def sigma_step(system: SplicingSystem, words: WordSet, cap: int | None = None) -> WordSet:
    """``words`` plus every splice result of length at most ``cap``."""
    cap = words.cap if cap is None else cap
    if cap < words.cap and any(len(lv) for lv in words.levels[cap + 1:]):
        raise ValueError("input set has words longer than cap")
    if words.alphabet != system.alphabet:
        raise AutomatonError("word set and system use different alphabets")
    state = _Levels.from_wordset(words, cap)
    return state.step(system.variant, _marker_indices(system)).to_wordset()


def closure_bounded(system: SplicingSystem, out_len: int, intermediate_len: int | None = None,
                    max_words: int | None = None) -> WordSet:
    """Words of length at most ``out_len`` in the splicing closure, computed
    with every intermediate word capped at ``intermediate_len`` (default
    ``out_len + 4``).

    The result is contained in the true language; completeness is only
    guaranteed when no short word needs a longer intermediate.
    """
    if intermediate_len is None:
        intermediate_len = out_len + 4
    if intermediate_len < out_len:
        raise ValueError("intermediate_len must be at least out_len")
    if max_words is None:
        max_words = default_max_words()
    markers = _marker_indices(system)
    state = _Levels.from_dfa(system.initial, intermediate_len)
    while True:
        if state.size() > max_words:
            raise ResourceLimitExceeded(f"closure working set exceeded {max_words} words")
        nxt = state.step(system.variant, markers, max_words)
        if nxt.same(state):
            break
        state = nxt
    return state.to_wordset().restrict(out_len)
