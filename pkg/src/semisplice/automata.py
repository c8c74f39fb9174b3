"""Finite automata over interned symbol alphabets.

States are dense integer indices. A :class:`Dfa` keeps its transition table
as an ``(n, k)`` integer array where ``-1`` marks a missing edge; most
operations require a complete table (see :func:`complete`). An :class:`Nfa`
stores set-valued transitions as integer bitmasks, which keeps subset
construction cheap for the state counts this package deals with.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

Word = tuple[str, ...]


class AutomatonError(ValueError):
    """Raised for malformed automata or symbols outside an alphabet."""


class ResourceLimitExceeded(RuntimeError):
    """A construction or enumeration grew past its configured ceiling."""


def default_max_states() -> int:
    return int(os.environ.get("SEMISPLICE_MAX_STATES", "200000"))


def mask_of(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def states_of(mask: int) -> frozenset[int]:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return frozenset(out)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_alphabet(alphabet: Sequence[str]) -> tuple[str, ...]:
    alphabet = tuple(alphabet)
    for s in alphabet:
        if not isinstance(s, str) or not s:
            raise AutomatonError(f"symbols must be nonempty strings, got {s!r}")
    if len(set(alphabet)) != len(alphabet):
        raise AutomatonError("duplicate symbol in alphabet")
    return alphabet


def as_word(alphabet: Sequence[str], w) -> Word:
    """Normalize ``w`` to a tuple of symbol tokens.

    Strings are split into characters when every symbol of the alphabet is a
    single character, and on whitespace otherwise.
    """
    if isinstance(w, str):
        if all(len(s) == 1 for s in alphabet):
            return tuple(w)
        return tuple(w.split())
    return tuple(w)


def word_str(w: Word) -> str:
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True, eq=False)
class Dfa:
    alphabet: tuple[str, ...]
    delta: np.ndarray
    start: int
    finals: frozenset[int]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alphabet = _check_alphabet(self.alphabet)
        delta = np.array(self.delta, dtype=np.int64, copy=True)
        if delta.ndim != 2 or delta.shape[1] != len(alphabet):
            raise AutomatonError(
                f"transition table shape {delta.shape} does not match "
                f"{len(alphabet)} symbols")
        n = delta.shape[0]
        if n == 0:
            raise AutomatonError("a DFA needs at least one state")
        if delta.size and (delta.min() < -1 or delta.max() >= n):
            raise AutomatonError("transition target out of range")
        if not 0 <= self.start < n:
            raise AutomatonError(f"start state {self.start} out of range")
        finals = frozenset(int(q) for q in self.finals)
        if any(not 0 <= q < n for q in finals):
            raise AutomatonError("final state out of range")
        delta.setflags(write=False)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "start", int(self.start))
        object.__setattr__(self, "finals", finals)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(alphabet)})

    @classmethod
    def from_edges(cls, alphabet, n, start, finals, edges) -> "Dfa":
        """Build a (possibly partial) DFA from ``(q, symbol, q')`` triples."""
        alphabet = _check_alphabet(alphabet)
        index = {s: i for i, s in enumerate(alphabet)}
        table = np.full((n, len(alphabet)), -1, dtype=np.int64)
        for q, s, r in edges:
            if s not in index:
                raise AutomatonError(f"unknown symbol {s!r}")
            if table[q, index[s]] not in (-1, r):
                raise AutomatonError(f"conflicting transitions from {q} on {s!r}")
            table[q, index[s]] = r
        return cls(alphabet, table, start, frozenset(finals))

    @property
    def n(self) -> int:
        return self.delta.shape[0]

    @property
    def is_complete(self) -> bool:
        return bool((self.delta >= 0).all())

    def symbol_index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise AutomatonError(f"symbol {a!r} not in alphabet") from None

    def step(self, q: int, a: str) -> int:
        return int(self.delta[q, self.symbol_index(a)])

    def edges(self):
        for q in range(self.n):
            for i, a in enumerate(self.alphabet):
                r = int(self.delta[q, i])
                if r >= 0:
                    yield q, a, r

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.start == other.start
                and self.finals == other.finals
                and np.array_equal(self.delta, other.delta))

    def __hash__(self):
        return hash((self.alphabet, self.start, self.finals, self.delta.tobytes()))

    def __repr__(self):
        return (f"Dfa(states={self.n}, alphabet={list(self.alphabet)}, "
                f"start={self.start}, finals={sorted(self.finals)})")


@dataclass(frozen=True, eq=False)
class Nfa:
    """ε-free NFA. ``delta[q][i]`` is the bitmask of successors of ``q`` on
    symbol ``alphabet[i]``; ``starts`` and ``finals`` are bitmasks too."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    starts: int
    finals: int
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alphabet = _check_alphabet(self.alphabet)
        delta = tuple(tuple(int(m) for m in row) for row in self.delta)
        n = len(delta)
        limit = 1 << n
        for row in delta:
            if len(row) != len(alphabet):
                raise AutomatonError("transition row does not match alphabet")
            if any(m < 0 or m >= limit for m in row):
                raise AutomatonError("transition target out of range")
        if self.starts >= limit or self.finals >= limit:
            raise AutomatonError("start/final state out of range")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(alphabet)})

    @classmethod
    def from_sets(cls, alphabet, n, starts, finals, transitions) -> "Nfa":
        """``transitions`` maps ``(q, symbol)`` to an iterable of targets."""
        alphabet = _check_alphabet(alphabet)
        index = {s: i for i, s in enumerate(alphabet)}
        rows = [[0] * len(alphabet) for _ in range(n)]
        for (q, a), targets in transitions.items():
            if a not in index:
                raise AutomatonError(f"unknown symbol {a!r}")
            rows[q][index[a]] |= mask_of(targets)
        return cls(alphabet, tuple(map(tuple, rows)), mask_of(starts), mask_of(finals))

    @classmethod
    def from_dfa(cls, dfa: Dfa) -> "Nfa":
        rows = tuple(tuple(0 if r < 0 else 1 << int(r) for r in row) for row in dfa.delta)
        return cls(dfa.alphabet, rows, 1 << dfa.start, mask_of(dfa.finals))

    @property
    def n(self) -> int:
        return len(self.delta)

    def symbol_index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise AutomatonError(f"symbol {a!r} not in alphabet") from None

    def successors(self, q: int, a: str) -> frozenset[int]:
        return states_of(self.delta[q][self.symbol_index(a)])

    def step_mask(self, mask: int, i: int) -> int:
        out = 0
        for q in _bits(mask):
            out |= self.delta[q][i]
        return out

    def __eq__(self, other):
        if not isinstance(other, Nfa):
            return NotImplemented
        return (self.alphabet, self.delta, self.starts, self.finals) == \
            (other.alphabet, other.delta, other.starts, other.finals)

    def __hash__(self):
        return hash((self.alphabet, self.delta, self.starts, self.finals))

    def __repr__(self):
        return (f"Nfa(states={self.n}, alphabet={list(self.alphabet)}, "
                f"starts={sorted(states_of(self.starts))}, "
                f"finals={sorted(states_of(self.finals))})")


def _require_complete(dfa: Dfa) -> None:
    if not dfa.is_complete:
        raise AutomatonError("operation requires a complete DFA; call complete() first")


def complete(dfa: Dfa) -> Dfa:
    """Route every missing transition to a single fresh sink state."""
    if dfa.is_complete:
        return dfa
    n = dfa.n
    table = np.vstack([np.asarray(dfa.delta), np.full((1, len(dfa.alphabet)), n)])
    table[table < 0] = n
    return Dfa(dfa.alphabet, table, dfa.start, dfa.finals)


def reachable_states(dfa: Dfa) -> frozenset[int]:
    seen = {dfa.start}
    todo = [dfa.start]
    while todo:
        q = todo.pop()
        for r in dfa.delta[q]:
            r = int(r)
            if r >= 0 and r not in seen:
                seen.add(r)
                todo.append(r)
    return frozenset(seen)


def trim_unreachable(dfa: Dfa) -> Dfa:
    """Drop states not reachable from the start, keeping relative order."""
    keep = sorted(reachable_states(dfa))
    if len(keep) == dfa.n:
        return dfa
    renum = np.full(dfa.n, -1, dtype=np.int64)
    renum[keep] = np.arange(len(keep))
    sub = np.asarray(dfa.delta)[keep]
    table = np.where(sub >= 0, renum[np.maximum(sub, 0)], -1)
    return Dfa(dfa.alphabet, table, int(renum[dfa.start]),
               frozenset(int(renum[q]) for q in dfa.finals if renum[q] >= 0))


def useful_states(dfa: Dfa) -> frozenset[int]:
    """States from which some word leads to a final state."""
    preds: list[set[int]] = [set() for _ in range(dfa.n)]
    for q in range(dfa.n):
        for r in dfa.delta[q]:
            if r >= 0:
                preds[int(r)].add(q)
    seen = set(dfa.finals)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return frozenset(seen)


def image(dfa: Dfa, a: str) -> frozenset[int]:
    """States with an incoming transition on ``a``."""
    col = dfa.delta[:, dfa.symbol_index(a)]
    return frozenset(int(r) for r in col if r >= 0)


def is_acyclic_off_sink(dfa: Dfa) -> bool:
    """True when every cycle of the reachable part runs through useless
    states only, i.e. the DFA accepts a finite language."""
    useful = useful_states(dfa)
    live = [q for q in reachable_states(dfa) if q in useful]
    live_set = set(live)
    color = dict.fromkeys(live, 0)
    for root in live:
        if color[root]:
            continue
        stack = [(root, iter(dfa.delta[root]))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            for r in it:
                r = int(r)
                if r not in live_set:
                    continue
                if color[r] == 1:
                    return False
                if color[r] == 0:
                    color[r] = 1
                    stack.append((r, iter(dfa.delta[r])))
                    break
            else:
                color[q] = 2
                stack.pop()
    return True


def subset_states(nfa: Nfa, max_states: int | None = None) -> tuple[Dfa, list[int]]:
    """Subset construction that also returns the subset (bitmask) behind
    each DFA state, in discovery order."""
    if max_states is None:
        max_states = default_max_states()
    k = len(nfa.alphabet)
    index = {nfa.starts: 0}
    subsets = [nfa.starts]
    rows: list[list[int]] = []
    queue = deque([nfa.starts])
    while queue:
        mask = queue.popleft()
        row = []
        for i in range(k):
            nxt = nfa.step_mask(mask, i)
            j = index.get(nxt)
            if j is None:
                j = len(subsets)
                if j >= max_states:
                    raise ResourceLimitExceeded(
                        f"subset construction exceeded {max_states} states")
                index[nxt] = j
                subsets.append(nxt)
                queue.append(nxt)
            row.append(j)
        rows.append(row)
    finals = frozenset(i for i, m in enumerate(subsets) if m & nfa.finals)
    table = np.array(rows, dtype=np.int64).reshape(len(subsets), k)
    return Dfa(nfa.alphabet, table, 0, finals), subsets


def subset_construct(nfa: Nfa, max_states: int | None = None) -> Dfa:
    return subset_states(nfa, max_states)[0]


def canonical(dfa: Dfa) -> Dfa:
    """Renumber the reachable part in BFS order from the start state,
    visiting symbols in alphabet order."""
    _require_complete(dfa)
    order = {dfa.start: 0}
    queue = deque([dfa.start])
    seq = [dfa.start]
    while queue:
        q = queue.popleft()
        for r in dfa.delta[q]:
            r = int(r)
            if r not in order:
                order[r] = len(seq)
                seq.append(r)
                queue.append(r)
    renum = np.full(dfa.n, -1, dtype=np.int64)
    for old, new in order.items():
        renum[old] = new
    table = renum[np.asarray(dfa.delta)[seq]]
    return Dfa(dfa.alphabet, table, 0, frozenset(order[q] for q in dfa.finals if q in order))


def minimize(dfa: Dfa) -> Dfa:
    """Hopcroft partition refinement followed by canonical BFS numbering."""
    _require_complete(dfa)
    dfa = trim_unreachable(dfa)
    n, k = dfa.delta.shape
    delta = np.asarray(dfa.delta)

    inverse: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(k)]
    for q in range(n):
        for i in range(k):
            inverse[i][int(delta[q, i])].append(q)

    finals = set(dfa.finals)
    blocks: list[set[int]] = [b for b in (finals, set(range(n)) - finals) if b]
    block_of = [0] * n
    for bid, b in enumerate(blocks):
        for q in b:
            block_of[q] = bid

    pending: set[tuple[int, int]] = set()
    if len(blocks) == 2:
        small = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        pending = {(small, i) for i in range(k)}
    work = list(pending)

    while work:
        splitter = work.pop()
        pending.discard(splitter)
        bid, i = splitter
        preimage: set[int] = set()
        for q in blocks[bid]:
            preimage.update(inverse[i][q])
        touched: dict[int, set[int]] = {}
        for p in preimage:
            touched.setdefault(block_of[p], set()).add(p)
        for yid, inside in touched.items():
            y = blocks[yid]
            if len(inside) == len(y):
                continue
            outside = y - inside
            blocks[yid] = inside
            new = len(blocks)
            blocks.append(outside)
            for q in outside:
                block_of[q] = new
            for c in range(k):
                if (yid, c) in pending:
                    entry = (new, c)
                else:
                    entry = (yid, c) if len(inside) <= len(outside) else (new, c)
                if entry not in pending:
                    pending.add(entry)
                    work.append(entry)

    m = len(blocks)
    table = np.zeros((m, k), dtype=np.int64)
    for bid, b in enumerate(blocks):
        q = next(iter(b))
        table[bid] = [block_of[int(r)] for r in delta[q]]
    qfinals = frozenset(block_of[q] for q in finals)
    return canonical(Dfa(dfa.alphabet, table, block_of[dfa.start], qfinals))


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality via Hopcroft-Karp union-find on the disjoint union."""
    _require_complete(a)
    _require_complete(b)
    if set(a.alphabet) != set(b.alphabet):
        raise AutomatonError("cannot compare automata over different alphabets")
    cols = [b.symbol_index(s) for s in a.alphabet]
    bd = np.asarray(b.delta)[:, cols]
    ad = np.asarray(a.delta)
    off = a.n
    parent = list(range(a.n + b.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def is_final(x):
        return x in a.finals if x < off else (x - off) in b.finals

    def succ(x, i):
        return int(ad[x, i]) if x < off else int(bd[x - off, i]) + off

    stack = [(a.start, b.start + off)]
    parent[find(a.start)] = find(b.start + off)
    while stack:
        x, y = stack.pop()
        if is_final(x) != is_final(y):
            return False
        for i in range(len(a.alphabet)):
            rx, ry = find(succ(x, i)), find(succ(y, i))
            if rx != ry:
                parent[rx] = ry
                stack.append((succ(x, i), succ(y, i)))
    return True


def accepts(m: Dfa | Nfa, w) -> bool:
    w = as_word(m.alphabet, w)
    if isinstance(m, Dfa):
        q = m.start
        for a in w:
            q = int(m.delta[q, m.symbol_index(a)])
            if q < 0:
                return False
        return q in m.finals
    mask = m.starts
    for a in w:
        mask = m.step_mask(mask, m.symbol_index(a))
    return bool(mask & m.finals)


def enumerate_accepted(dfa: Dfa, max_len: int) -> list[Word]:
    """All accepted words of length at most ``max_len`` in lexicographic
    order (symbols ranked by alphabet position)."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    useful = useful_states(dfa)
    out: list[tuple[int, ...]] = []

    def walk(q, prefix):
        if q in dfa.finals:
            out.append(prefix)
        if len(prefix) == max_len:
            return
        for i in range(len(dfa.alphabet)):
            r = int(dfa.delta[q, i])
            if r >= 0 and r in useful:
                walk(r, prefix + (i,))

    if dfa.start in useful:
        walk(dfa.start, ())
    return [tuple(dfa.alphabet[i] for i in w) for w in out]
