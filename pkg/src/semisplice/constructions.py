"""Automata for the languages generated by semi-simple splicing systems.

Two independent routes are provided for every variant:

* the *iterative* route glues one bridge automaton per marker onto the
  initial DFA, saturates ε-edges until nothing changes, removes the
  ε-edges and determinizes;
* the *direct* route writes the resulting ε-free NFA (variants 13, 24),
  the closed-subset DFA (variant 23) or the pair DFA (variant 14) straight
  from the initial DFA.

Both routes agree on every system; the test suite checks this.

"Useful" always refers to the completed, trimmed initial DFA. A symbol is
*live* when it labels some transition into a useful state, i.e. it occurs in
some word of the initial language; only live symbols can occur in the
generated language, so splice chains are only continued through them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (AutomatonError, Dfa, Nfa, _bits, canonical, minimize,
                       states_of, subset_states, trim_unreachable, useful_states)
from .splicing import SplicingSystem, Variant, require_valid


@dataclass(frozen=True)
class EpsNfa:
    """Initial DFA plus one bridge per marker and a set of ε-edges.

    ``roles[s]`` is ``"q"`` for states of the initial DFA and ``"i"``,
    ``"p"`` or ``"t"`` for bridge-initial, bridge-middle and bridge-final
    states; ``owner[s]`` is the marker index of a bridge state.
    """

    alphabet: tuple[str, ...]
    n_base: int
    roles: tuple[str, ...]
    owner: tuple[int, ...]
    markers: tuple[tuple[int, int], ...]
    edges: dict  # (state, symbol index) -> frozenset of targets
    eps: frozenset  # (source, target) pairs
    start: int
    finals: frozenset
    iterations: int

    @property
    def n(self) -> int:
        return len(self.roles)


class _Base:
    """Precomputed facts about the trimmed initial DFA."""

    def __init__(self, system: SplicingSystem):
        require_valid(system)
        self.system = system
        self.dfa = dfa = trim_unreachable(system.initial)
        self.alphabet = dfa.alphabet
        self.index = {s: i for i, s in enumerate(dfa.alphabet)}
        self.n = dfa.n
        self.k = len(dfa.alphabet)
        self.delta = [[int(r) for r in row] for row in dfa.delta]
        self.useful = useful_states(dfa)
        self.useful_mask = 0
        for q in self.useful:
            self.useful_mask |= 1 << q
        self.images = [0] * self.k
        for row in self.delta:
            for i, r in enumerate(row):
                self.images[i] |= 1 << r
        self.live = [bool(m & self.useful_mask) for m in self.images]
        self.markers = [(self.index[m.a], self.index[m.b]) for m in system.markers]
        self.m1 = sorted({a for a, _ in self.markers})
        self.final_mask = 0
        for q in dfa.finals:
            self.final_mask |= 1 << q

    def step(self, mask: int, i: int) -> int:
        out = 0
        for q in _bits(mask):
            out |= 1 << self.delta[q][i]
        return out


def _expect(system: SplicingSystem, variant: Variant) -> None:
    if system.variant is not variant:
        raise AutomatonError(f"construction needs a {variant.value} system, "
                             f"got {system.variant.value}")


# ---------------------------------------------------------------------------
# iterative route

def iterative_eps_build(system: SplicingSystem) -> EpsNfa:
    base = _Base(system)
    variant = system.variant
    roles = ["q"] * base.n
    owner = [-1] * base.n
    edges: dict[tuple[int, int], set[int]] = {}
    for q, row in enumerate(base.delta):
        for i, r in enumerate(row):
            edges[q, i] = {r}
    eps: set[tuple[int, int]] = set()
    bridges = []
    for mid, (a, b) in enumerate(base.markers):
        i_state = len(roles)
        roles.append("i")
        owner.append(mid)
        if variant is Variant.V14:
            p_state = len(roles)
            roles.append("p")
            owner.append(mid)
        t_state = len(roles)
        roles.append("t")
        owner.append(mid)
        if variant is Variant.V24:
            edges[i_state, b] = {t_state}
        elif variant is Variant.V13:
            edges[i_state, a] = {t_state}
        elif variant is Variant.V14:
            edges[i_state, a] = {p_state}
            edges[p_state, b] = {t_state}
        else:
            eps.add((i_state, t_state))
        bridges.append((a, b, i_state, t_state))

    n_all = len(roles)
    preds: dict[int, set[int]] = {}
    for (s, _), targets in edges.items():
        for r in targets:
            preds.setdefault(r, set()).add(s)
    incoming: dict[int, set[int]] = {}
    for (s, i), targets in edges.items():
        incoming.setdefault(i, set()).update(targets)

    def useful_now(eps_edges):
        back = {r: set(ss) for r, ss in preds.items()}
        for s, r in eps_edges:
            back.setdefault(r, set()).add(s)
        seen = set(base.dfa.finals)
        todo = list(seen)
        while todo:
            r = todo.pop()
            for s in back.get(r, ()):
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        return seen

    iterations = 0
    while True:
        useful = useful_now(eps)
        new = set(eps)
        for a, b, i_state, t_state in bridges:
            for q in range(n_all):
                if roles[q] == "t" or q == i_state:
                    continue
                if any(r in useful for r in edges.get((q, a), ())):
                    new.add((q, i_state))
            for q in incoming.get(b, ()):
                if roles[q] == "i" or q == t_state:
                    continue
                if roles[q] != "q" and not base.live[b]:
                    continue
                new.add((t_state, q))
        if new == eps:
            break
        eps = new
        iterations += 1

    return EpsNfa(base.alphabet, base.n, tuple(roles), tuple(owner), tuple(base.markers),
                  {key: frozenset(v) for key, v in edges.items()}, frozenset(eps),
                  base.dfa.start, frozenset(base.dfa.finals), iterations)


def eliminate_eps(e: EpsNfa) -> Nfa:
    """Remove ε-edges. Only initial-DFA states and bridge-middle states
    survive; bridge-middle states reading the same left symbol are merged."""
    succ_eps: dict[int, list[int]] = {}
    for s, r in e.eps:
        succ_eps.setdefault(s, []).append(r)

    closures: dict[int, frozenset[int]] = {}

    def closure(s):
        if s not in closures:
            seen = {s}
            todo = [s]
            while todo:
                x = todo.pop()
                for y in succ_eps.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            closures[s] = frozenset(seen)
        return closures[s]

    k = len(e.alphabet)
    # middle states of markers (a, *) collapse onto one state per symbol a
    middle_symbol = {s: e.markers[e.owner[s]][0]
                     for s, role in enumerate(e.roles) if role == "p"}
    m1 = sorted(set(middle_symbol.values()))
    slot = {q: q for q in range(e.n_base)}
    for s, a in middle_symbol.items():
        slot[s] = e.n_base + m1.index(a)
    n_out = e.n_base + len(m1)

    rows = [[0] * k for _ in range(n_out)]
    finals = 0
    for s in slot:
        cl = closure(s)
        if cl & e.finals:
            finals |= 1 << slot[s]
        for i in range(k):
            targets = set()
            for r in cl:
                targets.update(e.edges.get((r, i), ()))
            out = 0
            for t in targets:
                for u in closure(t):
                    if u in slot:
                        out |= 1 << slot[u]
            rows[slot[s]][i] |= out
    return Nfa(e.alphabet, tuple(map(tuple, rows)), 1 << slot[e.start], finals)


# ---------------------------------------------------------------------------
# direct route

def construct_nfa_24(system: SplicingSystem) -> Nfa:
    """ε-free NFA on the initial DFA's states: reading ``b`` may jump to
    every state with an incoming ``b`` once some marker ``(a, b)`` can fire
    at the current position."""
    _expect(system, Variant.V24)
    base = _Base(system)
    rows = []
    for q in range(base.n):
        enabled = {i for i in range(base.k) if base.delta[q][i] in base.useful}
        grew = True
        while grew:
            grew = False
            for a, b in base.markers:
                if a in enabled and b not in enabled and base.live[b]:
                    enabled.add(b)
                    grew = True
        row = []
        for i in range(base.k):
            mask = 1 << base.delta[q][i]
            if any(a in enabled and b == i for a, b in base.markers):
                mask |= base.images[i]
            row.append(mask)
        rows.append(tuple(row))
    return Nfa(base.alphabet, tuple(rows), 1 << base.dfa.start, base.final_mask)


def construct_nfa_13(system: SplicingSystem) -> Nfa:
    """ε-free NFA on the initial DFA's states: after a usable ``a`` the run
    may continue from any state entered by a right-hand marker symbol that
    ``a`` reaches through the marker chain."""
    _expect(system, Variant.V13)
    base = _Base(system)
    jump = [0] * base.k
    for a in range(base.k):
        reach = {b for x, b in base.markers if x == a}
        todo = list(reach)
        while todo:
            b = todo.pop()
            if not base.live[b]:
                continue
            for x, d in base.markers:
                if x == b and d not in reach:
                    reach.add(d)
                    todo.append(d)
        for d in reach:
            jump[a] |= base.images[d]
    rows = []
    for q in range(base.n):
        row = []
        for i in range(base.k):
            r = base.delta[q][i]
            mask = 1 << r
            if r in base.useful:
                mask |= jump[i]
            row.append(mask)
        rows.append(tuple(row))
    return Nfa(base.alphabet, tuple(rows), 1 << base.dfa.start, base.final_mask)


def _closure_23_mask(base: _Base, mask: int) -> int:
    done = 0
    todo = mask
    while todo:
        q = (todo & -todo).bit_length() - 1
        todo &= todo - 1
        done |= 1 << q
        for a, b in base.markers:
            if base.delta[q][a] in base.useful:
                mask |= base.images[b]
        todo |= mask & ~done
    return mask


def closure_23(system: SplicingSystem, states) -> frozenset[int]:
    """Least superset of ``states`` that contains ``im δ_b`` whenever it
    contains a state ``q`` with ``δ(q, a)`` useful for a marker ``(a, b)``."""
    _expect(system, Variant.V23)
    base = _Base(system)
    mask = 0
    for q in states:
        if not 0 <= q < base.n:
            raise AutomatonError(f"state {q} out of range")
        mask |= 1 << q
    return states_of(_closure_23_mask(base, mask))


def closed_subset_states(system: SplicingSystem, max_states: int | None = None
                         ) -> tuple[Dfa, list[frozenset[int]]]:
    """Closed-subset DFA together with the subset behind every state."""
    _expect(system, Variant.V23)
    base = _Base(system)
    memo: dict[int, int] = {}

    def close(mask):
        if mask not in memo:
            memo[mask] = _closure_23_mask(base, mask)
        return memo[mask]

    start = close(1 << base.dfa.start)
    rows = []
    for q in range(base.n):
        rows.append(tuple(close(1 << r) for r in base.delta[q]))
    # closing each successor separately is enough: the closure distributes
    # over unions, so close(step(P)) == union of close({δ(q, a)}).
    nfa = Nfa(base.alphabet, tuple(rows), start, base.final_mask)
    dfa, masks = subset_states(nfa, max_states)
    return dfa, [states_of(m) for m in masks]


def construct_dfa_23(system: SplicingSystem, max_states: int | None = None) -> Dfa:
    return closed_subset_states(system, max_states)[0]


def construct_nfa_14(system: SplicingSystem) -> Nfa:
    """NFA on the initial states plus one middle state ``p_a`` per left
    marker symbol ``a``."""
    _expect(system, Variant.V14)
    base = _Base(system)
    slot = {a: base.n + j for j, a in enumerate(base.m1)}
    rows = []
    for q in range(base.n):
        row = []
        for i in range(base.k):
            r = base.delta[q][i]
            mask = 1 << r
            if i in slot and r in base.useful:
                mask |= 1 << slot[i]
            row.append(mask)
        rows.append(tuple(row))
    for a in base.m1:
        row = [0] * base.k
        for x, b in base.markers:
            if x != a:
                continue
            row[b] |= base.images[b]
            if b in slot and base.live[b]:
                row[b] |= 1 << slot[b]
        rows.append(tuple(row))
    return Nfa(base.alphabet, tuple(rows), 1 << base.dfa.start, base.final_mask)


def pair_states(system: SplicingSystem, max_states: int | None = None
                ) -> tuple[Dfa, list[tuple[frozenset[int], str | None]]]:
    """Pair DFA over ``(subset, pending)`` together with the label of every
    state; ``pending`` is the last symbol read when it can open a splice."""
    _expect(system, Variant.V14)
    from .automata import ResourceLimitExceeded, default_max_states
    if max_states is None:
        max_states = default_max_states()
    base = _Base(system)
    m1 = set(base.m1)
    marker_set = set(base.markers)
    start = (1 << base.dfa.start, -1)
    index = {start: 0}
    order = [start]
    rows = []
    pos = 0
    while pos < len(order):
        mask, pending = order[pos]
        pos += 1
        row = []
        for x in range(base.k):
            if pending >= 0 and (pending, x) in marker_set:
                nxt = base.images[x]
            else:
                nxt = base.step(mask, x)
            pend = x if x in m1 and nxt & base.useful_mask else -1
            key = (nxt, pend)
            j = index.get(key)
            if j is None:
                j = len(order)
                if j >= max_states:
                    raise ResourceLimitExceeded(f"pair DFA exceeded {max_states} states")
                index[key] = j
                order.append(key)
            row.append(j)
        rows.append(row)
    finals = frozenset(j for j, (mask, _) in enumerate(order) if mask & base.final_mask)
    dfa = Dfa(base.alphabet, rows, 0, finals)
    labels = [(states_of(mask), base.alphabet[p] if p >= 0 else None) for mask, p in order]
    return dfa, labels


def construct_dfa_14(system: SplicingSystem, max_states: int | None = None) -> Dfa:
    return pair_states(system, max_states)[0]


# ---------------------------------------------------------------------------

def build(system: SplicingSystem, path: str = "direct", max_states: int | None = None) -> Dfa:
    """Reachable, unminimized DFA for the generated language."""
    if path == "iterative":
        nfa = eliminate_eps(iterative_eps_build(system))
        return subset_states(nfa, max_states)[0]
    if path != "direct":
        raise ValueError(f"unknown construction path {path!r}")
    v = system.variant
    if v is Variant.V24:
        return subset_states(construct_nfa_24(system), max_states)[0]
    if v is Variant.V13:
        return subset_states(construct_nfa_13(system), max_states)[0]
    if v is Variant.V23:
        return construct_dfa_23(system, max_states)
    return construct_dfa_14(system, max_states)


def construct(system: SplicingSystem, path: str = "direct", minimal: bool = True,
              max_states: int | None = None) -> Dfa:
    """DFA for the language generated by ``system``; minimal unless
    ``minimal=False``, in which case the reachable raw DFA is returned in
    canonical numbering."""
    raw = build(system, path, max_states)
    return minimize(raw) if minimal else canonical(raw)
