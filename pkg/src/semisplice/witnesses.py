"""Lower-bound witness families.

Every generator returns a :class:`SplicingSystem` whose initial DFA is
complete, has exactly ``n`` states (the last one is a sink for the finite
families) and is minimal.
"""

from __future__ import annotations

import enum
from itertools import combinations

from .automata import Dfa
from .splicing import Marker, SplicingSystem, Variant


class FamilyId(enum.Enum):
    W24_FINITE = "24-finite"
    W23_REGULAR = "23-regular"
    W23_SEMI_FINITE = "23-semi-finite"
    W23_SIMPLE_FINITE = "23-simple-finite"
    W14_REGULAR = "14-regular"
    W14_SEMI_FINITE = "14-semi-finite"

    @classmethod
    def parse(cls, text) -> "FamilyId":
        if isinstance(text, FamilyId):
            return text
        t = str(text).strip()
        for f in cls:
            if t in (f.value, f.name, f.name.lower()):
                return f
        raise ValueError(f"unknown witness family {text!r}; choose from "
                         + ", ".join(f.value for f in cls))

    @property
    def variant(self) -> Variant:
        return Variant(self.value[:2])

    @property
    def min_n(self) -> int:
        return _MIN_N[self]

    @property
    def finite(self) -> bool:
        return self.value.endswith("finite")


_MIN_N = {
    FamilyId.W24_FINITE: 5,
    FamilyId.W23_REGULAR: 3,
    FamilyId.W23_SEMI_FINITE: 5,
    FamilyId.W23_SIMPLE_FINITE: 7,
    FamilyId.W14_REGULAR: 3,
    FamilyId.W14_SEMI_FINITE: 5,
}


def _check_n(family: FamilyId, n: int) -> None:
    if not isinstance(n, int) or n < family.min_n:
        raise ValueError(f"{family.value} needs n >= {family.min_n}, got {n!r}")


def subset_symbol(s) -> str:
    return "a_{" + ",".join(str(i) for i in s) + "}"


def _subsets(lo: int, hi: int):
    items = range(lo, hi + 1)
    out = []
    for r in range(len(items) + 1):
        out.extend(combinations(items, r))
    return sorted(out)


def _table(n, alphabet, fill):
    return [[fill] * len(alphabet) for _ in range(n)]


def _jump(i: int, s, top: int, sink: int) -> int:
    nxt = [j for j in s if i < j <= top]
    return min(nxt) if nxt else sink


def witness_24_finite(n: int) -> SplicingSystem:
    _check_n(FamilyId.W24_FINITE, n)
    gamma = _subsets(2, n - 2)
    alphabet = ["b"] + [subset_symbol(s) for s in gamma]
    sink = n - 1
    t = _table(n, alphabet, sink)
    for i in range(n - 2):
        t[i][0] = i + 1
    for col, s in enumerate(gamma, 1):
        t[0][col] = 1
        for i in range(1, n - 2):
            t[i][col] = _jump(i, s, n - 2, sink)
    markers = [Marker("b", g) for g in alphabet[1:]]
    return SplicingSystem(Variant.V24, Dfa(alphabet, t, 0, {n - 2}), markers)


def witness_23_regular(n: int) -> SplicingSystem:
    _check_n(FamilyId.W23_REGULAR, n)
    t = []
    for i in range(n):
        b = 0 if i <= 1 else i
        t.append([(i + 1) % n, b, 0])
    return SplicingSystem(Variant.V23, Dfa(("a", "b", "c"), t, 0, {n - 1}),
                          [Marker("c", "c")])


def witness_23_semi_finite(n: int) -> SplicingSystem:
    _check_n(FamilyId.W23_SEMI_FINITE, n)
    sink = n - 1
    t = _table(n, "abc", sink)
    for i in range(1, n - 2):
        t[i][0] = i + 1
    for i in range(2, n - 2):
        t[i][1] = i + 1
    t[0][2] = 1
    return SplicingSystem(Variant.V23, Dfa(("a", "b", "c"), t, 0, {n - 2}),
                          [Marker("a", "c")])


def witness_23_simple_finite(n: int) -> SplicingSystem:
    _check_n(FamilyId.W23_SIMPLE_FINITE, n)
    sink = n - 1
    top = n - 2
    steps = {  # states i < n-1 that move to i+1 on each symbol
        "a": set(range(0, top)),
        "b": {0, 1, 2} | set(range(4, top)),
        "c": {0, 1, 2},
        "d": set(range(2, top)),
        "e": {2} | set(range(4, top)),
        "f": set(range(3, top)),
        "g": set(range(4, top)),
    }
    alphabet = tuple("abcdefg")
    t = _table(n, alphabet, sink)
    for col, x in enumerate(alphabet):
        for i in steps[x]:
            t[i][col] = i + 1
    return SplicingSystem(Variant.V23, Dfa(alphabet, t, 0, {top}), [Marker("c", "c")])


def witness_14_regular(n: int, extra_loops: int = 0) -> SplicingSystem:
    _check_n(FamilyId.W14_REGULAR, n)
    if extra_loops < 0:
        raise ValueError("extra_loops must be nonnegative")
    loops = ["c"] + [f"c_{k}" for k in range(1, extra_loops + 1)]
    alphabet = ["a", "b"] + loops
    t = []
    for i in range(n):
        b = i if i <= n - 2 else 0
        t.append([(i + 1) % n, b] + [i] * len(loops))
    return SplicingSystem(Variant.V14, Dfa(alphabet, t, 0, {0}),
                          [Marker(x, x) for x in loops])


def witness_14_semi_finite(n: int, extra_pairs: int = 0) -> SplicingSystem:
    _check_n(FamilyId.W14_SEMI_FINITE, n)
    if extra_pairs < 0:
        raise ValueError("extra_pairs must be nonnegative")
    gamma = _subsets(1, n - 2)
    chain = ["b", "c", "d"]
    for k in range(1, extra_pairs + 1):
        chain += [f"s_{k}", f"t_{k}"]
    alphabet = chain + [subset_symbol(s) for s in gamma]
    sink = n - 1
    t = _table(n, alphabet, sink)
    for col in range(len(chain)):
        for i in range(n - 2):
            t[i][col] = i + 1
    for col, s in enumerate(gamma, len(chain)):
        for i in range(n - 1):
            t[i][col] = _jump(i, s, n - 2, sink)
    markers = [Marker("b", subset_symbol(s)) for s in gamma]
    markers += [Marker("b", "d"), Marker("d", "b")]
    for k in range(1, extra_pairs + 1):
        markers += [Marker(f"s_{k}", f"t_{k}"), Marker(f"t_{k}", f"s_{k}")]
    return SplicingSystem(Variant.V14, Dfa(alphabet, t, 0, {n - 2}), markers)


_GENERATORS = {
    FamilyId.W24_FINITE: lambda n, extra: witness_24_finite(n),
    FamilyId.W23_REGULAR: lambda n, extra: witness_23_regular(n),
    FamilyId.W23_SEMI_FINITE: lambda n, extra: witness_23_semi_finite(n),
    FamilyId.W23_SIMPLE_FINITE: lambda n, extra: witness_23_simple_finite(n),
    FamilyId.W14_REGULAR: lambda n, extra: witness_14_regular(n, extra),
    FamilyId.W14_SEMI_FINITE: lambda n, extra: witness_14_semi_finite(n, extra),
}


def witness(family, n: int, extra: int = 0) -> SplicingSystem:
    """Generate a family member; ``extra`` is the number of additional loop
    symbols or symbol pairs for the (1,4) families and must be 0 otherwise."""
    family = FamilyId.parse(family)
    if extra and family not in (FamilyId.W14_REGULAR, FamilyId.W14_SEMI_FINITE):
        raise ValueError(f"{family.value} takes no extra parameter")
    return _GENERATORS[family](n, extra)


def m1_size(family, extra: int = 0) -> int:
    family = FamilyId.parse(family)
    if family is FamilyId.W14_REGULAR:
        return 1 + extra
    if family is FamilyId.W14_SEMI_FINITE:
        return 2 + 2 * extra
    return 1
