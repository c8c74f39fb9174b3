import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semisplice.automata import (AutomatonError, Dfa, Nfa, accepts, as_word, canonical, complete,
                                 enumerate_accepted, equivalent, image, is_acyclic_off_sink,
                                 minimize, reachable_states, subset_construct, subset_states,
                                 trim_unreachable, useful_states)
from semisplice.witnesses import witness_14_regular, witness_23_regular, witness_23_semi_finite

import oracles


def dfa_strategy(max_n=6, max_k=3):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        k = draw(st.integers(1, max_k))
        table = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=k, max_size=k),
                              min_size=n, max_size=n))
        finals = draw(st.sets(st.integers(0, n - 1)))
        return Dfa(tuple("abc"[:k]), table, 0, finals)
    return build()


def random_nfa(rng, n, k):
    rows = [[rng.getrandbits(n) & rng.getrandbits(n) for _ in range(k)] for _ in range(n)]
    starts = rng.getrandbits(n) or 1
    finals = rng.getrandbits(n)
    return Nfa(tuple("ab"[:k]), rows, starts, finals)


def ab_dfa():
    # {ab} without its sink
    return Dfa.from_edges("ab", 3, 0, [2], [(0, "a", 1), (1, "b", 2)])


def test_complete_adds_one_sink():
    d = complete(ab_dfa())
    assert d.n == 4 and d.is_complete
    assert set(d.delta[3]) == {3}
    assert d.step(0, "b") == 3


def test_complete_leaves_complete_dfa_alone():
    d = Dfa("a", [[1], [0]], 0, {1})
    assert complete(d) is d


def test_complete_single_state_without_edges():
    d = complete(Dfa.from_edges("a", 1, 0, [0], []))
    assert d.n == 2 and accepts(d, "") and not accepts(d, "a")


def test_complete_fig4_without_sink():
    full = witness_23_semi_finite(6).initial
    edges = [(q, a, r) for q, a, r in full.edges() if r != 5 and q != 5]
    partial = Dfa.from_edges(full.alphabet, 5, 0, full.finals, edges)
    assert complete(partial) == full


def test_useful_states_examples():
    d = complete(ab_dfa())
    assert useful_states(d) == {0, 1, 2}
    assert useful_states(witness_23_regular(5).initial) == set(range(5))
    # a three-state trap component hanging off state 0
    t = Dfa("ab", [[1, 2], [1, 1], [3, 4], [4, 2], [2, 3]], 0, {1})
    assert useful_states(t) == {0, 1}


def test_image_examples():
    assert image(witness_14_regular(5).initial, "c") == set(range(5))
    assert image(witness_23_semi_finite(6).initial, "c") == {1, 5}
    assert image(Dfa("a", [[0], [1]], 0, set()), "a") == {0, 1}
    with pytest.raises(AutomatonError):
        image(witness_14_regular(3).initial, "z")


def test_accepts_examples():
    assert accepts(Dfa("a", [[0]], 0, {0}), "")
    for n in (3, 5, 7):
        assert accepts(witness_23_regular(n).initial, "a" * (n - 1))
    f4 = witness_23_semi_finite(7).initial
    assert accepts(f4, "c" + "a" * 4)
    assert not accepts(f4, "b" + "a" * 4)
    with pytest.raises(AutomatonError):
        accepts(f4, "x")


def test_enumerate_accepted_examples():
    empty = Dfa("ab", [[0, 0]], 0, set())
    assert enumerate_accepted(empty, 5) == []
    star = Dfa("a", [[0]], 0, {0})
    assert enumerate_accepted(star, 2) == [(), ("a",), ("a", "a")]
    # a(ba)*
    aba = Dfa("ab", [[1, 2], [2, 0], [2, 2]], 0, {1})
    got = ["".join(w) for w in enumerate_accepted(aba, 5)]
    assert sorted(got, key=len) == ["a", "aba", "ababa"]


def test_enumerate_is_lexicographic():
    d = Dfa("ab", [[0, 0]], 0, {0})
    words = enumerate_accepted(d, 3)
    assert words == sorted(words)
    assert len(words) == 15


def test_subset_construct_examples():
    d = witness_23_regular(4).initial
    s = subset_construct(Nfa.from_dfa(d))
    assert s.n == d.n and equivalent(s, d)
    # both states initial; a swaps them, so nothing new is reached
    swap = Nfa("a", [[0b10], [0b01]], 0b11, 0b01)
    assert subset_construct(swap).n == 1
    # both initial, a moves 0 to 1 and kills 1: {0,1} -> {1} -> {} by hand
    dfa, subsets = subset_states(Nfa("a", [[0b10], [0]], 0b11, 0b10))
    assert subsets == [0b11, 0b10, 0]
    assert dfa.n == 3 and dfa.finals == {0, 1}


def test_minimize_merges_sink_duplicates():
    # finite language {a, b}: NFA 0 -a-> {1}, 0 -b-> {1, sink}; the subset
    # DFA reaches both {1} and {1, sink}, which accept the same words
    nfa = Nfa("ab", [[0b010, 0b110], [0b100, 0b100], [0b100, 0b100]], 0b001, 0b010)
    raw = subset_construct(nfa)
    assert raw.n == 4  # {0}, {1}, {1,s}, {s}
    m = minimize(raw)
    assert m.n == 3 and equivalent(m, raw)


def test_minimize_already_minimal():
    d = witness_23_regular(5).initial
    assert minimize(d) == canonical(d)


def test_minimize_requires_complete():
    with pytest.raises(AutomatonError):
        minimize(ab_dfa())


def test_equivalent_alphabet_mismatch():
    with pytest.raises(AutomatonError):
        equivalent(Dfa("a", [[0]], 0, set()), Dfa("b", [[0]], 0, set()))


def test_equivalent_distinguishes():
    a = Dfa("a", [[1], [0]], 0, {0})
    b = Dfa("a", [[0]], 0, {0})
    assert not equivalent(a, b)
    assert equivalent(a, a)


def test_trim_unreachable_keeps_order():
    d = Dfa("a", [[2], [1], [0]], 0, {2, 1})
    t = trim_unreachable(d)
    assert t.n == 2 and t.finals == {1}
    assert reachable_states(d) == {0, 2}


def test_acyclic_check():
    assert is_acyclic_off_sink(witness_23_semi_finite(6).initial)
    assert not is_acyclic_off_sink(witness_23_regular(4).initial)
    # cycle only through a useless part
    d = Dfa("a", [[1], [2], [1]], 0, {0})
    assert is_acyclic_off_sink(d)


def test_as_word_multichar():
    assert as_word(("a_{1}", "b"), "b a_{1}") == ("b", "a_{1}")
    assert as_word("ab", "ab") == ("a", "b")


def test_dfa_validation():
    with pytest.raises(AutomatonError):
        Dfa("a", [[2]], 0, set())
    with pytest.raises(AutomatonError):
        Dfa("aa", [[0, 0]], 0, set())
    with pytest.raises(AutomatonError):
        Dfa("a", [[0]], 1, set())
    with pytest.raises(AutomatonError):
        Dfa.from_edges("a", 2, 0, [], [(0, "a", 1), (0, "a", 0)])


def test_dfa_is_immutable():
    d = Dfa("a", [[0]], 0, set())
    with pytest.raises(ValueError):
        d.delta[0, 0] = 0


@settings(max_examples=150, deadline=None)
@given(dfa_strategy())
def test_minimize_properties(d):
    m = minimize(d)
    assert equivalent(m, d)
    assert m.n <= d.n
    assert minimize(m) == m
    tbl = [list(map(int, row)) for row in d.delta]
    assert m.n == oracles.table_filling_size(tbl, d.start, d.finals)


@settings(max_examples=100, deadline=None)
@given(dfa_strategy(max_n=5, max_k=2))
def test_sink_is_never_useful(d):
    c = complete(d)
    sinks = [q for q in range(c.n)
             if all(int(r) == q for r in c.delta[q]) and q not in c.finals]
    assert not set(sinks) & useful_states(c)


@settings(max_examples=60, deadline=None)
@given(dfa_strategy(max_n=4, max_k=2), dfa_strategy(max_n=4, max_k=2),
       dfa_strategy(max_n=4, max_k=2))
def test_equivalent_is_an_equivalence(a, b, c):
    if not (a.alphabet == b.alphabet == c.alphabet):
        return
    assert equivalent(a, a)
    assert equivalent(a, b) == equivalent(b, a)
    if equivalent(a, b) and equivalent(b, c):
        assert equivalent(a, c)


def test_subset_construct_preserves_membership():
    rng = random.Random(11)
    for _ in range(40):
        nfa = random_nfa(rng, rng.randint(1, 5), 2)
        d = subset_construct(nfa)
        trans = {}
        for q in range(nfa.n):
            for i, a in enumerate(nfa.alphabet):
                trans[q, a] = {r for r in range(nfa.n) if nfa.delta[q][i] >> r & 1}
        starts = [q for q in range(nfa.n) if nfa.starts >> q & 1]
        finals = [q for q in range(nfa.n) if nfa.finals >> q & 1]
        for w in oracles.all_words(nfa.alphabet, 8):
            assert accepts(d, w) == oracles.nfa_accepts(trans, starts, finals, w)


def test_canonical_numbering_is_stable():
    d = Dfa("ab", [[2, 1], [1, 1], [0, 1]], 0, {2})
    m = minimize(d)
    assert m.start == 0
    assert np.array_equal(minimize(canonical(d)).delta, m.delta)
