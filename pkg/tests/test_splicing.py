import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semisplice.automata import AutomatonError, Dfa, enumerate_accepted
from semisplice.constructions import construct
from semisplice.lab import random_system
from semisplice.splicing import (Marker, SplicingSystem, Variant, WordSet, closure_bounded,
                                 format_markers, parse_markers, sigma_step, splice, validate)
from semisplice.witnesses import witness_23_regular, witness_23_semi_finite

import oracles


def words(ws):
    return {"".join(w) for w in ws}


def aba_system(markers=(("a", "a"),), variant="13"):
    d = Dfa.from_edges("ab", 4, 0, [3], [(0, "a", 1), (1, "b", 2), (2, "a", 3)])
    return SplicingSystem(variant, d, markers)


def test_variant_parse():
    assert Variant.parse("V13") is Variant.V13
    assert Variant.parse("(2,4)") is Variant.V24
    assert Variant.parse(23) is Variant.V23
    with pytest.raises(ValueError):
        Variant.parse("12")


def test_markers_parse_and_format():
    ms = parse_markers("b:a_{2,3}, b:d,d:b")
    assert ms == (Marker("b", "a_{2,3}"), Marker("b", "d"), Marker("d", "b"))
    assert format_markers(ms) == "b:a_{2,3},b:d,d:b"
    assert parse_markers("") == ()
    with pytest.raises(ValueError):
        parse_markers("ab")


def test_splice_trivial_contexts():
    assert splice("24", Marker("a", "b"), "a", "b") == {("b",)}
    assert splice("23", Marker("a", "b"), "a", "b") == {()}
    assert splice("14", Marker("a", "b"), "a", "b") == {("a", "b")}
    assert splice("13", Marker("a", "b"), "a", "b") == {("a",)}


def test_splice_all_factorizations():
    assert words(splice("13", Marker("a", "a"), "aba", "aba")) == {"a", "aba", "ababa"}
    assert splice("13", Marker("a", "b"), "ccc", "bd") == set()


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["13", "14", "23", "24"]), st.text("ab", max_size=6),
       st.text("ab", max_size=6), st.sampled_from("ab"), st.sampled_from("ab"))
def test_splice_lengths(variant, x, y, a, b):
    for z in splice(variant, Marker(a, b), x, y):
        assert len(z) <= len(x) + len(y)
        if variant == "23":
            assert len(z) <= len(x) + len(y) - 2
    assert splice(variant, Marker(a, b), x, y) == oracles.naive_splice(variant, a, b, x, y)


def test_sigma_step_examples():
    s = aba_system()
    start = WordSet.from_words(s.alphabet, ["aba"], 5)
    assert words(sigma_step(s, start).words()) == {"a", "aba", "ababa"}
    assert words(sigma_step(s, start.restrict(3)).words()) == {"a", "aba"}
    empty = aba_system(markers=())
    assert sigma_step(empty, start) == start


def test_closure_examples():
    s = aba_system()
    assert words(closure_bounded(s, 9).words()) == {"a", "aba", "ababa", "abababa", "ababababa"}
    assert words(closure_bounded(aba_system(markers=()), 9).words()) == {"aba"}


def test_closure_matches_construction_on_fig3():
    s = witness_23_regular(4)
    oracle = closure_bounded(s, 8)
    assert oracle == WordSet.from_dfa(construct(s), 8)


def test_closure_monotone_and_fixpoint():
    rng = random.Random(5)
    for _ in range(30):
        s = random_system(rng, rng.choice(list(Variant)), max_n=4, max_k=2)
        base = WordSet.from_dfa(s.initial, 8)
        once = sigma_step(s, base)
        full = closure_bounded(s, 8, 8)
        assert set(base.words()) <= set(once.words()) <= set(full.words())
        assert sigma_step(s, full) == full


@pytest.mark.parametrize("seed", range(6))
def test_vectorized_step_matches_naive(seed):
    rng = random.Random(seed)
    for _ in range(15):
        variant = rng.choice(["13", "14", "23", "24"])
        s = random_system(rng, variant, max_n=4, max_k=3)
        cap = 5
        start = [w for w in enumerate_accepted(s.initial, cap)]
        ws = WordSet.from_words(s.alphabet, start, cap)
        got = set(sigma_step(s, ws).words())
        markers = [(m.a, m.b) for m in s.markers]
        assert got == oracles.naive_sigma(variant, markers, start, cap)
        assert set(closure_bounded(s, cap, cap).words()) == \
            oracles.naive_closure(variant, markers, start, cap)


def test_sparse_mode_agrees_with_dense(monkeypatch):
    import semisplice.splicing as sp
    rng = random.Random(9)
    systems = [random_system(rng, v, max_n=4, max_k=3) for v in Variant for _ in range(5)]
    dense = [closure_bounded(s, 6, 8) for s in systems]
    monkeypatch.setattr(sp, "_DENSE_LIMIT", 0)
    sparse = [closure_bounded(s, 6, 8) for s in systems]
    assert dense == sparse


def test_closure_resource_guard():
    from semisplice.automata import ResourceLimitExceeded
    s = witness_23_regular(4)
    with pytest.raises(ResourceLimitExceeded):
        closure_bounded(s, 8, 12, max_words=100)


def test_closure_rejects_short_intermediate():
    with pytest.raises(ValueError):
        closure_bounded(aba_system(), 6, 4)


def test_wordset_membership_and_order():
    ws = WordSet.from_words("ab", ["b", "a", "ab", ""], 3)
    assert "ab" in ws and "ba" not in ws and "" in ws and "abab" not in ws
    assert ws.words() == [(), ("a",), ("a", "b"), ("b",)]
    with pytest.raises(ValueError):
        WordSet.from_words("ab", ["aaaa"], 3)


def test_validate_reports():
    assert validate(aba_system()).diagnostics == ()
    bad = validate(aba_system(markers=(("x", "a"),)))
    assert not bad.ok and bad.diagnostics[0].code == "unknown-symbol"
    v = validate(witness_23_semi_finite(6))
    assert v.finite_initial and not v.simple
    # b only ever leads to the dead state 1
    inert = SplicingSystem("24", Dfa("ab", [[0, 1], [1, 1]], 0, {0}), [Marker("b", "a")])
    assert [d.code for d in validate(inert).diagnostics] == ["inert-marker"]


def test_marker_errors_block_operations():
    with pytest.raises(AutomatonError):
        closure_bounded(aba_system(markers=(("x", "a"),)), 4)


def test_system_normalizes_markers():
    s = aba_system(markers=(("b", "a"), ("a", "b"), ("a", "b")))
    assert s.markers == (Marker("a", "b"), Marker("b", "a"))
    assert s.m1 == ("a", "b") and not s.is_simple
    assert aba_system().is_simple
