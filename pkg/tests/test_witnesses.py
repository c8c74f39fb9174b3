import pytest

from semisplice.automata import (accepts, enumerate_accepted, minimize,
                                 useful_states)
from semisplice.constructions import construct
from semisplice.formats import dumps_json, bundle_to_json
from semisplice.witnesses import (FamilyId, subset_symbol, witness, witness_14_regular,
                                  witness_14_semi_finite, witness_23_regular,
                                  witness_23_semi_finite, witness_23_simple_finite,
                                  witness_24_finite)

RANGES = {
    FamilyId.W24_FINITE: range(5, 8),
    FamilyId.W23_REGULAR: range(3, 8),
    FamilyId.W23_SEMI_FINITE: range(5, 9),
    FamilyId.W23_SIMPLE_FINITE: range(7, 10),
    FamilyId.W14_REGULAR: range(3, 7),
    FamilyId.W14_SEMI_FINITE: range(5, 8),
}


@pytest.mark.parametrize("family", list(FamilyId))
def test_state_complexity_is_n(family):
    for n in RANGES[family]:
        s = witness(family, n)
        assert s.initial.n == n
        assert minimize(s.initial).n == n
        assert s.variant is family.variant


@pytest.mark.parametrize("family", list(FamilyId))
def test_finite_vs_regular(family):
    for n in RANGES[family]:
        assert witness(family, n).finite_initial == family.finite


@pytest.mark.parametrize("family", list(FamilyId))
def test_too_small_n(family):
    with pytest.raises(ValueError):
        witness(family, family.min_n - 1)


@pytest.mark.parametrize("family", list(FamilyId))
def test_deterministic_output(family):
    n = family.min_n + 1
    a = dumps_json(bundle_to_json(witness(family, n)))
    b = dumps_json(bundle_to_json(witness(family, n)))
    assert a == b


def test_24_finite_shape():
    s = witness_24_finite(5)
    assert len(s.alphabet) == 2 ** 2 + 1
    assert s.alphabet[0] == "b"
    assert set(s.alphabet[1:]) == {"a_{}", "a_{2}", "a_{3}", "a_{2,3}"}
    assert len(s.markers) == 4 and all(m.a == "b" for m in s.markers)
    assert construct(s).n == 9
    d = s.initial
    assert d.step(1, "a_{2,3}") == 2 and d.step(2, "a_{2,3}") == 3 and d.step(3, "a_{2,3}") == 4
    assert d.step(1, "a_{}") == 4  # empty minimum goes to the sink
    for n in (6, 7):
        assert len(witness_24_finite(n).alphabet) == 2 ** (n - 3) + 1


def test_23_regular_shape():
    s = witness_23_regular(6)
    assert s.is_simple
    assert useful_states(s.initial) == set(range(6))
    assert s.initial.step(0, "b") == 0 and s.initial.step(1, "b") == 0
    assert s.initial.step(4, "b") == 4 and s.initial.step(3, "c") == 0
    assert construct(s).n == 32


def test_23_semi_finite_shape():
    s = witness_23_semi_finite(6)
    assert not s.is_simple
    longest = max(len(w) for w in enumerate_accepted(s.initial, 10))
    assert longest == 6 - 2
    assert accepts(s.initial, "caaa")
    assert construct(s).n == 10


def test_23_simple_finite_shape():
    s = witness_23_simple_finite(8)
    assert len(s.alphabet) == 7 and s.is_simple
    d = s.initial
    assert d.step(2, "b") == 3 and d.step(3, "b") == 7
    assert d.step(3, "e") == 7 and d.step(3, "f") == 4 and d.step(3, "g") == 7
    assert d.step(2, "c") == 3 and d.step(3, "c") == 7


def test_14_regular_shape():
    s = witness_14_regular(4)
    assert s.initial.finals == {0}
    assert len(s.m1) == 1 and construct(s).n == 29
    s2 = witness_14_regular(4, extra_loops=2)
    assert s2.m1 == ("c", "c_1", "c_2")
    assert all(m.a == m.b for m in s2.markers)
    with pytest.raises(ValueError):
        witness_14_regular(4, -1)


def test_14_semi_finite_shape():
    s = witness_14_semi_finite(5)
    assert len(s.alphabet) == 3 + 2 ** 3
    assert s.m1 == ("b", "d")
    s2 = witness_14_semi_finite(5, extra_pairs=1)
    assert set(s2.m1) == {"b", "d", "s_1", "t_1"}
    assert s2.initial.step(0, "s_1") == 1


def test_family_parse():
    assert FamilyId.parse("23-regular") is FamilyId.W23_REGULAR
    assert FamilyId.parse("W14_SEMI_FINITE") is FamilyId.W14_SEMI_FINITE
    with pytest.raises(ValueError):
        FamilyId.parse("nope")
    with pytest.raises(ValueError):
        witness("23-regular", 5, extra=1)


def test_subset_symbol_names():
    assert subset_symbol(()) == "a_{}"
    assert subset_symbol((2, 5)) == "a_{2,5}"
    assert witness_23_simple_finite(7).initial.n == 7
    assert witness_14_regular(3).initial.n == 3
    assert witness_23_regular(3).initial.n == 3
    assert witness_23_semi_finite(5).initial.n == 5
