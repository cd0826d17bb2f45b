import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from table_ideals.monomials import (
    CapExceededError,
    MonomialIdeal,
    colon_by_monomial,
    divides,
    equal_ideals,
    hilbert_function,
    ideal_from_json,
    ideal_to_json,
    is_artinian,
    minimalize,
    permute_variables,
    pure_power_exponents,
    restrict_to_variables,
    sort_revlex,
    standard_monomials,
    support,
)

T1_GENERATORS = [
    (12, 0, 0, 0),
    (0, 7, 0, 0),
    (0, 0, 5, 0),
    (0, 0, 0, 4),
    (9, 3, 0, 0),
    (9, 0, 2, 0),
    (9, 0, 0, 2),
    (9, 0, 0, 0),
]


def test_support_of_mixed_generator():
    assert support((1, 0, 1)) == {0, 2}
    assert support((0, 0, 0)) == frozenset()


def test_divides_compares_exponents():
    assert not divides((9, 3, 0, 0), (0, 7, 0, 0))
    assert divides((9, 0, 0, 0), (9, 3, 0, 0))
    with pytest.raises(ValueError):
        divides((1, 2), (1, 2, 3))


def test_minimalize_drops_divisible_generators():
    I = MonomialIdeal.of(4, T1_GENERATORS)
    assert set(minimalize(I).generators) == {(9, 0, 0, 0), (0, 7, 0, 0), (0, 0, 5, 0), (0, 0, 0, 4)}


def test_minimalize_keeps_minimal_set_unchanged():
    gens = [(4, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 0), (1, 0, 1)]
    assert minimalize(MonomialIdeal.of(3, gens)).generators == tuple(gens)


def test_duplicates_and_unit_collapse():
    I = MonomialIdeal.of(2, [(1, 0), (1, 0), (0, 2)])
    assert len(I) == 2
    J = MonomialIdeal.of(2, [(1, 0), (0, 0)])
    assert J.is_unit()
    assert J.generators == ((0, 0),)


def test_negative_exponent_and_wrong_length_rejected():
    with pytest.raises(ValueError):
        MonomialIdeal.of(2, [(1, -1)])
    with pytest.raises(ValueError):
        MonomialIdeal.of(2, [(1, 0, 0)])


def test_colon_by_pure_power():
    K = MonomialIdeal.of(3, [(9, 0, 0), (0, 5, 0), (0, 0, 7), (6, 2, 0), (4, 2, 1)])
    expected = MonomialIdeal.of(3, [(6, 0, 0), (0, 3, 0), (0, 0, 7), (4, 0, 1)])
    assert equal_ideals(colon_by_monomial(K, (0, 2, 0)), expected)


def test_colon_by_first_variable_of_five():
    K = MonomialIdeal.of(
        5, [(2, 0, 0, 0, 0), (0, 4, 0, 0, 0), (0, 0, 7, 0, 0), (0, 0, 0, 8, 0), (0, 0, 0, 0, 10), (1, 2, 3, 1, 2)]
    )
    expected = MonomialIdeal.of(
        5, [(1, 0, 0, 0, 0), (0, 4, 0, 0, 0), (0, 0, 7, 0, 0), (0, 0, 0, 8, 0), (0, 0, 0, 0, 10), (0, 2, 3, 1, 2)]
    )
    assert equal_ideals(colon_by_monomial(K, (1, 0, 0, 0, 0)), expected)


def test_artinian_needs_every_pure_power():
    assert is_artinian(MonomialIdeal.of(3, [(4, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 0), (1, 0, 1)]))
    assert not is_artinian(MonomialIdeal.of(2, [(2, 0), (1, 1)]))
    assert pure_power_exponents(MonomialIdeal.of(2, [(3, 0), (2, 0), (0, 1)])) == {0: 2, 1: 1}


def test_equal_ideals_ignores_redundant_generators():
    T1 = MonomialIdeal.of(4, T1_GENERATORS)
    T3 = MonomialIdeal.of(4, [(9, 0, 0, 0), (0, 7, 0, 0), (0, 0, 5, 0), (0, 0, 0, 4)])
    assert equal_ideals(T1, T3)
    with pytest.raises(ValueError):
        equal_ideals(T1, MonomialIdeal.of(3, [(1, 0, 0)]))


def test_hilbert_function_of_one_three_table_ideal():
    I = MonomialIdeal.of(3, [(4, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 0), (1, 0, 1)])
    assert hilbert_function(I) == (1, 3, 4, 3, 1)
    assert len(standard_monomials(I)) == 12


def test_hilbert_function_of_complete_intersection():
    I = MonomialIdeal.of(2, [(2, 0), (0, 3)])
    assert hilbert_function(I) == (1, 2, 2, 1)


def test_cap_exceeded_reports_estimate():
    I = MonomialIdeal.of(3, [(10, 0, 0), (0, 10, 0), (0, 0, 10)])
    with pytest.raises(CapExceededError) as info:
        standard_monomials(I, cap=50)
    assert info.value.cap == 50
    assert info.value.estimate == 1000


def test_non_artinian_has_no_finite_basis():
    with pytest.raises(ValueError):
        standard_monomials(MonomialIdeal.of(2, [(2, 0)]))


def test_revlex_order_compares_from_last_variable():
    assert sort_revlex([(3, 0, 0), (0, 0, 1), (0, 2, 0), (1, 1, 0)]) == [(0, 0, 1), (0, 2, 0), (1, 1, 0), (3, 0, 0)]


def test_restrict_and_permute():
    I = MonomialIdeal.of(3, [(2, 0, 0), (1, 1, 0), (0, 0, 5), (0, 3, 0)])
    sub = restrict_to_variables(I, [0, 1])
    assert set(sub.generators) == {(2, 0), (1, 1), (0, 3)}
    P = permute_variables(I, [2, 0, 1])
    assert (0, 0, 2) in P.generators
    assert (1, 0, 1) in P.generators
    with pytest.raises(ValueError):
        permute_variables(I, [0, 0, 1])


def test_ideal_json_is_revlex_sorted():
    I = MonomialIdeal.of(2, [(2, 0), (0, 3), (1, 1)])
    assert ideal_to_json(I) == {"n": 2, "generators": [[0, 3], [1, 1], [2, 0]]}
    assert ideal_from_json(ideal_to_json(I)).generators == ((0, 3), (1, 1), (2, 0))


@pytest.mark.parametrize(
    "bad",
    [[], {"n": 2}, {"n": "2", "generators": []}, {"n": 2, "generators": [[1, 0.5]]}, {"n": 2, "generators": [[1, 0, 0]]}],
)
def test_ideal_from_json_rejects_malformed(bad):
    with pytest.raises(ValueError):
        ideal_from_json(bad)


@settings(deadline=None, max_examples=60)
@given(
    st.lists(st.lists(st.integers(min_value=0, max_value=4), min_size=3, max_size=3), min_size=1, max_size=8)
)
def test_minimalize_is_idempotent_and_equal(gens):
    I = MonomialIdeal.of(3, gens)
    m = minimalize(I)
    assert minimalize(m) == m
    assert equal_ideals(I, m)
    for a in m.generators:
        assert not any(a != b and divides(b, a) for b in m.generators)


_monomials3 = st.lists(st.integers(min_value=0, max_value=4), min_size=3, max_size=3).map(tuple)


@settings(deadline=None, max_examples=80)
@given(st.lists(_monomials3, min_size=1, max_size=6), _monomials3, _monomials3)
def test_colon_by_a_product_is_two_colons(gens, a, b):
    I = MonomialIdeal.of(3, gens)
    ab = tuple(x + y for x, y in zip(a, b))
    assert equal_ideals(colon_by_monomial(colon_by_monomial(I, a), b), colon_by_monomial(I, ab))


@settings(deadline=None, max_examples=60)
@given(st.lists(_monomials3, min_size=1, max_size=6), _monomials3, st.permutations(list(range(6))))
def test_equal_ideals_is_an_equivalence(gens, factor, order):
    I = MonomialIdeal.of(3, gens)
    multiples = [tuple(x + y for x, y in zip(g, factor)) for g in gens]
    J = MonomialIdeal.of(3, list(gens) + multiples)
    K = MonomialIdeal.of(3, [gens[k] for k in order if k < len(gens)])
    assert equal_ideals(I, I)
    assert equal_ideals(I, J) and equal_ideals(J, I)
    assert equal_ideals(J, K) and equal_ideals(I, K)
    L = MonomialIdeal.of(3, list(gens) + [factor])
    assert equal_ideals(I, L) == equal_ideals(L, I)
