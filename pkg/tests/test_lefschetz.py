import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from table_ideals.datasets import random_proper_table
from table_ideals.lefschetz import (
    PRIME,
    _rank_exact,
    _rank_mod_p,
    check_slp,
    hilbert_is_symmetric,
    matrix_rank,
    max_socle_degree,
    multinomial,
    multiplication_matrix,
)
from table_ideals.monomials import CapExceededError, MonomialIdeal, hilbert_function
from table_ideals.tables import GeneralisedTable, ImproperTableError, Table, generators, singleton


def test_socle_degree_formula(one_three_table, equivalent_tables):
    assert max_socle_degree(one_three_table) == 4
    assert max_socle_degree(equivalent_tables["T_3"]) == 9 + 7 + 5 + 4 - 4
    assert max_socle_degree(equivalent_tables["T_1"]) == 28 - 3 - 4


def test_socle_degree_matches_hilbert(one_three_table, equivalent_tables):
    for T in (one_three_table, equivalent_tables["T_1"], equivalent_tables["T_2"]):
        h = hilbert_function(generators(T))
        assert len(h) - 1 == max_socle_degree(T)
        assert hilbert_is_symmetric(generators(T))


def test_hilbert_symmetry_on_small_ideals():
    assert hilbert_is_symmetric(MonomialIdeal.of(2, [(2, 0), (1, 1), (0, 3)]))
    assert hilbert_function(MonomialIdeal.of(2, [(2, 0), (1, 1), (0, 4)])) == (1, 2, 1, 1)
    assert not hilbert_is_symmetric(MonomialIdeal.of(2, [(2, 0), (1, 1), (0, 4)]))


def test_socle_degree_rejects_improper():
    with pytest.raises(ImproperTableError):
        max_socle_degree(Table((0, 1), ((2, 2), (2, 2))))


def test_multinomial():
    assert multinomial([2, 1]) == 3
    assert multinomial([1, 1, 1]) == 6
    assert multinomial([0, 0]) == 1


def test_ranks_agree():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert _rank_mod_p(rows) == 2
    assert _rank_exact(rows) == 2
    assert matrix_rank(rows) == 2
    assert matrix_rank([[PRIME, 0], [0, 1]]) == 2
    assert matrix_rank([]) == 0


def test_multiplication_matrix_by_linear_form():
    source = [(0, 0)]
    target = [(1, 0), (0, 1)]
    assert multiplication_matrix(source, target) == [[1], [1]]
    assert multiplication_matrix([(1, 0), (0, 1)], [(1, 1)]) == [[1, 1]]


def test_slp_on_one_three_table(one_three_table):
    assert check_slp(one_three_table).passed


def test_slp_on_singleton_and_union():
    assert check_slp(singleton(0, 5)).passed
    G = GeneralisedTable(4, tuple(singleton(t, d) for t, d in enumerate((4, 3, 3, 2))))
    assert check_slp(G) == (True, None)


def test_slp_accepts_ideals():
    I = MonomialIdeal.of(2, [(3, 0), (0, 2)])
    assert check_slp(I).passed


def test_slp_respects_cap(equivalent_tables):
    with pytest.raises(CapExceededError):
        check_slp(equivalent_tables["T_3"], cap=100)


def test_slp_failure_reports_the_map():
    # l: A_2 -> A_3 kills x^2 + y^2 + z^2 - xy - xz - yz
    I = MonomialIdeal.of(3, [(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)])
    assert check_slp(I) == (False, (1, 2))


@settings(deadline=None, max_examples=25)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_tables_have_symmetric_hilbert_function(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    T = random_proper_table(int(rng.integers(0, n)), n, 4, rng)
    h = hilbert_function(generators(T))
    assert h == h[::-1]
    assert len(h) - 1 == max_socle_degree(T)
