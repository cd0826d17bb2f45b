import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from table_ideals.datasets import (
    FAMILIES,
    VECTOR_LENGTHS,
    balanced_counts,
    flat_frame,
    generate_dataset,
    generate_record,
    graph_to_json,
    ideal_graph,
    ideal_vector,
    random_generalised_table,
    random_partition,
    random_table,
    read_flat_dataset,
)
from table_ideals.monomials import MonomialIdeal
from table_ideals.recognition import recognize
from table_ideals.tables import generators, is_normal_form, is_valid_table
from table_ideals.utils import write_csv_atomic


@settings(deadline=None, max_examples=80)
@given(
    st.integers(min_value=0, max_value=2**32 - 1),
    st.integers(min_value=1, max_value=10),
    st.integers(min_value=1, max_value=40),
)
def test_random_tables_are_valid(seed, n, n_max):
    rng = np.random.default_rng(seed)
    s = int(rng.integers(0, n))
    T = random_table(s, n, n_max, rng)
    assert (T.s, T.n) == (s, n)
    assert is_valid_table(T)
    assert all(T.entries[i][i - 1] >= 1 for i in range(1, s + 1))
    assert all(0 <= T.entries[i][c] <= n_max for i in range(1, s + 1) for c in range(n))


def test_random_table_rejects_bad_shape():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        random_table(3, 3, 10, rng)
    with pytest.raises(ValueError):
        random_table(0, 2, 0, rng)


def test_random_partition_covers_every_variable():
    blocks = random_partition(9, np.random.default_rng(3))
    assert sorted(v for b in blocks for v in b) == list(range(9))


def test_random_generalised_table_in_normal_form():
    G = random_generalised_table(6, np.random.default_rng(11), n_max=12, normal_form=True)
    assert G.n_total == 6
    assert is_normal_form(G)


def test_ideal_vector_is_left_padded_revlex():
    I = MonomialIdeal.of(2, [(2, 0), (0, 1)])
    assert ideal_vector(I, 6).tolist() == [0, 0, 0, 1, 2, 0]
    with pytest.raises(ValueError):
        ideal_vector(I, 3)


def test_ideal_graph_edges_follow_support_inclusion():
    G = ideal_graph(MonomialIdeal.of(2, [(2, 0), (0, 1), (1, 1)]))
    assert graph_to_json(G) == {"nodes": [[2, 0], [0, 1], [1, 1]], "edges": [[0, 2], [1, 2]]}


def test_records_are_reproducible():
    a = generate_record("random_table", 4, 0, seed=7, n_max=10)
    b = generate_record("random_table", 4, 0, seed=7, n_max=10)
    assert a == b
    assert a.label == 1
    assert a.id == "random_table-00000"


@pytest.mark.parametrize("family", ["scrambled_table", "random_artinian"])
def test_negative_families_are_never_tables(family):
    for k in range(5):
        record = generate_record(family, 4, k, seed=5, n_max=10)
        if record is None:
            continue
        assert record.label == 0
        assert not recognize(record.ideal).is_table


def test_labels_come_from_recognition():
    for k in range(5):
        record = generate_record("almost_table", 4, k, seed=2, n_max=10)
        if record is None:
            continue
        assert record.label == int(recognize(record.ideal).is_table)
        assert record.relabelled == (record.label == 1)


def test_dataset_manifest_and_flat_rows():
    result = generate_dataset(4, 3, seed=1, n_max=10)
    assert set(result.manifest["families"]) == set(FAMILIES)
    assert result.manifest["flat_length"] == VECTOR_LENGTHS[4]
    for fam in result.manifest["families"].values():
        assert fam["emitted"] + fam["shortfall"] == 3
    frame = flat_frame(result.records)
    assert frame.shape == (len(result.records), VECTOR_LENGTHS[4] + 1)
    assert set(frame.iloc[:, -1]) <= {0, 1}


def test_dataset_is_independent_of_worker_count():
    one = generate_dataset(3, 4, seed=9, n_max=8, workers=1)
    many = generate_dataset(3, 4, seed=9, n_max=8, workers=4)
    assert [(r.id, r.label, r.ideal) for r in one.records] == [(r.id, r.label, r.ideal) for r in many.records]


def test_family_selection():
    result = generate_dataset(3, 2, seed=4, n_max=8, families=["random_table"])
    assert {r.family for r in result.records} == {"random_table"}
    assert list(result.manifest["families"]) == ["random_table"]
    with pytest.raises(ValueError):
        generate_dataset(3, 2, seed=4, families=["bogus"])
    with pytest.raises(ValueError):
        generate_dataset(1, 2, seed=4)


def test_flat_csv_round_trip(tmp_path):
    result = generate_dataset(3, 2, seed=6, n_max=8)
    path = tmp_path / "flat.csv"
    write_csv_atomic(flat_frame(result.records), str(path), header=False)
    X, y = read_flat_dataset(str(path))
    assert X.shape == (len(result.records), VECTOR_LENGTHS[3])
    assert y.tolist() == [r.label for r in result.records]


def test_graph_records_carry_labels():
    record = generate_record("random_artinian", 5, 1, seed=3, n_max=10)
    assert record is not None
    obj = record.graph_json()
    assert obj["label"] == record.label
    assert len(obj["nodes"]) == len(record.ideal.generators)


def test_vector_lengths():
    assert VECTOR_LENGTHS == {3: 45, 4: 92, 5: 180, 6: 258, 7: 511, 8: 624, 9: 810, 10: 1070}


@settings(deadline=None, max_examples=50)
@given(
    st.lists(st.lists(st.integers(min_value=0, max_value=9), min_size=3, max_size=3), min_size=1, max_size=12),
    st.randoms(use_true_random=False),
)
def test_ideal_vector_ignores_generator_order(gens, random):
    shuffled = list(gens)
    random.shuffle(shuffled)
    a = ideal_vector(MonomialIdeal.of(3, gens), VECTOR_LENGTHS[3])
    b = ideal_vector(MonomialIdeal.of(3, shuffled), VECTOR_LENGTHS[3])
    assert a.tolist() == b.tolist()


def test_ideal_graph_of_a_two_colour_ideal():
    I = MonomialIdeal.of(
        3, [(18, 0, 0), (0, 14, 0), (0, 0, 38), (14, 0, 32), (14, 2, 26), (14, 6, 0)]
    )
    G = ideal_graph(I)
    assert (G.number_of_nodes(), G.number_of_edges()) == (6, 9)


def test_balanced_counts():
    assert balanced_counts(2500) == {
        "random_table": 1250,
        "scrambled_table": 417,
        "almost_table": 417,
        "random_artinian": 416,
    }
    no_almost = [f for f in FAMILIES if f != "almost_table"]
    assert balanced_counts(2500, no_almost) == {"random_table": 1250, "scrambled_table": 625, "random_artinian": 625}
    assert balanced_counts(7, ["random_table"]) == {"random_table": 7}
    with pytest.raises(ValueError):
        balanced_counts(-1)


def test_balanced_dataset_has_the_requested_size():
    families = [f for f in FAMILIES if f != "almost_table"]
    result = generate_dataset(4, balanced_counts(40, families), seed=8, n_max=10, families=families)
    assert len(result.records) == 40
    assert result.manifest["labels"] == {"1": 20, "0": 20}
    with pytest.raises(ValueError):
        generate_dataset(4, {"almost_table": 3}, seed=8, families=families)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_scrambled_tables_end_in_two_pure_powers(n):
    # the last two revlex blocks are x_1^d_1 then x_0^d_0
    length = VECTOR_LENGTHS[n]
    for k in range(10):
        record = generate_record("scrambled_table", n, k, seed=13)
        assert record is not None and record.label == 0
        v = record.flat_features()
        tail = v[length - 2 * n:].tolist()
        assert tail[0] == 0 and tail[1] > 0 and not any(tail[2:n])
        assert tail[n] > 0 and not any(tail[n + 1:])


@pytest.mark.parametrize("n", [3, 6])
def test_tables_with_a_colour_end_in_a_mixed_generator(n):
    rng = np.random.default_rng(21)
    length = VECTOR_LENGTHS[n]
    checked = 0
    while checked < 10:
        T = random_table(int(rng.integers(1, n)), n, 40, rng)
        if T.entries[1][1] == 0 or T.ladder_exponent(1, 0) == 0:
            continue
        v = ideal_vector(generators(T, n), length)
        assert v[length - 2 * n] > 0
        checked += 1
