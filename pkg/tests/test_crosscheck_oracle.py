import sys

import numpy as np

from scripts import crosscheck_oracle
from scripts.crosscheck_oracle import _check, random_artinian
from table_ideals.monomials import is_artinian
from table_ideals.recognition import brute_force_table_ideals


def test_random_ideals_are_proper_and_artinian():
    for k in range(500):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=5, spawn_key=(k,)))
        I = random_artinian(rng, 3, 3)
        assert not I.is_unit()
        assert is_artinian(I)
        assert all(0 <= e <= 3 for g in I.generators for e in g)


def test_every_draw_is_compared():
    oracles = {n: brute_force_table_ideals(n, 2) for n in (1, 2, 3)}
    statuses = [_check(k, 11, 3, 2, oracles)["status"] for k in range(60)]
    assert statuses == ["agreed"] * 60


def test_main_reports_full_count(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["crosscheck_oracle", "--count", "40", "--max_n", "2", "--bound", "2"])
    crosscheck_oracle.main()
    assert "compared=40/40 agreed=40 disagreed=0" in capsys.readouterr().out
