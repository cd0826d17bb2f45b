"""Seeded property suites run by ``cli.py verify``.

Each suite draws independent instances from
``SeedSequence(entropy=seed, spawn_key=(suite_index, k))`` and checks one
property per instance. An instance whose quotient is larger than the
standard-monomial cap is skipped and counted; an instance that raises is
printed and counted as a failure, never aborting the suite.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from .config import DEBUG, N_MAX, STANDARD_MONOMIAL_CAP, WORKERS
from .datasets import (
    FAMILIES,
    balanced_counts,
    flat_frame,
    generate_dataset,
    random_generalised_table,
    random_proper_table,
    random_table,
)
from .lefschetz import check_slp, hilbert_is_symmetric, max_socle_degree
from .monomials import CapExceededError, hilbert_function, minimalize
from .recognition import recognize
from .reduction import reduce_to_normal_form
from .simplicial import build_complex, connected_components
from .tables import (
    GeneralisedTable,
    InvalidTableError,
    Table,
    check_table_conditions,
    generalised_generators,
    generalised_to_json,
    generator_exponents,
    generators,
    is_valid_table,
    permute_unconstrained,
    table_to_json,
    validate_table,
)
from .tree import run_iterations

SKIPPED = "skipped"
PASSED = "passed"

# draws allowed per requested instance before a suite gives up
DRAW_FACTOR = 10

SUITES = ("round_trip", "minimal_generators", "components", "hilbert", "slp", "mutant")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    drawn: int = 0
    target: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.checked >= self.target

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "drawn": self.drawn,
            "failures": self.failures[:20],
        }


def instance_rng(seed: int, suite: str, k: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(SUITES.index(suite), k)))


# ---------- Per-instance checks: return PASSED, SKIPPED or a failure dict ----------

def check_round_trip(rng, n_max: int = N_MAX, max_n: int = 10):
    n = int(rng.integers(1, max_n + 1))
    G = random_generalised_table(n, rng, n_max, normal_form=True)
    outcome = recognize(generalised_generators(G))
    if not (outcome.is_table and outcome.table == G):
        return {"table": generalised_to_json(G), "outcome": outcome.to_json()}
    # reordering unconstrained columns must not change the normal form
    shuffled = GeneralisedTable(
        n, tuple(permute_unconstrained(T, [T.s + int(j) for j in rng.permutation(T.n - T.s)]) for T in G.tables)
    )
    R = reduce_to_normal_form(shuffled)
    if R != G:
        return {"table": generalised_to_json(G), "shuffled_normal_form": generalised_to_json(R)}
    return PASSED


def check_minimal_generators(rng, n_max: int = N_MAX, max_n: int = 10):
    """alpha_{i,j} != 0 exactly when m_{i,j} is a minimal generator, on normal-form tables."""
    n = int(rng.integers(2, max_n + 1))
    G = random_generalised_table(n, rng, n_max, normal_form=True)
    minimal = set(minimalize(generalised_generators(G)).generators)
    for T in G.tables:
        for i, c, exps in generator_exponents(T, n):
            if (T.entries[i][c] != 0) != (tuple(exps) in minimal):
                return {"table": table_to_json(T), "row": i, "column": c}
    return PASSED


def check_components(rng, n_max: int = N_MAX, max_n: int = 10):
    n = int(rng.integers(1, max_n + 1))
    G = random_generalised_table(n, rng, n_max, normal_form=True)
    got = len(connected_components(build_complex(generalised_generators(G))))
    if got == G.component_count():
        return PASSED
    return {"table": generalised_to_json(G), "components": got, "expected": G.component_count()}


def check_hilbert(rng, cap: int = STANDARD_MONOMIAL_CAP, n_max: int = 6, max_n: int = 5):
    n = int(rng.integers(1, max_n + 1))
    T = random_proper_table(int(rng.integers(0, n)), n, n_max, rng)
    I = generators(T)
    try:
        h = hilbert_function(I, cap)
    except CapExceededError:
        return SKIPPED
    symmetric = hilbert_is_symmetric(I, cap)
    socle = max_socle_degree(T)
    if symmetric and len(h) - 1 == socle:
        return PASSED
    return {"table": table_to_json(T), "hilbert": list(h), "socle_degree": socle}


def check_slp_instance(rng, cap: int = STANDARD_MONOMIAL_CAP, max_n: int = 5, max_degree: int = 8):
    n = int(rng.integers(1, max_n + 1))
    while True:
        T = random_proper_table(int(rng.integers(0, n)), n, 3, rng)
        if max(T.d) <= max_degree:
            break
    try:
        result = check_slp(T, cap)
    except CapExceededError:
        return SKIPPED
    if result.passed:
        return PASSED
    # finding: the sum of the variables is not a Lefschetz element here
    return {"table": table_to_json(T), "failing_map": list(result.failure)}


def check_mutant(rng, n_max: int = N_MAX, max_n: int = 10):
    """Break condition (iii) on a valid table; validation must notice."""
    n = int(rng.integers(2, max_n + 1))
    T = random_table(int(rng.integers(1, n)), n, n_max, rng)
    rows = [list(r) for r in T.entries]
    k = int(rng.integers(1, T.s + 1))
    rows[0][k - 1] += 1
    mutant = Table(T.labels, tuple(tuple(r) for r in rows))
    if is_valid_table(mutant):
        return {"table": table_to_json(mutant), "missing": "is_valid_table accepted the mutant"}
    if not any(v["condition"] == "iii" and v["row"] == k for v in check_table_conditions(mutant)):
        return {"table": table_to_json(mutant), "missing": f"condition (iii) at colour {k}"}
    try:
        validate_table(mutant.entries, mutant.labels)
    except InvalidTableError:
        return PASSED
    return {"table": table_to_json(mutant), "missing": "validate_table accepted the mutant"}


CHECKS: Dict[str, Callable] = {
    "round_trip": check_round_trip,
    "minimal_generators": check_minimal_generators,
    "components": check_components,
    "hilbert": check_hilbert,
    "slp": check_slp_instance,
    "mutant": check_mutant,
}


def run_suite(name: str, count: int, seed: int, workers: int = WORKERS, **kwargs) -> SuiteResult:
    """Check ``count`` instances, drawing past skipped ones up to ``DRAW_FACTOR * count`` draws."""
    check = CHECKS[name]
    result = SuiteResult(name, target=count)
    started = time.time()

    def one(k: int):
        try:
            return k, check(instance_rng(seed, name, k), **kwargs)
        except Exception as e:
            print(f"{name} instance {k} raised: {e}")
            return k, {"error": str(e)}

    limit = DRAW_FACTOR * count
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        while result.checked < count and result.drawn < limit:
            batch = range(result.drawn, min(limit, result.drawn + count - result.checked))
            for k, outcome in sorted(executor.map(one, batch), key=lambda item: item[0]):
                result.drawn += 1
                if outcome == SKIPPED:
                    result.skipped += 1
                    continue
                result.checked += 1
                if outcome == PASSED:
                    result.passed += 1
                else:
                    result.failed += 1
                    result.failures.append({"instance": k, **outcome})
                    if DEBUG:
                        print(f"[DEBUG] {name} instance {k} failed: {outcome}")
    if result.checked < count:
        print(f"{name}: only {result.checked}/{count} instances under the cap after {result.drawn} draws")
    print(
        f"  {name}: checked={result.checked} passed={result.passed} failed={result.failed} "
        f"skipped={result.skipped} ({time.time() - started:.2f}s)"
    )
    return result


def run_verification(
    counts: Dict[str, int], seed: int, workers: int = WORKERS, cap: Optional[int] = None, n_max: int = N_MAX
) -> List[SuiteResult]:
    """Run every suite named in ``counts`` (zero counts are skipped) in ``SUITES`` order."""
    cap = STANDARD_MONOMIAL_CAP if cap is None else cap
    results = []
    for name in SUITES:
        count = counts.get(name, 0)
        if count <= 0:
            continue
        kwargs = {"cap": cap} if name in ("hilbert", "slp") else {"n_max": n_max}
        results.append(run_suite(name, count, seed, workers, **kwargs))
    return results


# ---------- Decision-tree reproduction ----------

TREE_MIN_ACCURACY = 0.95
TREE_NODE_RANGE = (10, 200)
ALMOST_MIN_DROP = 0.15


@dataclass
class TreeCheck:
    n: int
    records: int
    accuracy: float
    nodes: float
    accuracy_with_almost: float

    @property
    def drop(self) -> float:
        return self.accuracy - self.accuracy_with_almost

    @property
    def ok(self) -> bool:
        lo, hi = TREE_NODE_RANGE
        return self.accuracy >= TREE_MIN_ACCURACY and lo <= self.nodes <= hi and self.drop >= ALMOST_MIN_DROP

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "records": self.records,
            "test_accuracy": round(self.accuracy, 4),
            "number_of_nodes": round(self.nodes, 4),
            "test_accuracy_with_almost": round(self.accuracy_with_almost, 4),
            "drop": round(self.drop, 4),
            "ok": self.ok,
        }


def _tree_run(n, families, seed, records, iterations, workers, n_max):
    result = generate_dataset(n, balanced_counts(records, families), seed, n_max, families, workers=workers)
    frame = flat_frame(result.records)
    X = frame.iloc[:, :-1].to_numpy(dtype=np.int64)
    y = frame.iloc[:, -1].to_numpy(dtype=np.int64)
    _, runs = run_iterations(X, y, iterations, seed, workers=workers)
    return len(y), float(runs["test accuracy"].mean()), float(runs["number of nodes"].mean())


def check_tree(
    n: int, seed: int, records: int = 2500, iterations: int = 100, workers: int = WORKERS, n_max: int = N_MAX
) -> TreeCheck:
    """Held-out accuracy without almost tables, and how far it falls once they are mixed in."""
    without = [f for f in FAMILIES if f != "almost_table"]
    emitted, accuracy, nodes = _tree_run(n, without, seed, records, iterations, workers, n_max)
    _, with_almost, _ = _tree_run(n, FAMILIES, seed, records, iterations, workers, n_max)
    check = TreeCheck(n, emitted, accuracy, nodes, with_almost)
    print(
        f"  tree n={n}: accuracy={accuracy:.4f} nodes={nodes:.1f} "
        f"with almost={with_almost:.4f} drop={check.drop:.4f} {'ok' if check.ok else 'FAILED'}"
    )
    return check
