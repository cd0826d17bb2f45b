"""Random tables, labelled ideal datasets and their encodings.

Four record families are generated, each record from its own PCG64
stream ``SeedSequence(entropy=seed, spawn_key=(family_index, k))``:

* ``random_table``     generators of a random proper table (non-minimal)
* ``scrambled_table``  the mixed generators of a valid table moved onto
                       permuted variables, pure powers left in place
* ``almost_table``     a valid table with one alpha moved by +-1
* ``random_artinian``  pure powers plus random mixed monomials below them

Every label comes from :func:`~table_ideals.recognition.recognize`.
``scrambled_table`` and ``random_artinian`` draws that turn out to be
table ideals are resampled; ``almost_table`` keeps them (label 1) and
counts them as relabelled.

A balanced dataset gives half its records to ``random_table`` and
splits the rest evenly over the selected negative families.
"""

import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd

from .config import DEBUG, N_MAX, RETRY_BUDGET, SCRIPT_VERSION, WORKERS
from .monomials import Monomial, MonomialIdeal, minimalize, sort_revlex, support
from .recognition import recognize
from .reduction import reduce_to_normal_form
from .tables import GeneralisedTable, Table, generator_exponents, generators, is_proper

# Flat ideal-vector length (without the label) per variable count
VECTOR_LENGTHS: Dict[int, int] = {3: 45, 4: 92, 5: 180, 6: 258, 7: 511, 8: 624, 9: 810, 10: 1070}

FAMILIES = ("random_table", "scrambled_table", "almost_table", "random_artinian")


def record_rng(seed: int, family_index: int, k: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(family_index, k)))


def _uniform(rng: np.random.Generator, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


# ---------- Random tables ----------

def random_table(
    s: int, n: int, n_max: int, rng: np.random.Generator, labels: Optional[Sequence[int]] = None
) -> Table:
    """A valid ``(s, n)``-table with free entries in ``[0, n_max]``.

    Rows are drawn bottom-up so the diagonal ``alpha_{k,k}`` can be kept
    within the bound that condition (ii) puts on column ``k``; the
    constrained ``d_k`` then follow from condition (iii). Diagonals are
    at least 1. The result may still be improper.
    """
    if not 0 <= s < n:
        raise ValueError(f"need 0 <= s < n, got s={s}, n={n}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    labels = tuple(range(n)) if labels is None else tuple(labels)
    rows = [[0] * n for _ in range(s + 1)]

    for k in range(s, 0, -1):
        while True:
            for c in range(k, n):
                rows[k][c] = _uniform(rng, 0, n_max)
            bound = sum(rows[k][k:]) + (rows[k + 1][k] if k < s else 0)
            if bound > 0:
                break
        rows[k][k - 1] = _uniform(rng, 1, min(n_max, bound))

    for k in range(1, s + 1):
        c = k - 1
        rows[0][c] = (
            sum(rows[i][c] for i in range(1, k))
            + sum(rows[k][j] for j in range(k, n))
            + (rows[k + 1][k] if k < s else 0)
        )
    for c in range(s, n):
        col = sum(rows[i][c] for i in range(1, s + 1))
        rows[0][c] = col + _uniform(rng, 0 if col > 0 else 1, n_max)

    return Table(labels, tuple(tuple(r) for r in rows))


def random_proper_table(s: int, n: int, n_max: int, rng: np.random.Generator, labels=None) -> Table:
    while True:
        T = random_table(s, n, n_max, rng, labels)
        if is_proper(T):
            return T


def random_partition(n: int, rng: np.random.Generator) -> List[List[int]]:
    """Random set partition of ``range(n)``; each block in random order."""
    order = [int(v) for v in rng.permutation(n)]
    blocks = [[order[0]]] if n else []
    for v in order[1:]:
        if rng.random() < 0.5:
            blocks.append([v])
        else:
            blocks[-1].append(v)
    return blocks


def random_generalised_table(
    n: int, rng: np.random.Generator, n_max: int = N_MAX, normal_form: bool = False
) -> GeneralisedTable:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    members = []
    for block in random_partition(n, rng):
        s = _uniform(rng, 0, len(block) - 1)
        members.append(random_proper_table(s, len(block), n_max, rng, labels=block))
    G = GeneralisedTable(n, tuple(members))
    if normal_form:
        G = reduce_to_normal_form(G)
    return G


def _free_positions(T: Table) -> List[Tuple[int, int]]:
    return [(i, c) for i in range(1, T.s + 1) for c in range(i - 1, T.n)]


# ---------- Encodings ----------

def ideal_vector(I: MonomialIdeal, length: int) -> np.ndarray:
    """Revlex-sorted, concatenated exponent vectors, left-padded with zeros to ``length``."""
    flat = [e for g in sort_revlex(I.generators) for e in g]
    if len(flat) > length:
        raise ValueError(
            f"ideal with {len(I.generators)} generators in {I.n} variables needs length {len(flat)} > {length}"
        )
    return np.array([0] * (length - len(flat)) + flat, dtype=np.int64)


def ideal_graph(I: MonomialIdeal) -> nx.DiGraph:
    """One node per listed generator; edge ``i -> j`` when supp(m_i) is inside supp(m_j)."""
    G = nx.DiGraph()
    gens = list(I.generators)
    supports = [support(g) for g in gens]
    for k, g in enumerate(gens):
        G.add_node(k, exponents=list(g))
    for i, a in enumerate(supports):
        for j, b in enumerate(supports):
            if i != j and a <= b:
                G.add_edge(i, j)
    return G


def graph_to_json(G: nx.DiGraph) -> dict:
    return {
        "nodes": [G.nodes[k]["exponents"] for k in sorted(G.nodes)],
        "edges": sorted([int(a), int(b)] for a, b in G.edges),
    }


# ---------- Records ----------

@dataclass(frozen=True)
class DatasetRecord:
    id: str
    family: str
    n: int
    label: int
    ideal: MonomialIdeal
    attempts: int = 1
    relabelled: bool = False

    def flat_features(self, length: Optional[int] = None) -> np.ndarray:
        if length is None:
            if self.n not in VECTOR_LENGTHS:
                raise ValueError(f"no flat vector length defined for n={self.n} (supported: 3..10)")
            length = VECTOR_LENGTHS[self.n]
        return ideal_vector(self.ideal, length)

    def graph_json(self) -> dict:
        out = graph_to_json(ideal_graph(self.ideal))
        out.update({"label": self.label, "family": self.family, "id": self.id})
        return out


def _label(I: MonomialIdeal) -> int:
    return 1 if recognize(minimalize(I)).is_table else 0


def _from_matrix(T: Table, n: int) -> Optional[MonomialIdeal]:
    gens = []
    for _, _, exps in generator_exponents(T, n):
        if any(e < 0 for e in exps):
            return None
        gens.append(tuple(exps))
    I = MonomialIdeal(n, tuple(gens))
    return None if I.is_unit() else I


def _draw_random_table(n, n_max, rng) -> Optional[MonomialIdeal]:
    T = random_table(_uniform(rng, 0, n - 1), n, n_max, rng)
    return generators(T, n) if is_proper(T) else None


def _shifting_permutation(n: int, rng: np.random.Generator) -> List[int]:
    """A random permutation of ``range(n)`` sending 0 outside ``{0, 1}`` (for n >= 3)."""
    if n < 3:
        return list(range(n))[::-1]
    perm = [int(v) for v in rng.permutation(n)]
    j = perm.index(_uniform(rng, 2, n - 1))
    perm[0], perm[j] = perm[j], perm[0]
    return perm


def _draw_scrambled_table(n, n_max, rng) -> Optional[MonomialIdeal]:
    """Mixed generators of a valid table moved onto permuted variables.

    The pure powers stay where they are. Every moved generator keeps a
    positive exponent on the image of the first constrained variable,
    and that image is never x_0 or x_1.
    """
    T = random_table(_uniform(rng, 1, n - 1), n, n_max, rng)
    if T.ladder_exponent(1, 0) <= 0:
        return None
    perm = _shifting_permutation(n, rng)
    gens: List[Monomial] = []
    for i, _, exps in generator_exponents(T, n):
        if i == 0:
            gens.append(tuple(exps))
            continue
        moved = [0] * n
        for t, e in enumerate(exps):
            moved[perm[t]] = e
        gens.append(tuple(moved))
    return MonomialIdeal(n, tuple(gens))


def _draw_almost_table(n, n_max, rng) -> Optional[MonomialIdeal]:
    T = random_table(_uniform(rng, 1, n - 1), n, n_max, rng)
    free = _free_positions(T)
    i, c = free[_uniform(rng, 0, len(free) - 1)]
    rows = [list(r) for r in T.entries]
    rows[i][c] += 1 if rows[i][c] == 0 or rng.random() < 0.5 else -1
    return _from_matrix(Table(T.labels, tuple(tuple(r) for r in rows)), n)


def _draw_random_artinian(n, n_max, rng) -> Optional[MonomialIdeal]:
    d = [_uniform(rng, 1, n_max) for _ in range(n)]
    gens: List[Monomial] = []
    for t in range(n):
        pure = [0] * n
        pure[t] = d[t]
        gens.append(tuple(pure))
    extra_cap = VECTOR_LENGTHS.get(n, n * (n + 1)) // n - n
    k = _uniform(rng, 1, max(1, min(n * (n - 1) // 2, extra_cap)))
    for _ in range(k):
        m = tuple(_uniform(rng, 0, d[t] - 1) for t in range(n))
        if len(support(m)) >= 2:
            gens.append(m)
    if len(gens) == n:
        return None
    return MonomialIdeal(n, tuple(gens))


_DRAWS = {
    "random_table": _draw_random_table,
    "scrambled_table": _draw_scrambled_table,
    "almost_table": _draw_almost_table,
    "random_artinian": _draw_random_artinian,
}

# families whose table-ideal draws are resampled rather than relabelled
_NEGATIVE_ONLY = {"scrambled_table", "random_artinian"}


def generate_record(
    family: str, n: int, k: int, seed: int, n_max: int = N_MAX, retry_budget: int = RETRY_BUDGET
) -> Optional[DatasetRecord]:
    """One record of ``family``; ``None`` when the retry budget runs out."""
    family_index = FAMILIES.index(family)
    rng = record_rng(seed, family_index, k)
    draw = _DRAWS[family]
    for attempt in range(1, retry_budget + 1):
        I = draw(n, n_max, rng)
        if I is None:
            continue
        label = _label(I)
        if label == 1 and family in _NEGATIVE_ONLY:
            continue
        return DatasetRecord(
            id=f"{family}-{k:05d}",
            family=family,
            n=n,
            label=label,
            ideal=I,
            attempts=attempt,
            relabelled=(label == 1 and family == "almost_table"),
        )
    return None


@dataclass
class DatasetResult:
    records: List[DatasetRecord]
    manifest: dict = field(default_factory=dict)


def balanced_counts(total: int, families: Sequence[str] = FAMILIES) -> Dict[str, int]:
    """Split ``total`` records: half to ``random_table``, the rest evenly over the negatives."""
    if total < 0:
        raise ValueError(f"total must be >= 0, got {total}")
    chosen = [f for f in FAMILIES if f in families]
    negatives = [f for f in chosen if f != "random_table"]
    counts = {f: 0 for f in chosen}
    if not negatives:
        counts.update({f: total for f in chosen})
        return counts
    rest = total
    if "random_table" in counts:
        counts["random_table"] = total - total // 2
        rest = total // 2
    base, extra = divmod(rest, len(negatives))
    for j, f in enumerate(negatives):
        counts[f] = base + (1 if j < extra else 0)
    return counts


def generate_dataset(
    n: int,
    count: Union[int, Mapping[str, int]],
    seed: int,
    n_max: int = N_MAX,
    families: Sequence[str] = FAMILIES,
    retry_budget: int = RETRY_BUDGET,
    workers: int = WORKERS,
) -> DatasetResult:
    """Records in deterministic (family, k) order.

    ``count`` is either a per-family count or an explicit mapping such as
    the one :func:`balanced_counts` returns.
    """
    if n < 2:
        raise ValueError(f"datasets need n >= 2, got {n}")
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown families {unknown}; choose from {list(FAMILIES)}")
    if isinstance(count, Mapping):
        unknown = [f for f in count if f not in families]
        if unknown:
            raise ValueError(f"counts given for unselected families {unknown}")
        counts = {f: int(count.get(f, 0)) for f in FAMILIES if f in families}
    else:
        counts = {f: int(count) for f in FAMILIES if f in families}
    if any(c < 0 for c in counts.values()):
        raise ValueError(f"counts must be >= 0, got {counts}")

    started = time.time()
    tasks = [(f, k) for f, c in counts.items() for k in range(c)]
    results: Dict[Tuple[str, int], Optional[DatasetRecord]] = {}
    failures = 0

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        futures = {
            executor.submit(generate_record, f, n, k, seed, n_max, retry_budget): (f, k) for f, k in tasks
        }
        for future in as_completed(futures):
            key = futures[future]
            try:
                results[key] = future.result()
            except Exception as e:
                print(f"Record {key[0]}-{key[1]:05d} failed: {e}")
                results[key] = None
                failures += 1

    records = [results[key] for key in tasks if results[key] is not None]
    per_family = {}
    for f, requested in counts.items():
        got = [r for r in records if r.family == f]
        per_family[f] = {
            "requested": requested,
            "emitted": len(got),
            "shortfall": requested - len(got),
            "positives": sum(r.label for r in got),
            "negatives": sum(1 - r.label for r in got),
            "relabelled": sum(r.relabelled for r in got),
            "attempts": sum(r.attempts for r in got),
        }
        if DEBUG:
            print(f"[DEBUG] {f}: {per_family[f]}")
    print(f"Generated {len(records)} records for n={n} in {time.time() - started:.2f}s")

    manifest = {
        "script_version": SCRIPT_VERSION,
        "n": n,
        "n_max": n_max,
        "seed": seed,
        "retry_budget": retry_budget,
        "families": per_family,
        "labels": {
            "1": sum(r.label for r in records),
            "0": sum(1 - r.label for r in records),
        },
        "flat_length": VECTOR_LENGTHS.get(n),
        "failed_records": failures,
    }
    return DatasetResult(records, manifest)


def flat_frame(records: Sequence[DatasetRecord], length: Optional[int] = None) -> pd.DataFrame:
    """Feature columns then the label; written without a header."""
    return pd.DataFrame([r.flat_features(length).tolist() + [r.label] for r in records])


def read_flat_dataset(path: str) -> Tuple[np.ndarray, np.ndarray]:
    df = pd.read_csv(path, header=None)
    if df.shape[1] < 2:
        raise ValueError(f"{path}: expected feature columns followed by a label column")
    X = df.iloc[:, :-1].to_numpy(dtype=np.int64)
    y = df.iloc[:, -1].to_numpy(dtype=np.int64)
    return X, y
