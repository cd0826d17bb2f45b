"""CART decision tree (Gini impurity, unconstrained growth) and the iteration runner.

Split search sorts every feature column of a node at once and scores all
midpoints between consecutive distinct values in one numpy pass. The best
split has the largest impurity decrease; ties go to the lowest feature
index, then the lowest threshold. A node becomes a leaf when it is pure
or when no split lowers the impurity.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import pandas as pd

from .config import DEBUG, TEST_FRACTION, WORKERS

EPS = 1e-12


@dataclass
class Node:
    counts: Tuple[int, int]
    feature: Optional[int] = None
    threshold: Optional[float] = None
    left: Optional["Node"] = None
    right: Optional["Node"] = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    @property
    def label(self) -> int:
        # ties go to 0
        return 1 if self.counts[1] > self.counts[0] else 0


@dataclass
class DecisionTree:
    root: Node
    n_features: int


class TreeStats(NamedTuple):
    node_count: int
    depth: int
    leaf_count: int


class Evaluation(NamedTuple):
    accuracy: float
    total_errors: int


def gini(counts) -> float:
    n = sum(counts)
    if n == 0:
        return 0.0
    return 1.0 - sum((c / n) ** 2 for c in counts)


def _best_split(X: np.ndarray, y: np.ndarray) -> Optional[Tuple[int, float, float]]:
    """``(feature, threshold, impurity decrease)`` of the best split, or ``None``."""
    m = len(y)
    order = np.argsort(X, axis=0, kind="mergesort")
    xs = np.take_along_axis(X, order, axis=0)
    ys = y[order]

    pos_left = np.cumsum(ys, axis=0)[:-1].astype(np.float64)
    n_left = np.arange(1, m, dtype=np.float64)[:, None]
    n_right = m - n_left
    pos_right = float(y.sum()) - pos_left
    weighted = (2.0 / m) * (
        pos_left * (n_left - pos_left) / n_left + pos_right * (n_right - pos_right) / n_right
    )
    p = float(y.mean())
    parent = 2.0 * p * (1.0 - p)
    gain = parent - weighted
    gain[xs[1:] == xs[:-1]] = -np.inf

    best = gain.max() if gain.size else -np.inf
    if not np.isfinite(best) or best <= EPS:
        return None
    rows, cols = np.nonzero(gain >= best - EPS)
    f = int(cols.min())
    i = int(rows[cols == f].min())
    threshold = (float(xs[i, f]) + float(xs[i + 1, f])) / 2.0
    return f, threshold, float(gain[i, f])


def _grow(X: np.ndarray, y: np.ndarray) -> Node:
    ones = int(y.sum())
    node = Node(counts=(len(y) - ones, ones))
    if ones == 0 or ones == len(y):
        return node
    split = _best_split(X, y)
    if split is None:
        return node
    f, threshold, _ = split
    mask = X[:, f] <= threshold
    node.feature, node.threshold = f, threshold
    node.left = _grow(X[mask], y[mask])
    node.right = _grow(X[~mask], y[~mask])
    return node


def train_tree(X, y) -> DecisionTree:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("training needs a non-empty 2-D feature matrix")
    if len(y) != X.shape[0]:
        raise ValueError(f"{X.shape[0]} rows but {len(y)} labels")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    return DecisionTree(_grow(X, y), X.shape[1])


def predict(tree: DecisionTree, x) -> int:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (tree.n_features,):
        raise ValueError(f"expected {tree.n_features} features, got shape {x.shape}")
    node = tree.root
    while not node.is_leaf:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node.label


def predict_many(tree: DecisionTree, X) -> np.ndarray:
    return np.array([predict(tree, row) for row in np.asarray(X)], dtype=np.int64)


def tree_stats(tree: DecisionTree) -> TreeStats:
    nodes = leaves = depth = 0
    stack = [(tree.root, 0)]
    while stack:
        node, level = stack.pop()
        nodes += 1
        depth = max(depth, level)
        if node.is_leaf:
            leaves += 1
        else:
            stack.append((node.left, level + 1))
            stack.append((node.right, level + 1))
    return TreeStats(nodes, depth, leaves)


def evaluate(tree: DecisionTree, X, y) -> Evaluation:
    y = np.asarray(y, dtype=np.int64)
    if len(y) == 0:
        return Evaluation(0.0, 0)
    errors = int((predict_many(tree, X) != y).sum())
    return Evaluation(1.0 - errors / len(y), errors)


# ---------- JSON ----------

def _node_to_json(node: Node) -> dict:
    if node.is_leaf:
        return {"label": node.label, "counts": list(node.counts)}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "counts": list(node.counts),
        "left": _node_to_json(node.left),
        "right": _node_to_json(node.right),
    }


def tree_to_json(tree: DecisionTree) -> dict:
    return {"n_features": tree.n_features, "root": _node_to_json(tree.root)}


def _node_from_json(obj: dict) -> Node:
    node = Node(counts=tuple(obj["counts"]))
    if "feature" in obj:
        node.feature = int(obj["feature"])
        node.threshold = float(obj["threshold"])
        node.left = _node_from_json(obj["left"])
        node.right = _node_from_json(obj["right"])
    return node


def tree_from_json(obj: dict) -> DecisionTree:
    return DecisionTree(_node_from_json(obj["root"]), int(obj["n_features"]))


# ---------- Repeated train/test runs ----------

def split_indices(m: int, rng: np.random.Generator, test_fraction: float = TEST_FRACTION):
    perm = rng.permutation(m)
    n_test = int(round(m * test_fraction))
    return perm[n_test:], perm[:n_test]


def run_iteration(X: np.ndarray, y: np.ndarray, seed: int, iteration: int, test_fraction: float = TEST_FRACTION):
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(iteration,)))
    train_idx, test_idx = split_indices(len(y), rng, test_fraction)
    tree = train_tree(X[train_idx], y[train_idx])
    stats = tree_stats(tree)
    held_out = evaluate(tree, X[test_idx], y[test_idx])
    row = {
        "iteration": iteration,
        "number of nodes": stats.node_count,
        "depth": stats.depth,
        "number of leaves": stats.leaf_count,
        "total errors": held_out.total_errors,
        "test accuracy": held_out.accuracy,
        "train accuracy": evaluate(tree, X[train_idx], y[train_idx]).accuracy,
    }
    if DEBUG:
        print(f"[DEBUG] iteration {iteration}: {row}")
    return tree, row


def run_iterations(
    X, y, iterations: int, seed: int, test_fraction: float = TEST_FRACTION, workers: int = WORKERS
) -> Tuple[DecisionTree, pd.DataFrame]:
    """Train ``iterations`` trees on seeded 80/20 splits; returns the first tree and per-run rows."""
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        results = list(executor.map(lambda k: run_iteration(X, y, seed, k, test_fraction), range(iterations)))
    rows: List[dict] = [row for _, row in results]
    return results[0][0], pd.DataFrame(rows)


def average_stats(runs: pd.DataFrame, n: int) -> pd.DataFrame:
    """One row in the layout n, number of nodes, depth, number of leaves, total errors."""
    cols = ["number of nodes", "depth", "number of leaves", "total errors", "test accuracy"]
    means = runs[cols].mean()
    row = {"n": n}
    row.update({c: round(float(means[c]), 4) for c in cols})
    row["iterations"] = len(runs)
    return pd.DataFrame([row])
