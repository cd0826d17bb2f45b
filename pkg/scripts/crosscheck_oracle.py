"""Compare recognition against the brute-force table enumeration.

Usage:
    python -m scripts.crosscheck_oracle [--count N] [--max_n N] [--bound B]
        [--seed S] [--workers N]

Draws random Artinian ideals in at most ``max_n`` variables with every
exponent <= ``bound`` and checks that ``recognize`` says "table" exactly
when the ideal is in the enumerated set. Exits non-zero on any
disagreement.
"""

import argparse
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np

from table_ideals.config import DEBUG, SCRIPT_VERSION, SEED, WORKERS
from table_ideals.monomials import MonomialIdeal, ideal_to_json
from table_ideals.recognition import brute_force_table_ideals, oracle_says_table, recognize
from table_ideals.utils import write_json_atomic


def _parse_args() -> argparse.Namespace:
    p = argparse.ArgumentParser(description="Cross-check recognition against the brute-force oracle.")
    p.add_argument("--count", type=int, default=5000, help="Random ideals to check (default: 5000)")
    p.add_argument("--max_n", type=int, default=3, help="Largest variable count (default: 3)")
    p.add_argument("--bound", type=int, default=3, help="Largest exponent (default: 3)")
    p.add_argument("--seed", type=int, default=SEED, help=f"Seed (default: {SEED})")
    p.add_argument("--workers", type=int, default=WORKERS, help=f"Concurrent workers (default: {WORKERS})")
    p.add_argument("--report", default=None, help="Optional JSON path for the disagreement report")
    return p.parse_args()


def random_artinian(rng: np.random.Generator, max_n: int, bound: int) -> MonomialIdeal:
    """Pure powers plus up to four extra monomials; extras are never 1, so the ideal is proper."""
    n = int(rng.integers(1, max_n + 1))
    gens = []
    for v in range(n):
        e = [0] * n
        e[v] = int(rng.integers(1, bound + 1))
        gens.append(tuple(e))
    for _ in range(int(rng.integers(0, 5))):
        while True:
            extra = tuple(int(x) for x in rng.integers(0, bound + 1, size=n))
            if any(extra):
                break
        gens.append(extra)
    return MonomialIdeal(n, tuple(gens))


def _check(k: int, seed: int, max_n: int, bound: int, oracles: dict) -> dict:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(k,)))
    I = random_artinian(rng, max_n, bound)
    expected = oracle_says_table(I, oracles[I.n])
    outcome = recognize(I)
    status = "agreed" if outcome.is_table == expected else "disagreed"
    return {
        "index": k,
        "status": status,
        "ideal": ideal_to_json(I),
        "oracle": expected,
        "verdict": outcome.verdict,
        "reason": outcome.reason,
    }


def main() -> None:
    args = _parse_args()
    workers = max(1, args.workers)
    print(
        f"Oracle cross-check: count={args.count} max_n={args.max_n} bound={args.bound} "
        f"(seed={args.seed}, workers={workers}, ver={SCRIPT_VERSION})"
    )

    started = time.time()
    oracles = {}
    for n in range(1, args.max_n + 1):
        oracles[n] = brute_force_table_ideals(n, args.bound)
        print(f"Enumerated {len(oracles[n])} table ideal(s) in {n} variable(s)")

    agreed = disagreed = 0
    disagreements = []
    lock = threading.Lock()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(_check, k, args.seed, args.max_n, args.bound, oracles): k for k in range(args.count)
        }
        for future in as_completed(futures):
            try:
                result = future.result()
            except Exception as e:
                print(f"\nCheck {futures[future]} failed: {e}")
                result = {"index": futures[future], "status": "disagreed", "error": str(e)}
            with lock:
                if result["status"] == "agreed":
                    agreed += 1
                else:
                    disagreed += 1
                    disagreements.append(result)
                    if DEBUG:
                        print(f"\n[DEBUG] disagreement: {result}")
                done = agreed + disagreed
                if done % 500 == 0:
                    print(f"\rProgress: {done}/{args.count} agreed={agreed} disagreed={disagreed}", end="", flush=True)

    print()
    if args.report:
        write_json_atomic(args.report, sorted(disagreements, key=lambda r: r["index"]))
    print(
        f"Done: compared={agreed + disagreed}/{args.count} agreed={agreed} disagreed={disagreed} "
        f"({time.time() - started:.1f}s)"
    )
    if disagreed:
        sys.exit(1)


if __name__ == "__main__":
    main()
