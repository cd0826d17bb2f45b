"""Command-line front end: ``python cli.py <command> [options]``.

Every command prints a banner with the version and seed, writes its
artefacts atomically under ``--out`` and returns a process exit code.
Bad input records are reported by their 0-based index.
"""

import argparse
import os
import sys
import time
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from .config import (
    DEBUG,
    N_MAX,
    OUT_DIR,
    RETRY_BUDGET,
    SCRIPT_VERSION,
    SEED,
    STANDARD_MONOMIAL_CAP,
    TEST_FRACTION,
    WORKERS,
)
from .datasets import (
    FAMILIES,
    VECTOR_LENGTHS,
    balanced_counts,
    flat_frame,
    generate_dataset,
    random_generalised_table,
    random_proper_table,
    read_flat_dataset,
)
from .lefschetz import max_socle_degree
from .monomials import (
    CapExceededError,
    MonomialIdeal,
    hilbert_function,
    ideal_from_json,
    ideal_to_json,
    is_artinian,
    minimalize,
)
from .recognition import recognize
from .reduction import reduce_to_normal_form
from .simplicial import build_complex, complex_to_json, connected_components, dimension
from .tables import (
    GeneralisedTable,
    ImproperTableError,
    InvalidTableError,
    generalised_from_json,
    generalised_generators,
    generalised_to_json,
    is_normal_form,
    table_to_json,
)
from .tree import average_stats, run_iterations, tree_to_json
from .utils import read_json_records, write_csv_atomic, write_json_atomic, write_jsonl_atomic
from .verify import check_tree, run_verification


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=SEED, help=f"64-bit seed (default: {SEED})")
    p.add_argument("--out", default=OUT_DIR, help=f"Output directory (default: {OUT_DIR})")
    p.add_argument("--format", choices=["json", "csv", "jsonl"], default=None, help="Output format")
    p.add_argument("--cap", type=int, default=STANDARD_MONOMIAL_CAP, help="Standard-monomial cap for Hilbert/SLP")
    p.add_argument("--workers", type=int, default=WORKERS, help=f"Thread-pool width (default: {WORKERS})")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(prog="cli.py", description="Table ideals: generate, recognize, reduce, encode, verify.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="Random tables and their ideals")
    g.add_argument("--n", type=int, required=True, help="Number of variables")
    g.add_argument("--s", type=int, default=None, help="Colour count (random per table if omitted)")
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--n-max", type=int, default=N_MAX, help=f"Bound on free entries (default: {N_MAX})")
    g.add_argument("--mixed", action="store_true", help="Generalised tables over random partitions")
    g.add_argument("--normal-form", action="store_true", help="Reduce every table to normal form first")

    r = sub.add_parser("recognize", parents=[common], help="Decide table-ideal-hood of input ideals")
    r.add_argument("--input", required=True, help="JSON array / JSON lines of ideals")

    d = sub.add_parser("reduce", parents=[common], help="Reduce tables to normal form")
    d.add_argument("--input", required=True, help="JSON array / JSON lines of tables")
    d.add_argument("--verify", action="store_true", help="Re-check ideal equality and recognition")

    ds = sub.add_parser("dataset", parents=[common], help="Labelled flat / graph dataset")
    ds.add_argument("--n", type=int, required=True)
    ds.add_argument("--count", type=int, default=100, help="Records per family (default: 100)")
    ds.add_argument(
        "--records", type=int, default=None, help="Balanced total instead of --count (half random_table)"
    )
    ds.add_argument("--n-max", type=int, default=N_MAX)
    ds.add_argument("--families", nargs="+", choices=list(FAMILIES), default=list(FAMILIES))
    ds.add_argument("--no-almost", action="store_true", help="Leave out the almost_table family")
    ds.add_argument("--retry-budget", type=int, default=RETRY_BUDGET)

    v = sub.add_parser("verify", parents=[common], help="Seeded property suites")
    v.add_argument("--round-trip", type=int, default=1000)
    v.add_argument("--minimal-generators", type=int, default=1000, help="Minimal-generator instances")
    v.add_argument("--components", type=int, default=500)
    v.add_argument("--hilbert", type=int, default=300)
    v.add_argument("--slp", type=int, nargs="?", const=50, default=0, help="SLP instances (default when given: 50)")
    v.add_argument("--mutant", type=int, nargs="?", const=100, default=0, help="Mutant tables (default when given: 100)")
    v.add_argument("--tree", type=int, nargs="*", default=[], metavar="N", help="Decision-tree reproduction for these n")
    v.add_argument("--tree-records", type=int, default=2500)
    v.add_argument("--tree-iterations", type=int, default=100)
    v.add_argument("--n-max", type=int, default=N_MAX)

    t = sub.add_parser("train", parents=[common], help="Repeated decision-tree runs and their averages")
    t.add_argument("--input", default=None, help="Flat CSV dataset; generated on the fly when omitted")
    t.add_argument("--n", type=int, default=None)
    t.add_argument("--records", type=int, default=2500, help="Balanced record total when generating (default: 2500)")
    t.add_argument("--n-max", type=int, default=N_MAX)
    t.add_argument("--no-almost", action="store_true")
    t.add_argument("--iterations", type=int, default=100)
    t.add_argument("--test-fraction", type=float, default=TEST_FRACTION)

    st = sub.add_parser("stats", parents=[common], help="Per-ideal summary table")
    st.add_argument("--input", required=True)
    return p


def _banner(command: str, args, **extra):
    parts = " ".join(f"{k}={v}" for k, v in extra.items())
    print(f"table-ideals {command}: seed={args.seed} {parts} (ver={SCRIPT_VERSION}, DEBUG={DEBUG})")


def _write_records(records: List[dict], path_stem: str, fmt: str) -> str:
    if fmt == "jsonl":
        path = path_stem + ".jsonl"
        write_jsonl_atomic(path, records)
    else:
        path = path_stem + ".json"
        write_json_atomic(path, records)
    print(f"Wrote {len(records)} record(s) -> {path}")
    return path


def _ideal_from_record(rec) -> MonomialIdeal:
    if isinstance(rec, dict) and "ideal" in rec:
        rec = rec["ideal"]
    return ideal_from_json(rec)


def _table_from_record(rec) -> GeneralisedTable:
    if isinstance(rec, dict) and "table" in rec:
        rec = rec["table"]
    return generalised_from_json(rec)


def _parse_all(records, parse) -> Optional[list]:
    out = []
    for k, rec in enumerate(records):
        try:
            out.append(parse(rec))
        except (ValueError, KeyError, TypeError) as e:
            print(f"Malformed input record {k}: {e}")
            return None
    return out


# ---------- Commands ----------

def cmd_generate(args) -> int:
    if args.n < 1 or args.count < 0 or args.n_max < 1:
        raise ValueError("need --n >= 1, --count >= 0 and --n-max >= 1")
    if args.s is not None and not 0 <= args.s < args.n:
        raise ValueError(f"--s must satisfy 0 <= s < n, got s={args.s}, n={args.n}")
    _banner("generate", args, n=args.n, s=args.s, count=args.count, n_max=args.n_max, mixed=args.mixed)

    records = []
    for k in range(args.count):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=args.seed, spawn_key=(k,)))
        if args.mixed:
            G = random_generalised_table(args.n, rng, args.n_max)
        else:
            s = args.s if args.s is not None else int(rng.integers(0, args.n))
            G = GeneralisedTable.single(random_proper_table(s, args.n, args.n_max, rng), args.n)
        if args.normal_form:
            G = reduce_to_normal_form(G)
        table = table_to_json(G.tables[0]) if len(G.tables) == 1 else generalised_to_json(G)
        records.append({"id": f"table-{k:05d}", "table": table, "ideal": ideal_to_json(generalised_generators(G))})

    _write_records(records, os.path.join(args.out, "tables"), args.format or "json")
    return 0


def cmd_recognize(args) -> int:
    _banner("recognize", args, input=args.input)
    ideals = _parse_all(read_json_records(args.input), _ideal_from_record)
    if ideals is None:
        return 1
    started = time.time()
    out = []
    for k, I in enumerate(ideals):
        outcome = recognize(I)
        out.append({"index": k, **outcome.to_json()})
    tables = sum(1 for r in out if r["verdict"] == "table")
    print(f"Recognized {len(out)} ideal(s): table={tables} not_table={len(out) - tables} ({time.time() - started:.2f}s)")
    _write_records(out, os.path.join(args.out, "recognized"), args.format or "json")
    return 0


def cmd_reduce(args) -> int:
    _banner("reduce", args, input=args.input, verify=args.verify)
    tables = _parse_all(read_json_records(args.input), _table_from_record)
    if tables is None:
        return 1
    out, failed = [], 0
    for k, G in enumerate(tables):
        try:
            R = reduce_to_normal_form(G)
        except (ImproperTableError, InvalidTableError, RuntimeError) as e:
            print(f"Reduction failed for record {k}: {e}")
            out.append({"index": k, "error": str(e)})
            failed += 1
            continue
        row = {"index": k, "table": generalised_to_json(R), "ideal": ideal_to_json(minimalize(generalised_generators(R)))}
        if args.verify:
            outcome = recognize(generalised_generators(G))
            row["verified"] = outcome.is_table and outcome.table == R and is_normal_form(R)
            if not row["verified"]:
                print(f"Verification failed for record {k}")
                failed += 1
        out.append(row)
    _write_records(out, os.path.join(args.out, "reduced"), args.format or "json")
    print(f"Done: reduced={len(out) - failed} failed={failed}")
    return 1 if failed else 0


def cmd_dataset(args) -> int:
    families = [f for f in args.families if not (args.no_almost and f == "almost_table")]
    fmt = args.format or "csv"
    if fmt == "csv" and args.n not in VECTOR_LENGTHS:
        raise ValueError(f"flat encoding is defined for n = 3..10, got n={args.n}; use --format jsonl")
    _banner(
        "dataset", args, n=args.n, count=args.count, records=args.records,
        n_max=args.n_max, families=",".join(families), format=fmt,
    )

    count = balanced_counts(args.records, families) if args.records is not None else args.count
    result = generate_dataset(args.n, count, args.seed, args.n_max, families, args.retry_budget, args.workers)
    stem = os.path.join(args.out, f"dataset_n{args.n}")
    if fmt == "csv":
        write_csv_atomic(flat_frame(result.records), stem + ".csv", header=False)
        print(f"Wrote {len(result.records)} flat row(s) of length {VECTOR_LENGTHS[args.n]} -> {stem}.csv")
    else:
        _write_records([r.graph_json() for r in result.records], stem + "_graph", "jsonl")
    manifest = dict(result.manifest, format=fmt, workers=args.workers)
    write_json_atomic(stem + ".manifest.json", manifest)
    short = sum(f["shortfall"] for f in manifest["families"].values())
    if short:
        print(f"Shortfall: {short} record(s) could not be drawn within the retry budget")
    return 0


def cmd_verify(args) -> int:
    counts = {
        "round_trip": args.round_trip,
        "minimal_generators": args.minimal_generators,
        "components": args.components,
        "hilbert": args.hilbert,
        "slp": args.slp,
        "mutant": args.mutant,
    }
    _banner("verify", args, cap=args.cap, **{k: v for k, v in counts.items() if v})
    results = run_verification(counts, args.seed, args.workers, args.cap, args.n_max)
    trees = [
        check_tree(n, args.seed, args.tree_records, args.tree_iterations, args.workers, args.n_max) for n in args.tree
    ]
    report = {
        "script_version": SCRIPT_VERSION,
        "seed": args.seed,
        "cap": args.cap,
        "n_max": args.n_max,
        "suites": [r.to_json() for r in results],
        "tree": [t.to_json() for t in trees],
        "ok": all(r.ok for r in results) and all(t.ok for t in trees),
    }
    write_json_atomic(os.path.join(args.out, "verify_report.json"), report)
    failed = sum(r.failed for r in results)
    print(f"Done: {'all suites passed' if report['ok'] else f'{failed} violation(s)'}")
    return 0 if report["ok"] else 1


def cmd_train(args) -> int:
    if args.input:
        if not os.path.exists(args.input):
            raise FileNotFoundError(f"dataset not found: {args.input}")
        X, y = read_flat_dataset(args.input)
        n = args.n if args.n is not None else next((k for k, v in VECTOR_LENGTHS.items() if v == X.shape[1]), 0)
        source = args.input
    else:
        if args.n is None:
            raise ValueError("train needs --input or --n")
        families = [f for f in FAMILIES if not (args.no_almost and f == "almost_table")]
        counts = balanced_counts(args.records, families)
        result = generate_dataset(args.n, counts, args.seed, args.n_max, families, RETRY_BUDGET, args.workers)
        frame = flat_frame(result.records)
        X = frame.iloc[:, :-1].to_numpy(dtype=np.int64)
        y = frame.iloc[:, -1].to_numpy(dtype=np.int64)
        n, source = args.n, f"generated ({len(y)} records)"
    _banner("train", args, n=n, iterations=args.iterations, source=source)

    started = time.time()
    tree, runs = run_iterations(X, y, args.iterations, args.seed, args.test_fraction, args.workers)
    summary = average_stats(runs, n)
    write_json_atomic(os.path.join(args.out, f"tree_n{n}.json"), tree_to_json(tree))
    write_csv_atomic(runs, os.path.join(args.out, f"tree_runs_n{n}.csv"))
    write_csv_atomic(summary, os.path.join(args.out, f"tree_stats_n{n}.csv"))
    row = summary.iloc[0].to_dict()
    write_json_atomic(
        os.path.join(args.out, f"tree_n{n}.manifest.json"),
        {
            "script_version": SCRIPT_VERSION,
            "seed": args.seed,
            "n": n,
            "source": source,
            "records": int(len(y)),
            "iterations": args.iterations,
            "test_fraction": args.test_fraction,
            "almost_table_included": not args.no_almost if not args.input else None,
            "averages": row,
        },
    )
    print(
        f"Averages n={n}: nodes={row['number of nodes']} depth={row['depth']} "
        f"leaves={row['number of leaves']} errors={row['total errors']} accuracy={row['test accuracy']} "
        f"({time.time() - started:.2f}s)"
    )
    return 0


def _stats_row(k: int, I: MonomialIdeal, cap: int) -> Tuple[dict, Optional[dict]]:
    """Summary row plus the complex export (``None`` for the unit ideal)."""
    m = minimalize(I)
    row = {
        "index": k,
        "n": I.n,
        "generators": len(I.generators),
        "minimal_generators": len(m.generators),
        "artinian": is_artinian(m),
        "components": None,
        "dimension": None,
        "verdict": None,
        "reason": None,
        "hilbert": None,
        "socle_degree": None,
        "facets": None,
    }
    if m.is_unit():
        row["verdict"], row["reason"] = "not_table", "improper ideal"
        return row, None
    C = build_complex(m)
    row["dimension"] = dimension(C) if C.weights else None
    if row["artinian"]:
        row["components"] = len(connected_components(C))
    outcome = recognize(m)
    row["verdict"], row["reason"] = outcome.verdict, outcome.reason
    if row["artinian"]:
        try:
            h = hilbert_function(m, cap)
            row["hilbert"] = " ".join(str(x) for x in h)
            row["socle_degree"] = len(h) - 1
        except CapExceededError:
            row["hilbert"] = "over cap"
    if outcome.is_table and len(outcome.table.tables) == 1 and DEBUG:
        print(f"[DEBUG] ideal {k}: socle formula {max_socle_degree(outcome.table.tables[0])}")
    complex_json = {"index": k, **complex_to_json(C, outcome.table)}
    row["facets"] = len(complex_json["facets"])
    if DEBUG:
        print(f"[DEBUG] ideal {k}: complex {complex_json}")
    return row, complex_json


def cmd_stats(args) -> int:
    _banner("stats", args, input=args.input, cap=args.cap)
    ideals = _parse_all(read_json_records(args.input), _ideal_from_record)
    if ideals is None:
        return 1
    results = [_stats_row(k, I, args.cap) for k, I in enumerate(ideals)]
    df = pd.DataFrame([row for row, _ in results])
    path = os.path.join(args.out, "stats.csv")
    write_csv_atomic(df, path)
    print(f"Wrote {len(df)} row(s) -> {path}")
    _write_records([c for _, c in results if c is not None], os.path.join(args.out, "complexes"), "jsonl")
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "recognize": cmd_recognize,
    "reduce": cmd_reduce,
    "dataset": cmd_dataset,
    "verify": cmd_verify,
    "train": cmd_train,
    "stats": cmd_stats,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2**64:
        print(f"Invalid --seed {args.seed}: expected a 64-bit non-negative integer")
        return 1
    try:
        return COMMANDS[args.command](args)
    except (ValueError, RuntimeError, OSError) as e:
        print(f"{args.command} failed: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
