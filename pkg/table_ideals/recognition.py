"""Decide whether a monomial ideal is a table ideal, and rebuild its table.

The ideal is minimalized and split into the connected components of its
complex. A component on one variable is a ``(0,1)``-table. Otherwise its
colour count ``s`` is the dimension of the complex, the constrained
variables are peeled off one at a time by colon ideals
(:func:`constrained_order`), the matrix is read off the generators
(:func:`fill_table`), and the candidate must be a table in normal form
whose ideal equals the component.

Failures inside the pipeline raise :class:`NotATableIdeal`;
:func:`recognize` turns every failure into a ``not_table`` outcome.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .config import DEBUG
from .monomials import (
    MonomialIdeal,
    colon_by_monomial,
    equal_ideals,
    is_artinian,
    is_pure_power,
    minimalize,
    pure_power_exponents,
    restrict_to_variables,
    support,
)
from .simplicial import build_complex, connected_components, dimension
from .tables import (
    GeneralisedTable,
    Table,
    canonical_form,
    check_table_conditions,
    generalised_from_json,
    generalised_to_json,
    generators,
    normal_form_report,
    singleton,
)

TABLE = "table"
NOT_TABLE = "not_table"

REASON_IMPROPER = "improper ideal"
REASON_NON_ARTINIAN = "non-Artinian"
REASON_EMPTY_F = "empty F(K)"
REASON_TIED = "tied pure-power exponents"
REASON_DIMENSION = "dimension mismatch"
REASON_NON_LADDER = "support not a ladder"
REASON_INCONSISTENT = "inconsistent alphas"
REASON_CONDITIONS = "table-condition violation"
REASON_REGENERATION = "regeneration mismatch"


class NotATableIdeal(Exception):
    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


@dataclass(frozen=True)
class RecognitionOutcome:
    verdict: str
    table: Optional[GeneralisedTable] = None
    reason: Optional[str] = None
    detail: Optional[str] = None

    @property
    def is_table(self) -> bool:
        return self.verdict == TABLE

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "detail": self.detail,
            "table": generalised_to_json(self.table) if self.table is not None else None,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RecognitionOutcome":
        table = obj.get("table")
        return cls(
            obj["verdict"],
            generalised_from_json(table) if table is not None else None,
            obj.get("reason"),
            obj.get("detail"),
        )


# ---------- F(K) and the constrained order ----------

def _mixed(I: MonomialIdeal) -> List[Tuple[int, ...]]:
    return [g for g in I.generators if len(support(g)) >= 2]


def possible_first_variables(I: MonomialIdeal) -> Set[int]:
    """Variables with one and the same positive exponent in every mixed generator."""
    mixed = _mixed(minimalize(I))
    if not mixed:
        raise ValueError("no generator involves two variables; the complex has dimension 0")
    return {t for t in range(I.n) if mixed[0][t] > 0 and all(g[t] == mixed[0][t] for g in mixed)}


def _complex_dimension(I: MonomialIdeal) -> int:
    sizes = [len(support(g)) for g in I.generators]
    return max(sizes) - 1 if sizes else -1


def constrained_order(I: MonomialIdeal, s: Optional[int] = None) -> List[int]:
    """The ``s`` constrained variables of a connected Artinian component, in order.

    Raises :class:`NotATableIdeal` on an empty F, a tie between candidate
    pure powers, or when a colon step does not lower the dimension by one.
    """
    current = minimalize(I)
    if s is None:
        s = _complex_dimension(current)
    order: List[int] = []
    for step in range(s):
        dim = _complex_dimension(current)
        if dim != s - step:
            raise NotATableIdeal(REASON_DIMENSION, f"after {step} colour(s) the complex has dimension {dim}, expected {s - step}")
        F = possible_first_variables(current)
        if not F:
            raise NotATableIdeal(REASON_EMPTY_F, f"no possible first variable after {step} colour(s)")
        powers = pure_power_exponents(current)
        missing = sorted(t for t in F if t not in powers)
        if missing:
            raise NotATableIdeal(REASON_NON_ARTINIAN, f"variables {missing} have no pure power")
        best = min(powers[t] for t in F)
        chosen = sorted(t for t in F if powers[t] == best)
        if len(chosen) > 1:
            raise NotATableIdeal(REASON_TIED, f"variables {chosen} share the smallest pure-power exponent {best}")
        v = chosen[0]
        e = _mixed(current)[0][v]
        if DEBUG:
            print(f"[DEBUG] colour {step + 1}: variable {v}, colon exponent {e}, F={sorted(F)}")
        shift = [0] * current.n
        shift[v] = e
        current = colon_by_monomial(current, tuple(shift))
        if current.is_unit():
            raise NotATableIdeal(REASON_INCONSISTENT, f"colon by x{v}^{e} gives the unit ideal")
        in_mixed = {t for g in _mixed(current) for t in support(g)}
        kept = [g for g in current.generators if not (is_pure_power(g) and (g[v] > 0 or not (support(g) & in_mixed)))]
        current = MonomialIdeal(current.n, tuple(kept))
        order.append(v)
    return order


# ---------- Reading the matrix off the generators ----------

def fill_table(I: MonomialIdeal, order: Sequence[int], s: Optional[int] = None) -> Table:
    """Candidate table with columns ``order`` then the remaining variables ascending.

    Labels are the variable indices of ``I``. Raises :class:`NotATableIdeal`
    for a support that is not ``{1..i} u {j}``, a negative or conflicting
    alpha, or a variable without a pure power.
    """
    I = minimalize(I)
    s = len(order) if s is None else s
    columns = list(order) + sorted(set(range(I.n)) - set(order))
    position = {v: k for k, v in enumerate(columns)}
    powers = pure_power_exponents(I)
    missing = [v for v in columns if v not in powers]
    if missing:
        raise NotATableIdeal(REASON_NON_ARTINIAN, f"variables {missing} have no pure power")

    n = len(columns)
    d = [powers[v] for v in columns]
    alpha: Dict[Tuple[int, int], int] = {}
    by_row: Dict[int, List[Tuple[int, Tuple[int, ...]]]] = {}

    for g in _mixed(I):
        pos = sorted(position[t] for t in support(g))
        r = len(pos)
        i = r - 1
        if pos[:-1] != list(range(r - 1)) or not (1 <= i <= s):
            raise NotATableIdeal(REASON_NON_LADDER, f"generator {list(g)} has support at columns {pos}")
        by_row.setdefault(i, []).append((pos[-1], g))

    def above(row: int, c: int) -> int:
        return sum(alpha.get((q, c), 0) for q in range(1, row))

    def assign(row: int, c: int, value: int, exclusive: bool):
        if value < 0:
            raise NotATableIdeal(REASON_INCONSISTENT, f"alpha at row {row}, column {c} would be {value}")
        if (row, c) in alpha and (exclusive or alpha[(row, c)] != value):
            raise NotATableIdeal(REASON_INCONSISTENT, f"alpha at row {row}, column {c} determined twice ({alpha[(row, c)]} vs {value})")
        alpha[(row, c)] = value

    for i in sorted(by_row):
        for c, g in sorted(by_row[i], key=lambda item: item[0]):
            exps = [g[v] for v in columns]
            # diagonals of the ladder, then the generator's own alpha_{i,j}
            for t in range(i):
                assign(t + 1, t, d[t] - above(t + 1, t) - exps[t], exclusive=False)
            assign(i, c, d[c] - above(i, c) - exps[c], exclusive=True)

    entries = [d] + [[alpha.get((row, c), 0) for c in range(n)] for row in range(1, s + 1)]
    return Table(tuple(columns), tuple(tuple(r) for r in entries))


# ---------- Driver ----------

def _recognize_component(sub: MonomialIdeal) -> Table:
    s = dimension(build_complex(sub))
    order = constrained_order(sub, s)
    T = fill_table(sub, order, s)
    violations = check_table_conditions(T)
    if violations:
        raise NotATableIdeal(REASON_CONDITIONS, "; ".join(v["message"] for v in violations))
    report = normal_form_report(T)
    if not report.empty:
        raise NotATableIdeal(REASON_CONDITIONS, f"candidate is not in normal form: {report.to_json()}")
    if not equal_ideals(generators(T, sub.n), sub):
        raise NotATableIdeal(REASON_REGENERATION, "candidate table generates a different ideal")
    return T


def _recognize(I: MonomialIdeal) -> RecognitionOutcome:
    I = minimalize(I)
    if I.is_unit():
        raise NotATableIdeal(REASON_IMPROPER, "the ideal contains 1")
    if not is_artinian(I):
        missing = sorted(set(range(I.n)) - set(pure_power_exponents(I)))
        raise NotATableIdeal(REASON_NON_ARTINIAN, f"no pure power of variables {missing}")
    if I.n == 0:
        return RecognitionOutcome(TABLE, GeneralisedTable(0, ()))

    members: List[Table] = []
    powers = pure_power_exponents(I)
    for comp in connected_components(build_complex(I)):
        if len(comp) == 1:
            members.append(singleton(comp[0], powers[comp[0]]))
            continue
        local = _recognize_component(restrict_to_variables(I, comp))
        members.append(Table(tuple(comp[v] for v in local.labels), local.entries))
    return RecognitionOutcome(TABLE, canonical_form(GeneralisedTable(I.n, tuple(members))))


def recognize(I: MonomialIdeal) -> RecognitionOutcome:
    """Never raises for ideal content; failures come back as ``not_table``."""
    try:
        return _recognize(I)
    except NotATableIdeal as e:
        if DEBUG:
            print(f"[DEBUG] not a table ideal: {e}")
        return RecognitionOutcome(NOT_TABLE, None, e.reason, e.detail)
    except ValueError as e:
        return RecognitionOutcome(NOT_TABLE, None, REASON_CONDITIONS, str(e))


# ---------- Brute-force oracle ----------

def _set_partitions(items: List[int]) -> Iterator[List[List[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1 :]
        yield [[first]] + part


def _block_ideals(block: Sequence[int], n_total: int, bound: int) -> Set[FrozenSet[Tuple[int, ...]]]:
    out: Set[FrozenSet[Tuple[int, ...]]] = set()
    m = len(block)
    for s in range(m):
        for constrained in itertools.permutations(block, s):
            labels = tuple(constrained) + tuple(sorted(set(block) - set(constrained)))
            free = [(i, c) for i in range(1, s + 1) for c in range(i - 1, m)]
            for values in itertools.product(range(bound + 1), repeat=len(free)):
                rows = [[0] * m for _ in range(s + 1)]
                for (i, c), x in zip(free, values):
                    rows[i][c] = x
                for k in range(1, s + 1):
                    c = k - 1
                    rows[0][c] = (
                        sum(rows[i][c] for i in range(1, k))
                        + sum(rows[k][j] for j in range(k, m))
                        + (rows[k + 1][k] if k + 1 <= s else 0)
                    )
                if any(rows[0][c] > bound for c in range(s)):
                    continue
                for tail in itertools.product(range(1, bound + 1), repeat=m - s):
                    for c, x in zip(range(s, m), tail):
                        rows[0][c] = x
                    T = Table(labels, tuple(tuple(r) for r in rows))
                    if check_table_conditions(T):
                        continue
                    ideal = generators(T, n_total)
                    if ideal.is_unit():
                        continue
                    out.add(frozenset(minimalize(ideal).generators))
    return out


def brute_force_table_ideals(n: int, bound: int) -> Set[FrozenSet[Tuple[int, ...]]]:
    """Minimal generating sets of every proper generalised table with entries <= ``bound``."""
    cache: Dict[Tuple[int, ...], Set[FrozenSet[Tuple[int, ...]]]] = {}
    out: Set[FrozenSet[Tuple[int, ...]]] = set()
    for partition in _set_partitions(list(range(n))):
        options = []
        for block in partition:
            key = tuple(sorted(block))
            if key not in cache:
                cache[key] = _block_ideals(key, n, bound)
            options.append(cache[key])
        for combo in itertools.product(*options):
            out.add(frozenset().union(*combo))
    return out


def oracle_says_table(I: MonomialIdeal, ideals: Set[FrozenSet[Tuple[int, ...]]]) -> bool:
    return frozenset(minimalize(I).generators) in ideals
