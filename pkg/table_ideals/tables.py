"""Tables, generalised tables and the ideals they generate.

An ``(s, n)``-table is an ``(s+1) x n`` matrix of non-negative integers.
Row 0 holds ``d_1..d_n``; rows ``1..s`` hold the alphas, so
``alpha_{i,j}`` (``j`` 1-based) sits at ``entries[i][j-1]``.
Column ``c`` of the matrix belongs to variable ``labels[c]`` (0-based).
Columns ``0..s-1`` are constrained, the rest unconstrained.

:class:`Table` only enforces the matrix shape; the three conditions of
the definition are checked by :func:`check_table_conditions` /
:func:`validate_table`, because reduction and the dataset generator
also handle matrices that are not (yet) tables.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .monomials import Monomial, MonomialIdeal

Matrix = Tuple[Tuple[int, ...], ...]


class InvalidTableError(ValueError):
    """A matrix breaks one or more of the table conditions."""

    def __init__(self, violations: List[dict]):
        self.violations = violations
        summary = "; ".join(v["message"] for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"not a table: {summary}{more}")


class ImproperTableError(ValueError):
    """The table generates the unit ideal."""


@dataclass(frozen=True)
class Table:
    labels: Tuple[int, ...]
    entries: Matrix

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        labels = tuple(int(t) for t in self.labels)
        if not entries:
            raise ValueError("table needs at least the row of d's")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError(f"non-rectangular matrix: row lengths {[len(r) for r in entries]}")
        if len(entries) > width:
            raise ValueError(f"{len(entries)} rows but only {width} columns (need s < n)")
        if len(labels) != width:
            raise ValueError(f"{len(labels)} labels for {width} columns")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels {list(labels)}")
        if any(t < 0 for t in labels):
            raise ValueError(f"labels must be non-negative variable indices, got {list(labels)}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "labels", labels)

    @property
    def s(self) -> int:
        return len(self.entries) - 1

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def d(self) -> Tuple[int, ...]:
        return self.entries[0]

    def column(self, c: int) -> Tuple[int, ...]:
        """The alphas of column ``c`` (rows 1..s)."""
        return tuple(self.entries[i][c] for i in range(1, self.s + 1))

    def column_sum(self, c: int) -> int:
        return sum(self.column(c))

    def ladder_exponent(self, i: int, c: int) -> int:
        """Exponent of ``labels[c]`` in ``m_{i,*}``: ``d - alpha_1 - ... - alpha_i``."""
        return self.entries[0][c] - sum(self.entries[r][c] for r in range(1, i + 1))

    def is_singular(self, c: int) -> bool:
        return self.s > 0 and self.column_sum(c) == self.entries[0][c]


@dataclass(frozen=True)
class GeneralisedTable:
    n_total: int
    tables: Tuple[Table, ...]

    def __post_init__(self):
        tables = tuple(self.tables)
        seen: Dict[int, int] = {}
        for k, t in enumerate(tables):
            for label in t.labels:
                if label >= self.n_total:
                    raise ValueError(f"label {label} outside the ring of {self.n_total} variables")
                if label in seen:
                    raise ValueError(f"variable {label} appears in tables {seen[label]} and {k}")
                seen[label] = k
        missing = sorted(set(range(self.n_total)) - set(seen))
        if missing:
            raise ValueError(f"variables {missing} are not covered by any table")
        object.__setattr__(self, "tables", tables)

    @classmethod
    def single(cls, table: Table, n_total: Optional[int] = None) -> "GeneralisedTable":
        return cls(n_total if n_total is not None else max(table.labels) + 1, (table,))

    def component_count(self) -> int:
        """Connected components: each (0,n)-table counts as n."""
        return sum(t.n if t.s == 0 else 1 for t in self.tables)


# ---------- Table conditions ----------

def _violation(condition: str, row: Optional[int], column: Optional[int], message: str) -> dict:
    return {"condition": condition, "row": row, "column": column, "message": message}


def check_table_conditions(T: Table) -> List[dict]:
    """List every violated table condition (empty list for a valid table)."""
    out: List[dict] = []
    s, n, E = T.s, T.n, T.entries
    for i, row in enumerate(E):
        for c, x in enumerate(row):
            if x < 0:
                out.append(_violation("entries", i, c, f"entry ({i},{c}) = {x} is negative"))
    for i in range(1, s + 1):
        for c in range(i - 1):
            if E[i][c] != 0:
                out.append(_violation("i", i, c, f"(i) alpha at row {i}, column {c} must be 0, got {E[i][c]}"))
    for c in range(n):
        total = T.column_sum(c)
        if total > E[0][c]:
            out.append(_violation("ii", None, c, f"(ii) column {c}: alphas sum to {total} > d = {E[0][c]}"))
    for k in range(1, s + 1):
        c = k - 1
        rhs = (
            sum(E[i][c] for i in range(1, k))
            + sum(E[k][j] for j in range(k, n))
            + (E[k + 1][k] if k + 1 <= s else 0)
        )
        if E[0][c] != rhs:
            out.append(_violation("iii", k, c, f"(iii) colour {k}: d = {E[0][c]} but the linked alphas sum to {rhs}"))
    return out


def validate_table(entries: Sequence[Sequence[int]], labels: Sequence[int]) -> Table:
    """Build a :class:`Table`, raising :class:`InvalidTableError` with the full report."""
    T = Table(tuple(labels), tuple(tuple(r) for r in entries))
    violations = check_table_conditions(T)
    if violations:
        raise InvalidTableError(violations)
    return T


def is_valid_table(T: Table) -> bool:
    return not check_table_conditions(T)


# ---------- K(T) ----------

def generator_exponents(T: Table, n_total: Optional[int] = None) -> List[Tuple[int, int, List[int]]]:
    """Raw ``(i, c, exponents)`` of every ``m_{i,j}``; exponents may be negative
    when the matrix is not a table."""
    n_total = n_total if n_total is not None else max(T.labels) + 1
    out = []
    for i in range(T.s + 1):
        for c in range(i, T.n):
            exps = [0] * n_total
            for t in list(range(i)) + [c]:
                exps[T.labels[t]] = T.ladder_exponent(i, t)
            out.append((i, c, exps))
    return out


def generators(T: Table, n_total: Optional[int] = None) -> MonomialIdeal:
    """K(T) with the full (non-minimal) generator list, ``m_{0,*}`` first."""
    n_total = n_total if n_total is not None else max(T.labels) + 1
    gens = []
    for i, c, exps in generator_exponents(T, n_total):
        if any(e < 0 for e in exps):
            raise ValueError(f"m_({i},{c}) has a negative exponent; the matrix is not a table")
        gens.append(tuple(exps))
    return MonomialIdeal(n_total, tuple(gens))


def generalised_generators(G: GeneralisedTable) -> MonomialIdeal:
    gens: List[Monomial] = []
    for t in G.tables:
        gens.extend(generators(t, G.n_total).generators)
    return MonomialIdeal(G.n_total, tuple(gens))


def is_proper(T) -> bool:
    ideal = generalised_generators(T) if isinstance(T, GeneralisedTable) else generators(T)
    return not ideal.is_unit()


# ---------- Normal form ----------

@dataclass(frozen=True)
class NormalFormReport:
    """Row numbers (1..s) of zero diagonals; column positions (0-based) otherwise."""

    diag_zeros: Tuple[int, ...] = ()
    almost_zero_columns: Tuple[int, ...] = ()
    singular_columns: Tuple[int, ...] = ()

    @property
    def empty(self) -> bool:
        return not (self.diag_zeros or self.almost_zero_columns or self.singular_columns)

    def to_json(self, T: Optional[Table] = None) -> dict:
        out = {
            "diag_zeros": list(self.diag_zeros),
            "almost_zero_columns": list(self.almost_zero_columns),
            "singular_columns": list(self.singular_columns),
        }
        if T is not None:
            out["almost_zero_labels"] = [T.labels[c] for c in self.almost_zero_columns]
            out["singular_labels"] = [T.labels[c] for c in self.singular_columns]
        return out


def normal_form_report(T: Table) -> NormalFormReport:
    if T.s == 0:
        return NormalFormReport()
    s = T.s
    return NormalFormReport(
        diag_zeros=tuple(i for i in range(1, s + 1) if T.entries[i][i - 1] == 0),
        almost_zero_columns=tuple(c for c in range(s, T.n) if T.column_sum(c) == 0),
        singular_columns=tuple(c for c in range(T.n) if T.is_singular(c)),
    )


def is_normal_form(G) -> bool:
    tables = G.tables if isinstance(G, GeneralisedTable) else (G,)
    return is_proper(G) and all(normal_form_report(t).empty for t in tables)


# ---------- Canonical form ----------

def singleton(label: int, d: int) -> Table:
    return Table((label,), ((d,),))


def _canonical_table(T: Table) -> Table:
    s = T.s
    order = list(range(s)) + sorted(
        range(s, T.n), key=lambda c: (T.entries[0][c], T.column(c), T.labels[c])
    )
    return Table(
        tuple(T.labels[c] for c in order),
        tuple(tuple(row[c] for c in order) for row in T.entries),
    )


def canonical_form(G: GeneralisedTable) -> GeneralisedTable:
    """Split (0,n)-tables into singletons, sort unconstrained columns and members."""
    members: List[Table] = []
    for t in G.tables:
        if t.s == 0:
            members.extend(singleton(label, d) for label, d in zip(t.labels, t.d))
        else:
            members.append(_canonical_table(t))
    members.sort(key=lambda t: min(t.labels))
    return GeneralisedTable(G.n_total, tuple(members))


def permute_unconstrained(T: Table, order: Sequence[int]) -> Table:
    """Reorder the unconstrained columns; ``order`` lists positions ``s..n-1``."""
    if sorted(order) != list(range(T.s, T.n)):
        raise ValueError(f"{list(order)} is not a permutation of the unconstrained columns")
    cols = list(range(T.s)) + list(order)
    return Table(tuple(T.labels[c] for c in cols), tuple(tuple(row[c] for c in cols) for row in T.entries))


def relabel(G: GeneralisedTable, perm: Sequence[int]) -> GeneralisedTable:
    """Rename variable ``t`` to ``perm[t]`` throughout."""
    return GeneralisedTable(
        G.n_total, tuple(Table(tuple(perm[l] for l in t.labels), t.entries) for t in G.tables)
    )


# ---------- JSON ----------

def table_to_json(T: Table) -> dict:
    return {"s": T.s, "labels": list(T.labels), "entries": [list(r) for r in T.entries]}


def table_from_json(obj, validate: bool = True) -> Table:
    if not isinstance(obj, dict) or "entries" not in obj or "labels" not in obj:
        raise ValueError('table JSON must be an object with "labels" and "entries"')
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ValueError('"entries" must be a list of rows')
    if "s" in obj and obj["s"] != len(entries) - 1:
        raise ValueError(f'"s" = {obj["s"]} does not match {len(entries)} rows')
    if validate:
        return validate_table(entries, obj["labels"])
    return Table(tuple(obj["labels"]), tuple(tuple(r) for r in entries))


def generalised_to_json(G: GeneralisedTable) -> dict:
    return {"n_total": G.n_total, "tables": [table_to_json(t) for t in G.tables]}


def generalised_from_json(obj, validate: bool = True) -> GeneralisedTable:
    """Accepts a generalised table, or a bare table (wrapped as a single member)."""
    if isinstance(obj, dict) and "tables" in obj:
        tables = tuple(table_from_json(t, validate) for t in obj["tables"])
        n_total = obj.get("n_total")
        if n_total is None:
            n_total = max(max(t.labels) for t in tables) + 1
        return GeneralisedTable(n_total, tables)
    T = table_from_json(obj, validate)
    return GeneralisedTable.single(T, obj.get("n_total") if isinstance(obj, dict) else None)
