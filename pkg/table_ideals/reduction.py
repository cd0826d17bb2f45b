"""Reduce a generalised table to the normal form of its ideal.

Each member table is rewritten by four rules until none applies:

1. cut at the first zero diagonal ``alpha_{i,i} = 0`` (rows i..s go away);
2. split an all-zero unconstrained column off as a ``(0,1)``-table;
3. remove a singularity in an unconstrained column by folding the last
   colour into the previous one (or into ``d_1`` when ``s = 1``);
4. remove a singularity in a constrained column ``i`` by moving the
   column to the end and folding row ``i`` into row ``i-1`` (or out of
   row 0 when ``i = 1``).

Rules are tried in the order 1, 4, 3, 2. Every rule keeps ``K(T)``
unchanged; the final ideal is compared with the input all the same.
"""

from typing import List, Optional

from .config import DEBUG
from .monomials import equal_ideals
from .tables import (
    GeneralisedTable,
    ImproperTableError,
    Table,
    canonical_form,
    check_table_conditions,
    generalised_generators,
    normal_form_report,
    singleton,
)


def _rows(T: Table) -> List[List[int]]:
    return [list(r) for r in T.entries]


def cut_at_zero_diagonal(T: Table, i: int) -> Table:
    """Rule 1: keep rows ``0..i-1``."""
    return Table(T.labels, T.entries[:i])


def split_zero_column(T: Table, c: int) -> List[Table]:
    """Rule 2: ``c`` must be unconstrained with no alphas."""
    if T.n - 1 <= T.s:
        raise RuntimeError(f"zero column {c} cannot be split from a ({T.s},{T.n})-table")
    keep = [k for k in range(T.n) if k != c]
    rest = Table(tuple(T.labels[k] for k in keep), tuple(tuple(r[k] for k in keep) for r in T.entries))
    return [rest, singleton(T.labels[c], T.entries[0][c])]


def fold_last_colour(T: Table) -> Table:
    """One step of rule 3."""
    s = T.s
    rows = _rows(T)
    if s == 1:
        rows[0][0] -= rows[1][0]
    else:
        rows[s - 1][s - 1] += rows[s][s - 1]
    return Table(T.labels, tuple(tuple(r) for r in rows[:s]))


def remove_unconstrained_singularity(T: Table, c: int) -> Table:
    """Rule 3, repeated while column ``c`` stays singular (at most ``s`` times)."""
    bound = T.s
    steps = 0
    while T.s > 0 and T.is_singular(c):
        if steps >= bound:
            raise RuntimeError(f"singularity in column {c} survived {bound} folds")
        T = fold_last_colour(T)
        steps += 1
    return T


def remove_constrained_singularity(T: Table, i: int) -> Table:
    """Rule 4 for the singular constrained column at row ``i`` (column ``i-1``)."""
    c = i - 1
    rows = _rows(T)
    for j in range(c + 1, T.n):
        if i == 1:
            rows[0][j] -= rows[1][j]
        else:
            rows[i - 1][j] += rows[i][j]
    del rows[i]
    order = [k for k in range(T.n) if k != c] + [c]
    return Table(tuple(T.labels[k] for k in order), tuple(tuple(r[k] for k in order) for r in rows))


def reduce_step(T: Table) -> Optional[List[Table]]:
    """Apply the first applicable rule; ``None`` when ``T`` is already in normal form."""
    if T.s == 0:
        return None
    report = normal_form_report(T)
    if report.diag_zeros:
        i = report.diag_zeros[0]
        if DEBUG:
            print(f"[DEBUG] rule 1: cut labels={list(T.labels)} at row {i}")
        return [cut_at_zero_diagonal(T, i)]
    constrained = [c for c in report.singular_columns if c < T.s]
    if constrained:
        i = constrained[0] + 1
        if DEBUG:
            print(f"[DEBUG] rule 4: constrained singularity at column {constrained[0]} of labels={list(T.labels)}")
        return [remove_constrained_singularity(T, i)]
    if report.singular_columns:
        c = report.singular_columns[0]
        if DEBUG:
            print(f"[DEBUG] rule 3: unconstrained singularity at column {c} of labels={list(T.labels)}")
        return [remove_unconstrained_singularity(T, c)]
    if report.almost_zero_columns:
        c = report.almost_zero_columns[0]
        if DEBUG:
            print(f"[DEBUG] rule 2: split zero column {c} of labels={list(T.labels)}")
        return split_zero_column(T, c)
    return None


def reduce_to_normal_form(G: GeneralisedTable) -> GeneralisedTable:
    """Return the canonical normal form of ``G``; the ideal is unchanged.

    Raises :class:`ImproperTableError` when ``G`` generates the unit ideal.
    """
    before = generalised_generators(G)
    if before.is_unit():
        raise ImproperTableError("generalised table is improper (generates the unit ideal)")

    queue = list(G.tables)
    done: List[Table] = []
    while queue:
        T = queue.pop(0)
        produced = reduce_step(T)
        if produced is None:
            done.append(T)
            continue
        for t in produced:
            violations = check_table_conditions(t)
            if violations:
                raise RuntimeError(f"reduction produced an invalid table: {violations[0]['message']}")
        queue = produced + queue

    out = canonical_form(GeneralisedTable(G.n_total, tuple(done)))
    if not equal_ideals(before, generalised_generators(out)):
        raise RuntimeError("reduction changed the ideal")
    return out
