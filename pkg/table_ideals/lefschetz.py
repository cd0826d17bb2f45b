"""Socle degree, Hilbert symmetry and the strong Lefschetz check.

``check_slp`` works over the standard-monomial basis of ``A = k[x]/I``.
Multiplication by ``l^d`` with ``l = x_1 + ... + x_n`` sends a basis
monomial ``m`` to ``sum multinomial(d; u - m) * u`` over basis monomials
``u >= m`` of degree ``deg m + d``; non-standard monomials are zero in
``A``. Each map is ranked over GF(p) first; only maps that look
rank-deficient there are re-ranked exactly over the rationals.
"""

from math import comb
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .config import DEBUG, STANDARD_MONOMIAL_CAP
from .monomials import Monomial, MonomialIdeal, degree, hilbert_function, standard_monomials
from .tables import GeneralisedTable, ImproperTableError, Table, generalised_generators, generators

PRIME = 2**31 - 1


class SLPResult(NamedTuple):
    passed: bool
    failure: Optional[Tuple[int, int]]


def max_socle_degree(T: Table) -> int:
    """``d_1 + ... + d_n - alpha_{1,1} - n`` (``alpha_{1,1} := 0`` for s = 0)."""
    if generators(T).is_unit():
        raise ImproperTableError(f"table on labels {list(T.labels)} is improper")
    alpha_11 = T.entries[1][0] if T.s > 0 else 0
    return sum(T.d) - alpha_11 - T.n


def hilbert_is_symmetric(I: MonomialIdeal, cap: int = STANDARD_MONOMIAL_CAP) -> bool:
    h = hilbert_function(I, cap)
    return h == h[::-1]


def multinomial(exps) -> int:
    out, total = 1, 0
    for e in exps:
        total += e
        out *= comb(total, e)
    return out


def _rank_mod_p(rows: List[List[int]], p: int = PRIME) -> int:
    A = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
    m, n = A.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, :] = (A[r, :] * inv) % p
        f = A[r + 1 :, c].copy()
        A[r + 1 :, :] = (A[r + 1 :, :] - (np.outer(f, A[r, :]) % p)) % p
        r += 1
        if r == m:
            break
    return r


def _rank_exact(rows: List[List[int]]) -> int:
    shape = (len(rows), len(rows[0]))
    M = DomainMatrix([[ZZ(x) for x in r] for r in rows], shape, ZZ)
    return M.convert_to(QQ).rank()


def matrix_rank(rows: List[List[int]]) -> int:
    """Rank over Q; full rank mod p already implies full rank over Q."""
    if not rows or not rows[0]:
        return 0
    r = _rank_mod_p(rows)
    if r == min(len(rows), len(rows[0])):
        return r
    return _rank_exact(rows)


def multiplication_matrix(source: List[Monomial], target: List[Monomial]) -> List[List[int]]:
    """Rows indexed by ``target``, columns by ``source``; all targets share one degree."""
    rows = []
    for u in target:
        row = []
        for m in source:
            diff = [a - b for a, b in zip(u, m)]
            row.append(multinomial(diff) if min(diff) >= 0 else 0)
        rows.append(row)
    return rows


def check_slp(
    T: Union[Table, GeneralisedTable, MonomialIdeal], cap: int = STANDARD_MONOMIAL_CAP
) -> SLPResult:
    """Check that every ``x l^d: A_i -> A_{i+d}`` has full rank for ``l`` the sum of variables.

    Raises :class:`~table_ideals.monomials.CapExceededError` when the
    quotient has more than ``cap`` standard monomials.
    """
    if isinstance(T, Table):
        I = generators(T)
    elif isinstance(T, GeneralisedTable):
        I = generalised_generators(T)
    else:
        I = T
    if I.is_unit():
        raise ImproperTableError("the quotient is the zero ring")

    by_degree: Dict[int, List[Monomial]] = {}
    for m in standard_monomials(I, cap):
        by_degree.setdefault(degree(m), []).append(m)
    c = max(by_degree)

    for d in range(1, c):
        for i in range(0, c - d + 1):
            source, target = by_degree.get(i, []), by_degree.get(i + d, [])
            if not source or not target:
                continue
            rows = multiplication_matrix(source, target)
            full = min(len(source), len(target))
            if matrix_rank(rows) < full:
                if DEBUG:
                    print(f"[DEBUG] x l^{d}: A_{i} -> A_{i + d} is not of full rank ({len(target)}x{len(source)})")
                return SLPResult(False, (d, i))
    return SLPResult(True, None)
