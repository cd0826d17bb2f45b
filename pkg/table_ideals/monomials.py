"""Exact arithmetic on monomials and monomial ideals.

A monomial is a tuple of non-negative Python ints (its exponent vector,
variable ``x_{t+1}`` at position ``t``). A :class:`MonomialIdeal` keeps a
de-duplicated generating set in first-seen order; minimalization is an
explicit step because non-minimal generating sets (as produced by the
table construction) are meaningful downstream.

The unit ideal is represented by the single all-zero generator.
"""

from dataclasses import dataclass
from math import prod
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .config import STANDARD_MONOMIAL_CAP

Monomial = Tuple[int, ...]


class CapExceededError(RuntimeError):
    """Standard-monomial enumeration would exceed the configured cap."""

    def __init__(self, cap: int, estimate: int):
        self.cap = cap
        self.estimate = estimate
        super().__init__(
            f"quotient has more than {cap} standard monomials "
            f"(upper bound from pure powers: {estimate}); raise --cap to force"
        )


def monomial(exponents: Iterable[int]) -> Monomial:
    m = tuple(int(e) for e in exponents)
    if any(e < 0 for e in m):
        raise ValueError(f"negative exponent in {m}")
    return m


def unit_monomial(n: int) -> Monomial:
    return (0,) * n


def is_unit_monomial(m: Monomial) -> bool:
    return not any(m)


def degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> FrozenSet[int]:
    return frozenset(t for t, e in enumerate(m) if e > 0)


def divides(a: Monomial, b: Monomial) -> bool:
    if len(a) != len(b):
        raise ValueError(f"exponent length mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def revlex_key(m: Monomial) -> Tuple[int, ...]:
    """Sort key for the reverse-lexicographic generator order.

    Vectors are compared from the last coordinate to the first and the
    larger exponent sorts first, so use with ``reverse=True``.
    """
    return tuple(reversed(m))


def sort_revlex(gens: Iterable[Monomial]) -> List[Monomial]:
    return sorted(gens, key=revlex_key, reverse=True)


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: Tuple[Monomial, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"variable count must be non-negative, got {self.n}")
        gens = []
        for g in self.generators:
            g = monomial(g)
            if len(g) != self.n:
                raise ValueError(f"generator {g} has length {len(g)}, expected {self.n}")
            gens.append(g)
        gens = list(dict.fromkeys(gens))
        if any(is_unit_monomial(g) for g in gens):
            gens = [unit_monomial(self.n)]
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, n: int, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return cls(n, tuple(tuple(g) for g in gens))

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and is_unit_monomial(self.generators[0])

    def __len__(self) -> int:
        return len(self.generators)


def _check_same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.n != J.n:
        raise ValueError(f"ideals live in different rings: n={I.n} vs n={J.n}")


def minimalize(I: MonomialIdeal) -> MonomialIdeal:
    """Return the unique minimal generating set, in input order."""
    by_degree = sorted(I.generators, key=degree)
    kept: List[Monomial] = []
    for g in by_degree:
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    keep = set(kept)
    return MonomialIdeal(I.n, tuple(g for g in I.generators if g in keep))


def colon_by_monomial(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    if len(m) != I.n:
        raise ValueError(f"monomial {m} has length {len(m)}, ideal has n={I.n}")
    quotients = tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in I.generators)
    return minimalize(MonomialIdeal(I.n, quotients))


def is_pure_power(m: Monomial) -> bool:
    return len(support(m)) == 1


def pure_power_exponents(I: MonomialIdeal) -> Dict[int, int]:
    """Map variable -> exponent of its pure power among the minimal generators."""
    out: Dict[int, int] = {}
    for g in minimalize(I).generators:
        supp = support(g)
        if len(supp) == 1:
            (t,) = supp
            out[t] = g[t]
    return out


def is_artinian(I: MonomialIdeal) -> bool:
    if I.is_unit():
        return True
    return len(pure_power_exponents(I)) == I.n


def standard_monomials(I: MonomialIdeal, cap: int = STANDARD_MONOMIAL_CAP) -> List[Monomial]:
    """Enumerate the monomials divisible by no generator of an Artinian ideal.

    The standard monomials form an order ideal, so the walk assigns
    exponents variable by variable and abandons a branch as soon as the
    partial monomial is already in the ideal.
    """
    if I.is_unit():
        return []
    if not is_artinian(I):
        raise ValueError("ideal is not Artinian; the quotient is infinite-dimensional")
    gens = minimalize(I).generators
    n = I.n
    bound = prod(pure_power_exponents(I).values())
    out: List[Monomial] = []
    exps = [0] * n

    def in_ideal() -> bool:
        return any(all(g[t] <= exps[t] for t in range(n)) for g in gens)

    def walk(t: int):
        if t == n:
            if len(out) >= cap:
                raise CapExceededError(cap, bound)
            out.append(tuple(exps))
            return
        e = 0
        while True:
            exps[t] = e
            if in_ideal():
                break
            walk(t + 1)
            e += 1
        exps[t] = 0

    walk(0)
    return out


def hilbert_function(I: MonomialIdeal, cap: int = STANDARD_MONOMIAL_CAP) -> Tuple[int, ...]:
    """Return (dim A_0, ..., dim A_c) of the quotient by an Artinian ideal."""
    if I.is_unit():
        return ()
    counts: Dict[int, int] = {}
    for m in standard_monomials(I, cap):
        counts[degree(m)] = counts.get(degree(m), 0) + 1
    top = max(counts)
    values = [counts.get(i, 0) for i in range(top + 1)]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def equal_ideals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _check_same_ring(I, J)
    return set(minimalize(I).generators) == set(minimalize(J).generators)


def permute_variables(I: MonomialIdeal, perm: Sequence[int]) -> MonomialIdeal:
    """Rename variable ``t`` to ``perm[t]``."""
    if sorted(perm) != list(range(I.n)):
        raise ValueError(f"{list(perm)} is not a permutation of range({I.n})")
    gens = []
    for g in I.generators:
        out = [0] * I.n
        for t, e in enumerate(g):
            out[perm[t]] = e
        gens.append(tuple(out))
    return MonomialIdeal(I.n, tuple(gens))


def restrict_to_variables(I: MonomialIdeal, variables: Sequence[int]) -> MonomialIdeal:
    """Generators supported inside ``variables``, re-indexed to 0..len-1."""
    keep = set(variables)
    gens = tuple(
        tuple(g[t] for t in variables) for g in I.generators if support(g) <= keep
    )
    return MonomialIdeal(len(variables), gens)


# ---------- JSON ----------

def ideal_to_json(I: MonomialIdeal, canonical: bool = True) -> dict:
    gens = sort_revlex(I.generators) if canonical else list(I.generators)
    return {"n": I.n, "generators": [list(g) for g in gens]}


def ideal_from_json(obj) -> MonomialIdeal:
    if not isinstance(obj, dict) or "n" not in obj or "generators" not in obj:
        raise ValueError('ideal JSON must be an object with "n" and "generators"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f'"n" must be an integer, got {n!r}')
    gens = obj["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise ValueError('"generators" must be a list of exponent lists')
    for g in gens:
        if not all(isinstance(e, int) and not isinstance(e, bool) for e in g):
            raise ValueError(f"generator {g!r} holds a non-integer exponent")
    return MonomialIdeal.of(n, gens)
