"""Skew braces: the datatype, lambda/star calculus, ideal theory, series."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    CompatibilityFailure,
    InvariantViolation,
    NotIdeal,
    NotLeftIdeal,
    OrderMismatch,
)
from .groups import (
    GroupTable,
    Perm,
    Subset,
    all_subgroups,
    center,
    direct_product,
    element_orders,
    generating_set,
    identity_perm,
    is_normal,
    is_subgroup,
    perm_inverse,
    product_set,
    restricted_group,
    subgroup_generated,
    validate_group,
    _group_from_rows,
    _search_isomorphisms,
)


class SkewBrace:
    """Two group structures on one carrier, compatible in the brace sense.

    ``add`` and ``circ`` share the carrier 0..n-1 and the identity 0;
    ``lambdas[a]`` is the additive automorphism b -> -a + a.b.  Instances
    are immutable; build them through :func:`validate_brace`.
    """

    __slots__ = ("add", "circ", "lambdas", "_cache")

    def __init__(self, add: GroupTable, circ: GroupTable, lambdas: tuple[Perm, ...]):
        self.add = add
        self.circ = circ
        self.lambdas = lambdas
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return self.add.order

    def carrier(self) -> Subset:
        return tuple(range(self.order))

    def elements(self) -> range:
        return range(self.order)

    def plus(self, a: int, b: int) -> int:
        return self.add.table[a][b]

    def neg(self, a: int) -> int:
        return self.add.inv[a]

    def times(self, a: int, b: int) -> int:
        return self.circ.table[a][b]

    def circ_inverse(self, a: int) -> int:
        """The inverse a' of a in the multiplicative group."""
        return self.circ.inv[a]

    def lambda_of(self, a: int) -> Perm:
        return self.lambdas[a]

    def lambda_inverse_of(self, a: int) -> Perm:
        key = ("lambda_inv", a)
        if key not in self._cache:
            self._cache[key] = perm_inverse(self.lambdas[a])
        return self._cache[key]

    def star(self, a: int, b: int) -> int:
        """a*b = lambda_a(b) - b, the gap between the two operations."""
        return self.add.table[self.lambdas[a][b]][self.add.inv[b]]

    def is_trivial(self) -> bool:
        return self.add.table == self.circ.table

    def is_left_brace(self) -> bool:
        return self.add.is_abelian()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewBrace):
            return NotImplemented
        return self.add.table == other.add.table and self.circ.table == other.circ.table

    def __hash__(self) -> int:
        return hash((self.add.table, self.circ.table))

    def __repr__(self) -> str:
        return f"SkewBrace(order={self.order}, add={self.add.name or '?'}, circ={self.circ.name or '?'})"


def validate_brace(add: GroupTable, circ: GroupTable) -> SkewBrace:
    """Check the compatibility law a.(b+c) = a.b - a + a.c on all triples."""
    if add.order != circ.order:
        raise OrderMismatch(add.order, circ.order)
    n = add.order
    at, ct = add.table, circ.table
    ainv = add.inv
    for a in range(n):
        ca = ct[a]
        na = ainv[a]
        for b in range(n):
            ab_minus_a = at[ca[b]][na]
            row = at[ab_minus_a]
            ab_row = at[b]
            for c in range(n):
                if ca[ab_row[c]] != row[ca[c]]:
                    raise CompatibilityFailure(a, b, c)
    lambdas = tuple(
        tuple(at[ainv[a]][ct[a][b]] for b in range(n)) for a in range(n)
    )
    return SkewBrace(add, circ, lambdas)


def trivial_brace(g: GroupTable) -> SkewBrace:
    """The brace in which both operations coincide with g."""
    n = g.order
    lambdas = (identity_perm(n),) * n
    return SkewBrace(g, g, lambdas)


def brace_from_tables(add_rows: Sequence[Sequence[int]], circ_rows: Sequence[Sequence[int]]) -> SkewBrace:
    """Validate both Cayley tables and then the brace law."""
    return validate_brace(validate_group(add_rows), validate_group(circ_rows))


def _cached(A: SkewBrace, key, builder: Callable):
    try:
        return A._cache[key]
    except KeyError:
        value = builder()
        A._cache[key] = value
        return value


# ideal predicates ------------------------------------------------------------

def _is_left_ideal(A: SkewBrace, s: Subset) -> bool:
    members = set(s)
    if not is_subgroup(A.add, s):
        return False
    return all(lam[x] in members for lam in A.lambdas for x in s)


def _is_strong_left_ideal(A: SkewBrace, s: Subset) -> bool:
    return _is_left_ideal(A, s) and is_normal(A.add, s)


def _is_ideal(A: SkewBrace, s: Subset) -> bool:
    if not _is_strong_left_ideal(A, s):
        return False
    members = set(s)
    ct, cinv = A.circ.table, A.circ.inv
    return all(
        ct[ct[a][x]][cinv[a]] in members for a in A.elements() for x in s
    )


def _sub_is_trivial(A: SkewBrace, s: Subset) -> bool:
    """The induced sub-structure on s has + equal to the circle operation."""
    if not is_subgroup(A.add, s):
        return False
    at, ct = A.add.table, A.circ.table
    return all(at[a][b] == ct[a][b] for a in s for b in s)


@dataclass(frozen=True)
class IdealReport:
    """Classification flags for one subset of a brace's carrier."""

    subset: Subset
    is_subgroup: bool
    is_left_ideal: bool
    is_strong_left_ideal: bool
    is_ideal: bool
    is_trivial_subbrace: bool
    is_characteristic: bool


def classify_subset(A: SkewBrace, s: Iterable[int]) -> IdealReport:
    sub = tuple(sorted(set(s)))
    if not is_subgroup(A.add, sub):
        return IdealReport(sub, False, False, False, False, False, False)
    left = _is_left_ideal(A, sub)
    strong = left and is_normal(A.add, sub)
    ideal = strong and _is_ideal(A, sub)
    trivial = _sub_is_trivial(A, sub)
    characteristic = ideal and all(
        tuple(sorted(sigma[x] for x in sub)) == sub
        for sigma in brace_automorphisms(A)
    )
    return IdealReport(sub, True, left, strong, ideal, trivial, characteristic)


def left_ideals(A: SkewBrace) -> tuple[Subset, ...]:
    return _cached(
        A,
        "left_ideals",
        lambda: tuple(s for s in all_subgroups(A.add) if _is_left_ideal(A, s)),
    )


def strong_left_ideals(A: SkewBrace) -> tuple[Subset, ...]:
    return _cached(
        A,
        "strong_left_ideals",
        lambda: tuple(s for s in left_ideals(A) if is_normal(A.add, s)),
    )


def ideals(A: SkewBrace) -> tuple[Subset, ...]:
    return _cached(
        A,
        "ideals",
        lambda: tuple(s for s in strong_left_ideals(A) if _is_ideal(A, s)),
    )


# socle, fix, kernel ----------------------------------------------------------

def ker_lambda(A: SkewBrace) -> Subset:
    ident = identity_perm(A.order)
    return tuple(a for a in A.elements() if A.lambdas[a] == ident)


def fix(A: SkewBrace) -> Subset:
    """Elements fixed by every lambda_b; checked to be a left ideal."""
    def build() -> Subset:
        out = tuple(
            a for a in A.elements() if all(lam[a] == a for lam in A.lambdas)
        )
        if not _is_left_ideal(A, out):
            raise InvariantViolation("Fix(A) failed the left-ideal check")
        return out

    return _cached(A, "fix", build)


def socle(A: SkewBrace) -> Subset:
    """Ker(lambda) intersected with the additive center; checked to be an ideal."""
    def build() -> Subset:
        cen = set(center(A.add))
        out = tuple(a for a in ker_lambda(A) if a in cen)
        if not _is_ideal(A, out):
            raise InvariantViolation("Soc(A) failed the ideal check")
        return out

    return _cached(A, "socle", build)


# star products and the right series -----------------------------------------

def star_product(A: SkewBrace, xs: Iterable[int], ys: Iterable[int]) -> Subset:
    """Additive subgroup generated by all x*y with x in xs, y in ys."""
    gens = {A.star(x, y) for x in xs for y in ys}
    return subgroup_generated(A.add, gens)


def right_series(A: SkewBrace) -> tuple[Subset, ...]:
    """A^(1) >= A^(2) >= ... with A^(k) = A^(k-1) * A, up to stabilization."""
    def build() -> tuple[Subset, ...]:
        carrier = A.carrier()
        series = [carrier]
        seen = {carrier}
        while True:
            nxt = star_product(A, series[-1], carrier)
            if nxt == series[-1] or nxt in seen:
                break
            series.append(nxt)
            seen.add(nxt)
        return tuple(series)

    return _cached(A, "right_series", build)


def right_nilpotency_class(A: SkewBrace) -> Optional[int]:
    """m with A^(m) = 0 first, or None when the series stalls above zero."""
    series = right_series(A)
    return len(series) if series[-1] == (0,) else None


def is_meta_trivial(A: SkewBrace) -> bool:
    """A^(2) carries a trivial sub-brace."""
    a2 = star_product(A, A.carrier(), A.carrier())
    return _sub_is_trivial(A, a2)


# sub-braces and quotients ----------------------------------------------------

def sub_brace(A: SkewBrace, s: Iterable[int]) -> SkewBrace:
    sub = tuple(sorted(set(s)))
    if not _is_left_ideal(A, sub):
        raise NotLeftIdeal(sub)
    add = restricted_group(A.add, sub)
    circ = restricted_group(A.circ, sub)
    return validate_brace(add, circ)


def quotient(A: SkewBrace, ideal_subset: Iterable[int]) -> SkewBrace:
    """The quotient brace on additive cosets of an ideal, labeled by least reps."""
    sub = tuple(sorted(set(ideal_subset)))
    if not _is_ideal(A, sub):
        raise NotIdeal(sub)
    n = A.order
    at = A.add.table
    coset_of = [-1] * n
    reps = []
    for a in range(n):
        if coset_of[a] == -1:
            idx = len(reps)
            reps.append(a)
            for i in sub:
                coset_of[at[a][i]] = idx
    k = len(reps)
    add_rows = tuple(
        tuple(coset_of[at[reps[i]][reps[j]]] for j in range(k)) for i in range(k)
    )
    ct = A.circ.table
    circ_rows = tuple(
        tuple(coset_of[ct[reps[i]][reps[j]]] for j in range(k)) for i in range(k)
    )
    return brace_from_tables(add_rows, circ_rows)


def ideal_generated(A: SkewBrace, s: Iterable[int]) -> Subset:
    """Least ideal containing s: joint closure under +, both conjugations, lambda."""
    at, ct = A.add.table, A.circ.table
    ainv, cinv = A.add.inv, A.circ.inv
    cur = set(subgroup_generated(A.add, set(s)))
    while True:
        grown = set(cur)
        for a in A.elements():
            lam = A.lambdas[a]
            na, ca = ainv[a], cinv[a]
            for x in cur:
                grown.add(lam[x])
                grown.add(at[at[a][x]][na])
                grown.add(ct[ct[a][x]][ca])
        grown = set(subgroup_generated(A.add, grown))
        if grown == cur:
            return tuple(sorted(cur))
        cur = grown


# brace automorphisms and characteristic ideals -------------------------------

def brace_automorphisms(A: SkewBrace) -> tuple[Perm, ...]:
    """Bijections fixing 0 that preserve both tables, via generator images."""
    def build() -> tuple[Perm, ...]:
        n = A.order
        gens = generating_set(A.add)
        if not gens:
            return (identity_perm(n),)
        ao, co = element_orders(A.add), element_orders(A.circ)
        candidates = [
            tuple(b for b in A.elements() if ao[b] == ao[a] and co[b] == co[a])
            for a in gens
        ]
        found = _search_isomorphisms(
            (A.add.table, A.circ.table),
            (A.add.table, A.circ.table),
            gens,
            candidates,
            n,
            find_all=True,
        )
        return tuple(sorted(found))

    return _cached(A, "brace_automorphisms", build)


def characteristic_ideals(A: SkewBrace) -> tuple[Subset, ...]:
    autos = brace_automorphisms(A)
    out = []
    for s in ideals(A):
        if all(tuple(sorted(sigma[x] for x in s)) == s for sigma in autos):
            out.append(s)
    return tuple(out)


def is_characteristically_simple(A: SkewBrace) -> bool:
    if A.order == 1:
        return False
    return characteristic_ideals(A) == ((0,), A.carrier())


def is_simple(A: SkewBrace) -> bool:
    """No non-trivial proper ideals; the order-1 brace does not count."""
    if A.order == 1:
        return False
    return ideals(A) == ((0,), A.carrier())


# isomorphisms and products ---------------------------------------------------

def are_isomorphic_braces(A: SkewBrace, B: SkewBrace) -> Optional[Perm]:
    """A bijection preserving both operations, or None."""
    if A.order != B.order:
        return None
    pa = sorted(zip(element_orders(A.add), element_orders(A.circ)))
    pb = sorted(zip(element_orders(B.add), element_orders(B.circ)))
    if pa != pb:
        return None
    n = A.order
    gens = generating_set(A.add)
    if not gens:
        return identity_perm(n)
    ao, co = element_orders(A.add), element_orders(A.circ)
    bo, bco = element_orders(B.add), element_orders(B.circ)
    candidates = [
        tuple(b for b in B.elements() if bo[b] == ao[a] and bco[b] == co[a])
        for a in gens
    ]
    found = _search_isomorphisms(
        (A.add.table, A.circ.table),
        (B.add.table, B.circ.table),
        gens,
        candidates,
        n,
        find_all=False,
    )
    return found[0] if found else None


def direct_product_braces(braces: Sequence[SkewBrace]) -> SkewBrace:
    """Componentwise product; both tables use the same index pairing."""
    if not braces:
        raise ValueError("need at least one factor")
    acc = braces[0]
    for nxt in braces[1:]:
        add = direct_product(acc.add, nxt.add)
        circ = direct_product(acc.circ, nxt.circ)
        acc = validate_brace(add, circ)
    return acc


def minimal_ideals(A: SkewBrace) -> tuple[Subset, ...]:
    """Non-zero ideals containing no smaller non-zero ideal."""
    nonzero = [s for s in ideals(A) if len(s) > 1]
    out = []
    for s in nonzero:
        members = set(s)
        if not any(t != s and set(t) <= members for t in nonzero):
            out.append(s)
    return tuple(out)


def decompose_as_power_of_simple(A: SkewBrace) -> Optional[tuple[SkewBrace, int]]:
    """(S, k) with S simple and A isomorphic to S^k, searched among minimal ideals."""
    if A.order == 1:
        return None
    for candidate in minimal_ideals(A):
        size = len(candidate)
        if size < 2:
            continue
        total, k = size, 1
        while total < A.order:
            total *= size
            k += 1
        if total != A.order:
            continue
        simple = sub_brace(A, candidate)
        if not is_simple(simple):
            continue
        power = direct_product_braces([simple] * k)
        if are_isomorphic_braces(A, power) is not None:
            return simple, k
    return None
