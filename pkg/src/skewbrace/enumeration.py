"""Exhaustive construction of all skew braces of small order."""

from __future__ import annotations

import itertools
import os
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .errors import (
    GroupValidationError,
    CompatibilityFailure,
    InvalidInput,
    OrderCapExceeded,
    UnknownPredicate,
)
from .braces import (
    SkewBrace,
    are_isomorphic_braces,
    is_characteristically_simple,
    is_simple,
    right_nilpotency_class,
    validate_brace,
)
from .groups import (
    GroupTable,
    Perm,
    are_isomorphic,
    automorphisms,
    group_catalog,
    identity_perm,
    perm_compose,
    perm_inverse,
    validate_group,
)

DEFAULT_ORDER_CAP = 8
HARD_ORDER_CAP = 18
ORACLE_CAP = 6


def _effective_cap(cap: Optional[int]) -> int:
    if cap is None:
        cap = int(os.environ.get("SKB_ORDER_CAP", DEFAULT_ORDER_CAP))
    return min(cap, HARD_ORDER_CAP)


@dataclass(frozen=True)
class BraceCatalog:
    """All braces of one order, one entry per brace-isomorphism class."""

    order: int
    entries: tuple[SkewBrace, ...]
    provenance: str  # "holomorph" | "brute-force-oracle"

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


# regular subgroups of the holomorph, as lambda assignments -------------------

def _aut_composition(auts: Sequence[Perm]) -> tuple[dict[Perm, int], list[list[int]]]:
    index = {p: i for i, p in enumerate(auts)}
    comp = [
        [index[perm_compose(p, q)] for q in auts] for p in auts
    ]
    return index, comp


def regular_lambda_maps(add: GroupTable) -> list[tuple[int, ...]]:
    """Every regular subgroup of Hol(add), one per multiplicative structure.

    A regular subgroup is exactly a choice of automorphism lambda_a per
    carrier element with lambda_0 = id, closed in the holomorph:
    lambda_{a + lambda_a(b)} = lambda_a . lambda_b.  The search assigns
    the lowest unassigned element and propagates that closure constraint.
    Returned as tuples of indices into automorphisms(add).
    """
    n = add.order
    auts = automorphisms(add)
    aut_index, comp = _aut_composition(auts)
    id_idx = aut_index[identity_perm(n)]
    table = add.table
    results: list[tuple[int, ...]] = []

    def close(lam: list[Optional[int]], stack: list[int]) -> bool:
        while stack:
            x = stack.pop()
            known = [y for y in range(n) if lam[y] is not None]
            for y in known:
                for u, v in ((x, y), (y, x)):
                    lu = lam[u]
                    lv = lam[v]
                    c = table[u][auts[lu][v]]
                    need = comp[lu][lv]
                    cur = lam[c]
                    if cur is None:
                        lam[c] = need
                        stack.append(c)
                    elif cur != need:
                        return False
        return True

    def search(lam: list[Optional[int]]) -> None:
        try:
            a = lam.index(None)
        except ValueError:
            results.append(tuple(lam))  # type: ignore[arg-type]
            return
        for phi in range(len(auts)):
            trial = lam.copy()
            trial[a] = phi
            if close(trial, [a]):
                search(trial)

    start: list[Optional[int]] = [None] * n
    start[0] = id_idx
    search(start)
    return results


def _circ_rows_from_lambda(add: GroupTable, auts: Sequence[Perm], lam: Sequence[int]):
    table = add.table
    return tuple(
        tuple(table[a][auts[lam[a]][b]] for b in range(add.order))
        for a in range(add.order)
    )


def regular_subgroup_orbits(add: GroupTable) -> list[tuple[SkewBrace, int]]:
    """Brace-isomorphism classes on this additive group with orbit sizes.

    Regular subgroups conjugate under Aut(add) inside the holomorph give
    isomorphic braces and vice versa, so classes are Aut-orbits; each
    representative is the member with the lexicographically least circle
    table.  The returned orbit sizes sum to the raw regular-subgroup count.
    """
    n = add.order
    auts = automorphisms(add)
    aut_index, comp = _aut_composition(auts)
    inv_of = [aut_index[perm_inverse(p)] for p in auts]
    raw = regular_lambda_maps(add)
    raw_set = set(raw)
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[SkewBrace, int]] = []
    for lam in raw:
        if lam in seen:
            continue
        orbit = set()
        for ai in range(len(auts)):
            alpha = auts[ai]
            ai_inv = inv_of[ai]
            alpha_inv = auts[ai_inv]
            conj = tuple(
                comp[comp[ai][lam[alpha_inv[x]]]][ai_inv] for x in range(n)
            )
            orbit.add(conj)
        if not orbit <= raw_set:
            raise InvalidInput("internal: Aut-conjugate of a regular subgroup escaped the search")
        seen |= orbit
        best = min(_circ_rows_from_lambda(add, auts, member) for member in orbit)
        brace = validate_brace(add, validate_group(best))
        out.append((brace, len(orbit)))
    out.sort(key=lambda pair: pair[0].circ.table)
    return out


def skew_braces_on(add: GroupTable, cap: Optional[int] = None) -> tuple[SkewBrace, ...]:
    """All skew braces with this additive group, up to brace isomorphism."""
    cap_value = _effective_cap(cap)
    if add.order > cap_value:
        raise OrderCapExceeded(add.order, cap_value)
    if add.order > DEFAULT_ORDER_CAP:
        warnings.warn(
            f"enumerating braces of order {add.order}; this can take minutes",
            stacklevel=2,
        )
    return tuple(brace for brace, _ in regular_subgroup_orbits(add))


@lru_cache(maxsize=None)
def braces_of_order(n: int, cap: Optional[int] = None) -> BraceCatalog:
    """Union of skew_braces_on over the group catalog at order n.

    Catalog groups are pairwise non-isomorphic, so braces found on
    different additive groups are never brace-isomorphic and the
    per-group deduplication is already global.
    """
    cap_value = _effective_cap(cap)
    if n > cap_value:
        raise OrderCapExceeded(n, cap_value)
    entries: list[SkewBrace] = []
    for g in group_catalog(n):
        entries.extend(skew_braces_on(g, cap_value))
    return BraceCatalog(n, tuple(entries), "holomorph")


# independent oracle ----------------------------------------------------------

@lru_cache(maxsize=None)
def brute_force_oracle(n: int) -> BraceCatalog:
    """Exhaustive check of every conceivable circle table, for n <= 6.

    Any table passing validate_brace must have rows of the form
    b -> a + alpha(b) with alpha an additive automorphism (that is what
    the compatibility law says), so the candidate space is all tuples of
    automorphisms; each candidate still goes through the full group and
    brace validation.  Deduplication is by pairwise isomorphism search,
    independent of the holomorph method's orbit bookkeeping.
    """
    if n > ORACLE_CAP:
        raise OrderCapExceeded(n, ORACLE_CAP)
    classes: list[SkewBrace] = []
    for add in group_catalog(n):
        auts = automorphisms(add)
        table = add.table
        for lams in itertools.product(range(len(auts)), repeat=n - 1):
            rows = [tuple(range(n))]
            rows.extend(
                tuple(table[a][auts[lams[a - 1]][b]] for b in range(n))
                for a in range(1, n)
            )
            try:
                circ = validate_group(tuple(rows))
                brace = validate_brace(add, circ)
            except (GroupValidationError, CompatibilityFailure):
                continue
            if all(are_isomorphic_braces(brace, k) is None for k in classes):
                classes.append(brace)
    return BraceCatalog(n, tuple(classes), "brute-force-oracle")


# catalog queries --------------------------------------------------------------

def _resolve_group(value: Union[GroupTable, str], order: int) -> GroupTable:
    if isinstance(value, GroupTable):
        return value
    for g in group_catalog(order):
        if g.name == value:
            return g
    raise InvalidInput(f"no catalog group of order {order} named {value!r}")


def catalog_query(cat: BraceCatalog, **predicates) -> list[SkewBrace]:
    """Filter a catalog by named predicates.

    Supported names: add_iso, mult_iso (GroupTable or catalog name),
    simple, right_nilpotent, right_class, is_trivial,
    trivial_trivial_factorization, characteristically_simple.
    """
    from .factorizations import find_factorizations

    known = {
        "add_iso",
        "mult_iso",
        "simple",
        "right_nilpotent",
        "right_class",
        "is_trivial",
        "trivial_trivial_factorization",
        "characteristically_simple",
    }
    for name in predicates:
        if name not in known:
            raise UnknownPredicate(name)

    out = []
    for brace in cat.entries:
        if "add_iso" in predicates:
            target = _resolve_group(predicates["add_iso"], cat.order)
            if are_isomorphic(brace.add, target) is None:
                continue
        if "mult_iso" in predicates:
            target = _resolve_group(predicates["mult_iso"], cat.order)
            if are_isomorphic(brace.circ, target) is None:
                continue
        if "simple" in predicates and is_simple(brace) != predicates["simple"]:
            continue
        if "right_nilpotent" in predicates:
            if (right_nilpotency_class(brace) is not None) != predicates["right_nilpotent"]:
                continue
        if "right_class" in predicates:
            if right_nilpotency_class(brace) != predicates["right_class"]:
                continue
        if "is_trivial" in predicates and brace.is_trivial() != predicates["is_trivial"]:
            continue
        if "trivial_trivial_factorization" in predicates:
            has = bool(find_factorizations(brace, require_trivial=(True, True)))
            if has != predicates["trivial_trivial_factorization"]:
                continue
        if "characteristically_simple" in predicates:
            if is_characteristically_simple(brace) != predicates["characteristically_simple"]:
                continue
        out.append(brace)
    return out
