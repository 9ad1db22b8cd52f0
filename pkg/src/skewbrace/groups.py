"""Finite group arithmetic on Cayley tables over 0..n-1 with identity 0."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidInput,
    MissingInverse,
    NoIdentityAtZero,
    NonAssociative,
    NotASubgroup,
    NotLatinSquare,
    UnsupportedOrder,
)

Perm = tuple[int, ...]
Subset = tuple[int, ...]


# permutations ---------------------------------------------------------------

def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """p after q: (p.q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_permutation(images: Sequence[int], n: int) -> bool:
    return len(images) == n and sorted(images) == list(range(n))


def orbits(perms: Sequence[Perm], n: int) -> tuple[Subset, ...]:
    """Orbit partition of 0..n-1 under the group generated by perms.

    Blocks are sorted tuples, ordered by their least element.
    """
    for p in perms:
        if not is_permutation(p, n):
            raise InvalidInput(f"{p} is not a permutation of 0..{n - 1}")
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        block = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for p in perms:
                y = p[x]
                if not seen[y]:
                    seen[y] = True
                    block.append(y)
                    stack.append(y)
        blocks.append(tuple(sorted(block)))
    return tuple(blocks)


# the group type -------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    """A finite group on the carrier 0..order-1 with table[a][b] = a*b.

    Element 0 is always the identity; ``inv[a]`` is the two-sided inverse.
    Instances are immutable and hashable, so derived data is cached in
    module-level ``lru_cache`` functions keyed on the table itself.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = field(default="", compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def neg(self, a: int) -> int:
        return self.inv[a]

    def conj(self, a: int, x: int) -> int:
        """a * x * a^-1."""
        return self.table[self.table[a][x]][self.inv[a]]

    def elements(self) -> range:
        return range(self.order)

    def carrier(self) -> Subset:
        return tuple(range(self.order))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements() for b in self.elements())

    def with_name(self, name: str) -> "GroupTable":
        return GroupTable(self.order, self.table, self.inv, name)


def _group_from_rows(rows: Sequence[Sequence[int]], name: str = "") -> GroupTable:
    """Trusted constructor: computes inverses, skips the axiom checks."""
    table = tuple(tuple(row) for row in rows)
    inv = tuple(row.index(0) for row in table)
    return GroupTable(len(table), table, inv, name)


def validate_group(table: Sequence[Sequence[int]], name: str = "") -> GroupTable:
    """Check all group axioms on a raw table and return it as a GroupTable.

    The identity must already sit at index 0; use the file loader to
    relabel tables whose identity lives elsewhere.
    """
    rows = tuple(tuple(int(x) for x in row) for row in table)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise InvalidInput("table must be a non-empty square matrix")
    for i, row in enumerate(rows):
        for x in row:
            if not 0 <= x < n:
                raise InvalidInput(f"row {i} has an entry outside 0..{n - 1}")
    for i, row in enumerate(rows):
        if len(set(row)) != n:
            raise NotLatinSquare("row", i)
    for j in range(n):
        if len({rows[i][j] for i in range(n)}) != n:
            raise NotLatinSquare("column", j)
    if any(rows[0][b] != b for b in range(n)) or any(rows[a][0] != a for a in range(n)):
        raise NoIdentityAtZero()
    inv = []
    for a in range(n):
        b = rows[a].index(0)
        if rows[b][a] != 0:
            raise MissingInverse(a)
        inv.append(b)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NonAssociative(a, b, c)
    return GroupTable(n, rows, tuple(inv), name)


# constructors ---------------------------------------------------------------

def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise InvalidInput("group order must be positive")
    rows = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return _group_from_rows(rows, f"C{n}")


def direct_product(g: GroupTable, h: GroupTable, name: str = "") -> GroupTable:
    """Direct product with element (a, b) encoded as a*|h| + b."""
    m = h.order
    n = g.order * m
    rows = [[0] * n for _ in range(n)]
    for a1 in range(g.order):
        for b1 in range(m):
            row = rows[a1 * m + b1]
            ga, hb = g.table[a1], h.table[b1]
            for a2 in range(g.order):
                base = ga[a2] * m
                for b2 in range(m):
                    row[a2 * m + b2] = base + hb[b2]
    label = name or (f"{g.name}x{h.name}" if g.name and h.name else "")
    return _group_from_rows(tuple(map(tuple, rows)), label)


def abelian_group(factors: Sequence[int]) -> GroupTable:
    """Direct product of cyclic groups of the given orders."""
    if not factors:
        return cyclic_group(1)
    g = cyclic_group(factors[0])
    for d in factors[1:]:
        g = direct_product(g, cyclic_group(d))
    return g.with_name("x".join(f"C{d}" for d in factors))


def dihedral_group(order: int) -> GroupTable:
    """Dihedral group of the given (even) order, on m rotations + m flips."""
    if order < 2 or order % 2:
        raise InvalidInput("dihedral order must be even and >= 2")
    m = order // 2
    rows = [[0] * order for _ in range(order)]
    for a in range(m):
        for s in (0, 1):
            row = rows[s * m + a]
            for b in range(m):
                for t in (0, 1):
                    c = (a + b) % m if s == 0 else (a - b) % m
                    row[t * m + b] = ((s + t) % 2) * m + c
    return _group_from_rows(tuple(map(tuple, rows)), f"D{order}")


def dicyclic_group(order: int) -> GroupTable:
    """Dicyclic group of order 4m: <a, b | a^(2m)=1, b^2=a^m, bab^-1=a^-1>."""
    if order < 4 or order % 4:
        raise InvalidInput("dicyclic order must be a positive multiple of 4")
    two_m = order // 2
    m = order // 4
    rows = [[0] * order for _ in range(order)]
    for k in range(two_m):
        for s in (0, 1):
            row = rows[s * two_m + k]
            for l in range(two_m):
                for t in (0, 1):
                    if s == 0:
                        row[t * two_m + l] = t * two_m + (k + l) % two_m
                    elif t == 0:
                        row[l] = two_m + (k - l) % two_m
                    else:
                        row[two_m + l] = (k - l + m) % two_m
    name = "Q8" if order == 8 else f"Dic{m}"
    return _group_from_rows(tuple(map(tuple, rows)), name)


def _perm_table(perms: Sequence[Perm], name: str) -> GroupTable:
    index = {p: i for i, p in enumerate(perms)}
    rows = tuple(
        tuple(index[perm_compose(p, q)] for q in perms) for p in perms
    )
    return _group_from_rows(rows, name)


def symmetric_group(n: int) -> GroupTable:
    """S_n on lexicographically ordered permutation tuples (identity first)."""
    perms = sorted(itertools.permutations(range(n)))
    return _perm_table(perms, f"S{n}")


def _perm_sign(p: Perm) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternating_group(n: int) -> GroupTable:
    perms = sorted(p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1)
    return _perm_table(perms, f"A{n}")


def semidirect_product(
    n_grp: GroupTable, h_grp: GroupTable, action: Sequence[Perm], name: str = ""
) -> GroupTable:
    """Semidirect product N x| H for a homomorphism H -> Aut(N).

    ``action[h]`` is the automorphism of N applied by h; the pair (x, h)
    is encoded as x*|H| + h.
    """
    if len(action) != h_grp.order:
        raise InvalidInput("need one automorphism of N per element of H")
    for h in h_grp.elements():
        if tuple(action[h]) not in automorphisms(n_grp):
            raise InvalidInput(f"action[{h}] is not an automorphism of N")
    for h1 in h_grp.elements():
        for h2 in h_grp.elements():
            if perm_compose(tuple(action[h1]), tuple(action[h2])) != tuple(
                action[h_grp.table[h1][h2]]
            ):
                raise InvalidInput("action is not a homomorphism H -> Aut(N)")
    m = h_grp.order
    size = n_grp.order * m
    rows = [[0] * size for _ in range(size)]
    for x1 in range(n_grp.order):
        for h1 in range(m):
            row = rows[x1 * m + h1]
            phi = action[h1]
            for x2 in range(n_grp.order):
                for h2 in range(m):
                    row[x2 * m + h2] = n_grp.table[x1][phi[x2]] * m + h_grp.table[h1][h2]
    return _group_from_rows(tuple(map(tuple, rows)), name)


@lru_cache(maxsize=None)
def group_catalog(n: int) -> tuple[GroupTable, ...]:
    """One representative per isomorphism class of groups of order n <= 12."""
    if not 1 <= n <= 12:
        raise UnsupportedOrder(n)
    if n == 1:
        return (cyclic_group(1),)
    table: dict[int, tuple[GroupTable, ...]] = {
        2: (cyclic_group(2),),
        3: (cyclic_group(3),),
        4: (cyclic_group(4), abelian_group([2, 2])),
        5: (cyclic_group(5),),
        6: (cyclic_group(6), symmetric_group(3)),
        7: (cyclic_group(7),),
        8: (
            cyclic_group(8),
            abelian_group([2, 4]),
            abelian_group([2, 2, 2]),
            dihedral_group(8),
            dicyclic_group(8),
        ),
        9: (cyclic_group(9), abelian_group([3, 3])),
        10: (cyclic_group(10), dihedral_group(10)),
        11: (cyclic_group(11),),
        12: (
            cyclic_group(12),
            abelian_group([2, 6]),
            dihedral_group(12),
            alternating_group(4),
            dicyclic_group(12),
        ),
    }
    return table[n]


def identify_group(g: GroupTable) -> Optional[str]:
    """Name of the isomorphism class from the catalog, or None above order 12."""
    if not 1 <= g.order <= 12:
        return None
    for h in group_catalog(g.order):
        if are_isomorphic(g, h) is not None:
            return h.name
    return None


# subgroup machinery ---------------------------------------------------------

def is_subgroup(g: GroupTable, s: Iterable[int]) -> bool:
    es = set(s)
    if not es or any(not 0 <= x < g.order for x in es) or 0 not in es:
        return False
    table = g.table
    for a in es:
        if g.inv[a] not in es:
            return False
        for b in es:
            if table[a][b] not in es:
                return False
    return True


def subgroup_generated(g: GroupTable, gens: Iterable[int]) -> Subset:
    """Closure of gens (plus 0) under product; inverses come for free."""
    table = g.table
    elems = {0}
    stack = [0]
    for x in gens:
        if x not in elems:
            if not 0 <= x < g.order:
                raise InvalidInput(f"generator {x} outside the carrier")
            elems.add(x)
            stack.append(x)
    while stack:
        a = stack.pop()
        for b in tuple(elems):
            for c in (table[a][b], table[b][a]):
                if c not in elems:
                    elems.add(c)
                    stack.append(c)
    return tuple(sorted(elems))


@lru_cache(maxsize=None)
def all_subgroups(g: GroupTable) -> tuple[Subset, ...]:
    """Every subgroup exactly once, by closure-driven generator additions."""
    found = {(0,) if g.order else ()}
    frontier = [(0,)]
    while frontier:
        h = frontier.pop()
        members = set(h)
        for x in g.elements():
            if x in members:
                continue
            k = subgroup_generated(g, h + (x,))
            if k not in found:
                found.add(k)
                frontier.append(k)
    return tuple(sorted(found, key=lambda s: (len(s), s)))


def is_normal(g: GroupTable, s: Iterable[int]) -> bool:
    sub = tuple(sorted(set(s)))
    if not is_subgroup(g, sub):
        raise NotASubgroup(sub)
    members = set(sub)
    for a in g.elements():
        for x in sub:
            if g.conj(a, x) not in members:
                return False
    return True


def center(g: GroupTable) -> Subset:
    table = g.table
    return tuple(
        a for a in g.elements()
        if all(table[a][b] == table[b][a] for b in g.elements())
    )


def product_set(g: GroupTable, xs: Iterable[int], ys: Iterable[int]) -> Subset:
    """The raw set {x*y}, not a closure."""
    table = g.table
    return tuple(sorted({table[x][y] for x in xs for y in ys}))


def restricted_group(g: GroupTable, s: Sequence[int], name: str = "") -> GroupTable:
    """The subgroup s as a standalone GroupTable relabeled to 0..|s|-1."""
    sub = tuple(sorted(set(s)))
    if not is_subgroup(g, sub):
        raise NotASubgroup(sub)
    index = {x: i for i, x in enumerate(sub)}
    rows = tuple(tuple(index[g.table[a][b]] for b in sub) for a in sub)
    return _group_from_rows(rows, name)


# element orders and generating sets ----------------------------------------

@lru_cache(maxsize=None)
def element_orders(g: GroupTable) -> tuple[int, ...]:
    out = []
    for a in g.elements():
        k, x = 1, a
        while x != 0:
            x = g.table[x][a]
            k += 1
        out.append(k)
    return tuple(out)


@lru_cache(maxsize=None)
def generating_set(g: GroupTable) -> Subset:
    """A small generating set, greedily preferring high-order elements."""
    orders = element_orders(g)
    preference = sorted(g.elements(), key=lambda a: (-orders[a], a))
    gens: list[int] = []
    closure = {0}
    for a in preference:
        if a not in closure:
            gens.append(a)
            closure = set(subgroup_generated(g, gens))
            if len(closure) == g.order:
                break
    return tuple(gens)


# homomorphism search --------------------------------------------------------

def close_partial_map(
    tables_src: Sequence[tuple[tuple[int, ...], ...]],
    tables_dst: Sequence[tuple[tuple[int, ...], ...]],
    pairs: Iterable[tuple[int, int]],
    n: int,
) -> Optional[list[Optional[int]]]:
    """Close a partial injective map under parallel operation tables.

    Seeds 0 -> 0 plus the given (element, image) pairs; every product of
    mapped elements is forced in each table simultaneously.  Returns the
    map (entries are None off the generated set) or None on conflict.
    """
    img: list[Optional[int]] = [None] * n
    img[0] = 0
    used = bytearray(n)
    used[0] = 1
    known = [0]
    pending = list(pairs)
    while pending:
        a, x = pending.pop()
        cur = img[a]
        if cur is not None:
            if cur != x:
                return None
            continue
        if used[x]:
            return None
        img[a] = x
        used[x] = 1
        for src, dst in zip(tables_src, tables_dst):
            sa, dx = src[a], dst[x]
            pending.append((sa[a], dx[x]))
            for b in known:
                y = img[b]
                pending.append((sa[b], dx[y]))
                pending.append((src[b][a], dst[y][x]))
        known.append(a)
    return img


def _search_isomorphisms(
    tables_src: Sequence[tuple[tuple[int, ...], ...]],
    tables_dst: Sequence[tuple[tuple[int, ...], ...]],
    gens: Sequence[int],
    candidates: Sequence[Sequence[int]],
    n: int,
    find_all: bool,
) -> list[Perm]:
    """Backtracking on generator images; prunes by partial-map closure."""
    found: list[Perm] = []

    def rec(i: int, pairs: tuple[tuple[int, int], ...]) -> bool:
        if i == len(gens):
            img = close_partial_map(tables_src, tables_dst, pairs, n)
            if img is not None and None not in img:
                found.append(tuple(img))  # type: ignore[arg-type]
                return not find_all
            return False
        for x in candidates[i]:
            nxt = pairs + ((gens[i], x),)
            if close_partial_map(tables_src, tables_dst, nxt, n) is not None:
                if rec(i + 1, nxt):
                    return True
        return False

    rec(0, ())
    return found


@lru_cache(maxsize=None)
def automorphisms(g: GroupTable) -> tuple[Perm, ...]:
    """All automorphisms, by backtracking on generator images.

    Candidate images are pruned by element order; the result is sorted,
    closed under composition, and contains the identity.
    """
    n = g.order
    gens = generating_set(g)
    if not gens:
        return (identity_perm(n),)
    orders = element_orders(g)
    candidates = [
        tuple(b for b in g.elements() if orders[b] == orders[a]) for a in gens
    ]
    found = _search_isomorphisms(
        (g.table,), (g.table,), gens, candidates, n, find_all=True
    )
    return tuple(sorted(found))


def are_isomorphic(g1: GroupTable, g2: GroupTable) -> Optional[Perm]:
    """An isomorphism g1 -> g2 as a permutation of indices, or None."""
    if g1.order != g2.order:
        return None
    if sorted(element_orders(g1)) != sorted(element_orders(g2)):
        return None
    n = g1.order
    gens = generating_set(g1)
    if not gens:
        return identity_perm(n)
    o1, o2 = element_orders(g1), element_orders(g2)
    candidates = [
        tuple(b for b in g2.elements() if o2[b] == o1[a]) for a in gens
    ]
    found = _search_isomorphisms(
        (g1.table,), (g2.table,), gens, candidates, n, find_all=False
    )
    return found[0] if found else None


# holomorph ------------------------------------------------------------------

@dataclass(frozen=True)
class Holomorph:
    """The holomorph G x| Aut(G) with its natural action on G's carrier."""

    group: GroupTable
    action: tuple[Perm, ...]

    def pair(self, index: int) -> tuple[int, int]:
        m = len(self.action) // self.group.order if self.group.order else 1
        return divmod(index, m)


def holomorph(g: GroupTable) -> Holomorph:
    """Pairs (a, phi) with product (a*phi(b), phi.psi); (a, phi) sends x to a*phi(x)."""
    auts = automorphisms(g)
    m = len(auts)
    n = g.order
    aut_index = {p: i for i, p in enumerate(auts)}
    comp = [[aut_index[perm_compose(p, q)] for q in auts] for p in auts]
    size = n * m
    rows = [[0] * size for _ in range(size)]
    action = []
    for a in range(n):
        ta = g.table[a]
        for i in range(m):
            phi = auts[i]
            ci = comp[i]
            row = rows[a * m + i]
            for b in range(n):
                base = ta[phi[b]] * m
                col = b * m
                for j in range(m):
                    row[col + j] = base + ci[j]
            action.append(tuple(ta[phi[x]] for x in range(n)))
    group = _group_from_rows(tuple(map(tuple, rows)), f"Hol({g.name})" if g.name else "")
    return Holomorph(group, tuple(action))
