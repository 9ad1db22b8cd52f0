"""Factorizations through left ideals and the nilpotency-bound verifiers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import NotALeftBrace, NotExact, NotLeftIdeal, PreconditionViolated
from .braces import (
    SkewBrace,
    _is_ideal,
    _is_left_ideal,
    _is_strong_left_ideal,
    _sub_is_trivial,
    fix,
    ideals,
    is_meta_trivial,
    ker_lambda,
    left_ideals,
    right_nilpotency_class,
    socle,
    star_product,
    validate_brace,
)
from .groups import (
    GroupTable,
    Subset,
    are_isomorphic,
    direct_product,
    is_normal,
    is_subgroup,
    product_set,
    restricted_group,
    validate_group,
)
from .reports import Check, VerificationReport


def sum_set(A: SkewBrace, xs: Iterable[int], ys: Iterable[int]) -> Subset:
    """The raw set {x + y}, not an additive closure."""
    return product_set(A.add, xs, ys)


def circ_sum_set(A: SkewBrace, xs: Iterable[int], ys: Iterable[int]) -> Subset:
    return product_set(A.circ, xs, ys)


@dataclass(frozen=True)
class Factorization:
    """A pair of left ideals whose raw sum covers the carrier."""

    B: Subset
    C: Subset
    B_strong: bool
    C_strong: bool
    B_trivial: bool
    C_trivial: bool
    sum_is_all: bool

    def swapped(self) -> "Factorization":
        return Factorization(
            self.C, self.B, self.C_strong, self.B_strong,
            self.C_trivial, self.B_trivial, self.sum_is_all,
        )


def make_factorization(A: SkewBrace, b: Iterable[int], c: Iterable[int]) -> Factorization:
    """Build the record with recomputed flags; both parts must be left ideals."""
    bs = tuple(sorted(set(b)))
    cs = tuple(sorted(set(c)))
    for part in (bs, cs):
        if not _is_left_ideal(A, part):
            raise NotLeftIdeal(part)
    return Factorization(
        bs,
        cs,
        _is_strong_left_ideal(A, bs),
        _is_strong_left_ideal(A, cs),
        _sub_is_trivial(A, bs),
        _sub_is_trivial(A, cs),
        sum_set(A, bs, cs) == A.carrier(),
    )


def find_factorizations(
    A: SkewBrace,
    require_strong: tuple[bool, bool] = (False, False),
    require_trivial: tuple[bool, bool] = (False, False),
    allow_improper: bool = False,
) -> list[Factorization]:
    """All unordered left-ideal pairs with B + C = A, oriented to the flags.

    A True in require_strong/require_trivial demands that flag of the
    corresponding slot; False means unconstrained.  Pairs involving the
    full carrier are dropped unless allow_improper is set.
    """
    carrier = A.carrier()
    candidates = left_ideals(A)
    out: list[Factorization] = []
    for i, b in enumerate(candidates):
        for c in candidates[i:]:
            if not allow_improper and (b == carrier or c == carrier):
                continue
            if len(b) * len(c) < A.order:
                continue
            if sum_set(A, b, c) != carrier:
                continue
            fact = make_factorization(A, b, c)
            orientations = (fact,) if b == c else (fact, fact.swapped())
            for cand in orientations:
                if require_strong[0] and not cand.B_strong:
                    continue
                if require_strong[1] and not cand.C_strong:
                    continue
                if require_trivial[0] and not cand.B_trivial:
                    continue
                if require_trivial[1] and not cand.C_trivial:
                    continue
                out.append(cand)
                break
    out.sort(key=lambda f: (len(f.B), f.B, f.C))
    return out


# the Ito-style verifiers ------------------------------------------------------

def verify_ito(A: SkewBrace, f: Factorization) -> VerificationReport:
    """Consequences of a factorization through trivial left ideals.

    Checks the star-product ideals are strong and trivial, that A^(2) is
    their raw sum either way around, and (when both factors are strong)
    the right-nilpotency bound of three plus meta-triviality.
    """
    if not (f.B_trivial and f.C_trivial):
        raise PreconditionViolated("both factors must be trivial sub-braces")
    checks: list[Check] = []
    bc = star_product(A, f.B, f.C)
    cb = star_product(A, f.C, f.B)
    for name, part in (("B*C", bc), ("C*B", cb)):
        checks.append(
            Check(f"{name} is a strong left ideal", _is_strong_left_ideal(A, part),
                  {"subset": part})
        )
        checks.append(
            Check(f"{name} is a trivial sub-brace", _sub_is_trivial(A, part),
                  {"subset": part})
        )
    a2 = star_product(A, A.carrier(), A.carrier())
    checks.append(
        Check(
            "A^(2) = B*C + C*B = C*B + B*C",
            sum_set(A, bc, cb) == a2 and sum_set(A, cb, bc) == a2,
            {"A2": a2, "B*C": bc, "C*B": cb},
        )
    )
    if f.B_strong and f.C_strong:
        cls = right_nilpotency_class(A)
        checks.append(
            Check("right nilpotency class <= 3", cls is not None and cls <= 3,
                  {"class": cls})
        )
        checks.append(Check("A is meta-trivial", is_meta_trivial(A), None))
    return VerificationReport(tuple(checks))


def find_trivializing_ideal(A: SkewBrace, f: Factorization) -> Optional[Subset]:
    """A non-zero ideal inside B or C acting trivially, when one exists.

    Smallest such ideal in (size, lex) order; None only when the brace is
    trivial and neither factor supplies one.
    """
    if not (f.B_trivial and f.C_trivial and f.B_strong):
        raise PreconditionViolated("need trivial factors with B strong")
    kernel = set(ker_lambda(A))
    bset, cset = set(f.B), set(f.C)
    best: Optional[Subset] = None
    for ideal in ideals(A):
        if len(ideal) == 1:
            continue
        members = set(ideal)
        if not (members <= bset or members <= cset):
            continue
        if not members <= kernel:
            continue
        if best is None or (len(ideal), ideal) < (len(best), best):
            best = ideal
    return best


def check_class_four(A: SkewBrace, f: Factorization) -> VerificationReport:
    """With trivial factors and B strong: class <= 4 and B*C is an ideal."""
    if not (f.B_trivial and f.C_trivial and f.B_strong):
        raise PreconditionViolated("need trivial factors with B strong")
    cls = right_nilpotency_class(A)
    bc = star_product(A, f.B, f.C)
    return VerificationReport(
        (
            Check("right nilpotency class <= 4", cls is not None and cls <= 4,
                  {"class": cls}),
            Check("B*C is an ideal", _is_ideal(A, bc), {"subset": bc}),
        )
    )


def is_factorized_left_ideal(A: SkewBrace, f: Factorization, ideal_subset: Iterable[int]) -> bool:
    """I is factorized when (I cap B) + (I cap C) = I as raw sets."""
    sub = tuple(sorted(set(ideal_subset)))
    if not _is_left_ideal(A, sub):
        raise NotLeftIdeal(sub)
    members = set(sub)
    ib = tuple(sorted(members & set(f.B)))
    ic = tuple(sorted(members & set(f.C)))
    return sum_set(A, ib, ic) == sub


def check_soc_factorized(A: SkewBrace, f: Factorization) -> bool:
    """For left braces with trivial-trivial factorizations: Soc(A) is factorized."""
    if not A.is_left_brace():
        raise NotALeftBrace()
    if not (f.B_trivial and f.C_trivial):
        raise PreconditionViolated("both factors must be trivial sub-braces")
    return is_factorized_left_ideal(A, f, socle(A))


# braces from exact group factorizations ---------------------------------------

@dataclass(frozen=True)
class ExactFactorization:
    """G = B + C with B and C subgroups meeting only in the identity."""

    G: GroupTable
    B: Subset
    C: Subset


def exact_factorization(g: GroupTable, b: Iterable[int], c: Iterable[int]) -> ExactFactorization:
    bs = tuple(sorted(set(b)))
    cs = tuple(sorted(set(c)))
    if not (is_subgroup(g, bs) and is_subgroup(g, cs)):
        raise NotExact("both parts must be subgroups")
    if set(bs) & set(cs) != {0}:
        raise NotExact("the parts must meet only in the identity")
    if len(bs) * len(cs) != g.order:
        raise NotExact("|B| * |C| must equal the group order")
    if product_set(g, bs, cs) != g.carrier():
        raise NotExact("B + C does not cover the group")
    return ExactFactorization(g, bs, cs)


def exact_factorization_brace(ef: ExactFactorization) -> SkewBrace:
    """The brace x.y = b + y + c, where x = b + c uniquely.

    The multiplicative group is verified isomorphic to B x C.
    """
    g, bs, cs = ef.G, ef.B, ef.C
    n = g.order
    table = g.table
    decomposition: list[Optional[tuple[int, int]]] = [None] * n
    for b in bs:
        row = table[b]
        for c in cs:
            x = row[c]
            if decomposition[x] is not None:
                raise NotExact(f"element {x} decomposes twice")
            decomposition[x] = (b, c)
    circ_rows = []
    for x in range(n):
        b, c = decomposition[x]  # type: ignore[misc]
        by = table[b]
        circ_rows.append(tuple(table[by[y]][c] for y in range(n)))
    brace = validate_brace(g, validate_group(tuple(circ_rows)))
    product = direct_product(restricted_group(g, bs), restricted_group(g, cs))
    if are_isomorphic(brace.circ, product) is None:
        raise NotExact("multiplicative group is not B x C")
    return brace


def check_exact_factorization_props(A: SkewBrace, ef: ExactFactorization) -> VerificationReport:
    """Structural facts about a brace built from an exact factorization.

    C is always a left ideal; additive normality of a factor promotes it
    to an ideal; and with both factors normal and C abelian the brace is
    right nilpotent of class at most three.
    """
    checks = [Check("C is a left ideal", _is_left_ideal(A, ef.C), {"subset": ef.C})]
    c_normal = is_normal(A.add, ef.C)
    b_normal = is_normal(A.add, ef.B)
    if c_normal:
        checks.append(Check("(C,+) normal => C is an ideal", _is_ideal(A, ef.C), {"subset": ef.C}))
    if b_normal:
        checks.append(Check("(B,+) normal => B is an ideal", _is_ideal(A, ef.B), {"subset": ef.B}))
    if b_normal and c_normal and restricted_group(A.add, ef.C).is_abelian():
        cls = right_nilpotency_class(A)
        checks.append(
            Check("both normal, C abelian => class <= 3",
                  cls is not None and cls <= 3, {"class": cls})
        )
    return VerificationReport(tuple(checks))


def all_exact_factorizations(g: GroupTable) -> list[ExactFactorization]:
    """Every ordered subgroup pair that factorizes g exactly."""
    from .groups import all_subgroups

    subs = all_subgroups(g)
    out = []
    for b in subs:
        for c in subs:
            if len(b) * len(c) != g.order:
                continue
            if set(b) & set(c) != {0}:
                continue
            if product_set(g, b, c) != g.carrier():
                continue
            out.append(ExactFactorization(g, b, c))
    return out
