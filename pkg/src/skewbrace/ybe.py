"""Set-theoretic solutions: validation, r_A, decomposability, retraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    BraidFailure,
    DecompositionFailure,
    GroupTooLarge,
    IllDefined,
    InvalidInput,
    NotBijectiveR,
    NotInvolutive,
    NotNondegenerate,
    NotProperStrongLeftIdeal,
    PreconditionViolated,
)
from .braces import SkewBrace, _cached, _is_strong_left_ideal
from .groups import (
    GroupTable,
    Perm,
    Subset,
    identity_perm,
    is_permutation,
    orbits,
    perm_compose,
    _group_from_rows,
)

DEFAULT_GROUP_CAP = 10080


@dataclass(frozen=True)
class Solution:
    """A set-theoretic solution on 0..size-1.

    Convention (the classic foot-gun, so stated twice): ``sigma[x][y]``
    is sigma_x(y) while ``tau[y][x]`` is tau_y(x) — the tau matrix is
    indexed by the *second* component of the pair first, so that
    r(x, y) = (sigma[x][y], tau[y][x]).
    """

    size: int
    sigma: tuple[tuple[int, ...], ...]
    tau: tuple[tuple[int, ...], ...]

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.sigma[x][y], self.tau[y][x]


def _braid_witness(sol: Solution) -> Optional[tuple[int, int, int]]:
    """First triple violating (r x id)(id x r)(r x id) = (id x r)(r x id)(id x r)."""
    n = sol.size
    r = sol.r
    for x in range(n):
        for y in range(n):
            u, v = r(x, y)
            for z in range(n):
                p, q = r(v, z)
                a, b = r(u, p)
                s, t = r(y, z)
                c, d = r(x, s)
                e, f = r(d, t)
                if (a, b, q) != (c, e, f):
                    return (x, y, z)
    return None


def validate_solution(
    sigma: Sequence[Sequence[int]], tau: Sequence[Sequence[int]]
) -> Solution:
    """Check that r is a bijection of the square satisfying the braid relation."""
    sig = tuple(tuple(int(v) for v in row) for row in sigma)
    ta = tuple(tuple(int(v) for v in row) for row in tau)
    n = len(sig)
    if n == 0 or len(ta) != n:
        raise InvalidInput("sigma and tau must be non-empty matrices of equal size")
    for mat in (sig, ta):
        for row in mat:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise InvalidInput("matrix entries must form a square over 0..n-1")
    sol = Solution(n, sig, ta)
    images = {sol.r(x, y) for x in range(n) for y in range(n)}
    if len(images) != n * n:
        raise NotBijectiveR()
    witness = _braid_witness(sol)
    if witness is not None:
        raise BraidFailure(*witness)
    return sol


def is_involutive(sol: Solution) -> bool:
    """r applied twice is the identity on all pairs."""
    for x in range(sol.size):
        for y in range(sol.size):
            u, v = sol.r(x, y)
            if sol.r(u, v) != (x, y):
                return False
    return True


def is_nondegenerate(sol: Solution) -> bool:
    """Every sigma_x and every tau_y is a bijection."""
    n = sol.size
    return all(is_permutation(row, n) for row in sol.sigma) and all(
        is_permutation(row, n) for row in sol.tau
    )


def flip_solution(n: int) -> Solution:
    """r(x, y) = (y, x)."""
    rows = tuple(identity_perm(n) for _ in range(n))
    return Solution(n, rows, rows)


# solutions from braces --------------------------------------------------------

def solution_from_brace(A: SkewBrace) -> Solution:
    """The canonical solution r(a, b) = (lambda_a(b), lambda_a(b)' . a . b)."""
    def build() -> Solution:
        n = A.order
        ct, cinv = A.circ.table, A.circ.inv
        sigma = A.lambdas
        tau_rows = []
        for b in range(n):
            row = []
            for a in range(n):
                u = A.lambdas[a][b]
                row.append(ct[ct[cinv[u]][a]][b])
            tau_rows.append(tuple(row))
        return validate_solution(sigma, tuple(tau_rows))

    return _cached(A, "solution", build)


def decomposition_from_strong_left_ideal(
    A: SkewBrace, ideal_subset: Sequence[int]
) -> tuple[Subset, Subset]:
    """Split the canonical solution along a proper non-zero strong left ideal.

    Verifies that r_A preserves the two blocks and exchanges the mixed
    rectangles before returning the partition (I, complement).
    """
    sub = tuple(sorted(set(ideal_subset)))
    if len(sub) <= 1 or len(sub) >= A.order or not _is_strong_left_ideal(A, sub):
        raise NotProperStrongLeftIdeal(sub)
    rest = tuple(x for x in A.carrier() if x not in set(sub))
    _check_partition(solution_from_brace(A), sub, rest)
    return sub, rest


def _check_partition(sol: Solution, y_block: Subset, z_block: Subset) -> None:
    """r must keep each block and swap the mixed rectangles.

    Uniformly: the first output lands in the block of y, the second in
    the block of x; with r bijective, containment of same-size rectangles
    gives the required equalities.  Restrictions to invariant blocks then
    satisfy the braid relation automatically.
    """
    y_set = set(y_block)
    for x_part, y_part, name in (
        (y_block, y_block, "r(YxY) <= YxY"),
        (z_block, z_block, "r(ZxZ) <= ZxZ"),
        (y_block, z_block, "r(YxZ) = ZxY"),
        (z_block, y_block, "r(ZxY) = YxZ"),
    ):
        for x in x_part:
            for y in y_part:
                u, v = sol.r(x, y)
                if (u in y_set) != (y in y_set) or (v in y_set) != (x in y_set):
                    raise DecompositionFailure(f"{name} fails at ({x},{y})")


def is_decomposable(sol: Solution) -> Optional[tuple[Subset, Subset]]:
    """A non-trivial invariant partition, from orbits of all sigma and tau rows.

    Returns (orbit of 0, complement) when the generated permutation group
    is intransitive, None when it is transitive.
    """
    parts = orbits(tuple(sol.sigma) + tuple(sol.tau), sol.size)
    if len(parts) == 1:
        return None
    y_block = parts[0]
    z_block = tuple(x for x in range(sol.size) if x not in set(y_block))
    _check_partition(sol, y_block, z_block)
    return y_block, z_block


# retraction -------------------------------------------------------------------

def retraction(sol: Solution) -> Solution:
    """Quotient by sigma_x = sigma_y, for involutive non-degenerate solutions.

    Class representatives are the least indices; the induced maps are
    checked for well-definedness across all representatives.
    """
    if not is_nondegenerate(sol):
        raise NotNondegenerate()
    if not is_involutive(sol):
        raise NotInvolutive()
    n = sol.size
    class_of: dict[tuple[int, ...], int] = {}
    member_class = [0] * n
    for x in range(n):
        row = sol.sigma[x]
        if row not in class_of:
            class_of[row] = len(class_of)
        member_class[x] = class_of[row]
    k = len(class_of)
    sig_rows = [[-1] * k for _ in range(k)]
    tau_rows = [[-1] * k for _ in range(k)]
    for x in range(n):
        cx = member_class[x]
        for y in range(n):
            cy = member_class[y]
            u = member_class[sol.sigma[x][y]]
            v = member_class[sol.tau[y][x]]
            if sig_rows[cx][cy] == -1:
                sig_rows[cx][cy] = u
            elif sig_rows[cx][cy] != u:
                raise IllDefined(f"sigma classes disagree at ({x},{y})")
            if tau_rows[cy][cx] == -1:
                tau_rows[cy][cx] = v
            elif tau_rows[cy][cx] != v:
                raise IllDefined(f"tau classes disagree at ({x},{y})")
    out = validate_solution(tuple(map(tuple, sig_rows)), tuple(map(tuple, tau_rows)))
    if not is_involutive(out) or not is_nondegenerate(out):
        raise IllDefined("retraction lost involutivity or non-degeneracy")
    return out


@dataclass(frozen=True)
class LevelVerdict:
    """Outcome of iterating the retraction."""

    kind: str  # "level" | "stalled" | "cap_exceeded"
    steps: int

    @property
    def is_multipermutation(self) -> bool:
        return self.kind == "level"


def multipermutation_level(sol: Solution, cap: Optional[int] = None) -> LevelVerdict:
    """Level m when Ret^m has one point; Stalled(k) when Ret^k stops shrinking."""
    if sol.size < 2:
        raise PreconditionViolated("need a solution on at least two points")
    if cap is None:
        cap = sol.size
    current, steps = sol, 0
    while True:
        if current.size == 1:
            return LevelVerdict("level", steps)
        if steps >= cap:
            return LevelVerdict("cap_exceeded", cap)
        nxt = retraction(current)
        if nxt.size == current.size:
            return LevelVerdict("stalled", steps)
        current, steps = nxt, steps + 1


# the permutation group of a solution -------------------------------------------

@dataclass(frozen=True)
class SolutionGroup:
    """Abstract Cayley table of the sigma-generated group, with the perms."""

    group: GroupTable
    perms: tuple[Perm, ...]


def permutation_group_of_solution(sol: Solution, cap: int = DEFAULT_GROUP_CAP) -> SolutionGroup:
    """Close the sigma rows under composition and return the Cayley table."""
    n = sol.size
    ident = identity_perm(n)
    elems = {ident}
    frontier = [ident]
    gens = {tuple(row) for row in sol.sigma}
    for g in gens:
        if not is_permutation(g, n):
            raise NotNondegenerate()
        if g not in elems:
            elems.add(g)
            frontier.append(g)
    while frontier:
        p = frontier.pop()
        for q in tuple(elems):
            for comp in (perm_compose(p, q), perm_compose(q, p)):
                if comp not in elems:
                    if len(elems) >= cap:
                        raise GroupTooLarge(cap)
                    elems.add(comp)
                    frontier.append(comp)
    ordered = [ident] + sorted(elems - {ident})
    index = {p: i for i, p in enumerate(ordered)}
    rows = tuple(
        tuple(index[perm_compose(p, q)] for q in ordered) for p in ordered
    )
    return SolutionGroup(_group_from_rows(rows), tuple(ordered))
