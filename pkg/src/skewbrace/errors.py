"""Exception types shared across the toolkit."""

from __future__ import annotations


class SkewBraceError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SkewBraceError):
    """Malformed external input: wrong shape, out-of-range entries, bad JSON."""


class InvariantViolation(SkewBraceError):
    """A self-check that should hold by theorem failed; indicates a bug."""


# group validation -----------------------------------------------------------

class GroupValidationError(SkewBraceError):
    """A Cayley table failed one of the group axioms."""


class NotLatinSquare(GroupValidationError):
    def __init__(self, kind: str, index: int):
        self.kind = kind
        self.index = index
        super().__init__(f"{kind} {index} is not a permutation of the carrier")


class NoIdentityAtZero(GroupValidationError):
    def __init__(self) -> None:
        super().__init__("element 0 is not a two-sided identity")


class NonAssociative(GroupValidationError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"(a*b)*c != a*(b*c) at (a,b,c)={(a, b, c)}")


class MissingInverse(GroupValidationError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class UnsupportedOrder(SkewBraceError):
    def __init__(self, order: int):
        self.order = order
        super().__init__(f"no catalog of groups of order {order}")


class NotASubgroup(SkewBraceError):
    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"{tuple(subset)} is not a subgroup")


# brace validation -----------------------------------------------------------

class OrderMismatch(SkewBraceError):
    def __init__(self, n_add: int, n_circ: int):
        super().__init__(f"additive order {n_add} != multiplicative order {n_circ}")


class CompatibilityFailure(SkewBraceError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(
            f"a.(b+c) != a.b - a + a.c at (a,b,c)={(a, b, c)}"
        )


class NotLeftIdeal(SkewBraceError):
    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"{tuple(subset)} is not a left ideal")


class NotIdeal(SkewBraceError):
    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"{tuple(subset)} is not an ideal")


class NotALeftBrace(SkewBraceError):
    def __init__(self) -> None:
        super().__init__("the additive group is not abelian")


# factorizations -------------------------------------------------------------

class NotExact(SkewBraceError):
    """The subgroup pair does not factorize the group exactly."""


class PreconditionViolated(SkewBraceError):
    """The operation's stated hypotheses do not hold for this input."""


# solutions ------------------------------------------------------------------

class NotBijectiveR(SkewBraceError):
    def __init__(self) -> None:
        super().__init__("r is not a bijection of the square")


class BraidFailure(SkewBraceError):
    def __init__(self, x: int, y: int, z: int):
        self.witness = (x, y, z)
        super().__init__(f"braid relation fails at (x,y,z)={(x, y, z)}")


class NotInvolutive(SkewBraceError):
    def __init__(self) -> None:
        super().__init__("solution is not involutive")


class NotNondegenerate(SkewBraceError):
    def __init__(self) -> None:
        super().__init__("solution is degenerate")


class IllDefined(SkewBraceError):
    """A quotient map disagreed across equivalent representatives."""


class NotProperStrongLeftIdeal(SkewBraceError):
    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"{tuple(subset)} is not a proper non-zero strong left ideal")


class DecompositionFailure(SkewBraceError):
    def __init__(self, detail: str):
        super().__init__(f"partition fails the decomposition conditions: {detail}")


class GroupTooLarge(SkewBraceError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"generated permutation group exceeds the cap of {cap}")


# enumeration ----------------------------------------------------------------

class OrderCapExceeded(SkewBraceError):
    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"order {order} exceeds the enumeration cap {cap}")


class UnknownPredicate(SkewBraceError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown catalog predicate {name!r}")
