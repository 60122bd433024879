"""Exception types raised across the toolkit."""


class SemigroupError(Exception):
    """Base class for all toolkit errors."""


class IndexOutOfRange(SemigroupError):
    pass


class NonAssociative(SemigroupError):
    def __init__(self, i, j, k):
        super().__init__(f"associativity fails at ({i}, {j}, {k})")
        self.triple = (i, j, k)


class NotAnIdeal(SemigroupError):
    def __init__(self, witness):
        super().__init__(f"not an ideal: product {witness} escapes")
        self.witness = witness


class NotSubsemigroup(SemigroupError):
    def __init__(self, witness):
        super().__init__(f"not closed under multiplication: {witness}")
        self.witness = witness


class NotAGroup(SemigroupError):
    pass


class DegenerateSandwich(SemigroupError):
    pass


class InternalInconsistency(SemigroupError):
    pass


class NotPreorder(SemigroupError):
    pass


class NotCompatible(SemigroupError):
    def __init__(self, side, witness):
        super().__init__(f"{side} relation not compatible with multiplication at {witness}")
        self.side = side
        self.witness = witness


class NotContainedInStarred(SemigroupError):
    def __init__(self, side, witness):
        super().__init__(f"{side} relation escapes the starred preorder at {witness}")
        self.side = side
        self.witness = witness


class NotAPartition(SemigroupError):
    pass


class EmptyClass(SemigroupError):
    def __init__(self, alpha):
        super().__init__(f"class {alpha} is empty")
        self.alpha = alpha


class Incompatible(SemigroupError):
    def __init__(self, a, b, ab):
        super().__init__(f"product {a}*{b}={ab} escapes the allowed down-set")
        self.witness = (a, b, ab)


class NotCompatiblePreorder(SemigroupError):
    def __init__(self, a, b):
        super().__init__(f"ab is not below both a and b for (a, b) = ({a}, {b})")
        self.witness = (a, b)


class SliceMismatch(SemigroupError):
    pass


class HypothesisNotMet(SemigroupError):
    pass


class NotAbundant(HypothesisNotMet):
    pass


class SearchTooLarge(SemigroupError):
    pass


class Exhausted(SemigroupError):
    """A search budget (table count or wall clock) ran out before completion."""

    def __init__(self, budget, examined=0):
        super().__init__(f"budget exhausted after {examined} candidates: {budget}")
        self.budget = budget
        self.examined = examined


class ParseError(SemigroupError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
