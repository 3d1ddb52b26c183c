"""
Exception hierarchy shared by every BundleCalc app.

Validation routines report failed laws as report entries; these exceptions
are raised only when a computation cannot proceed.
"""


class BundleCalcError(Exception):
    """Base class for all engine errors."""


class ScalarDivisionError(BundleCalcError, ZeroDivisionError):
    """Division by the zero scalar."""


class PoleError(BundleCalcError):
    """Evaluation at a point where a denominator vanishes."""

    def __init__(self, denominator: str, point):
        self.denominator = denominator
        self.point = point
        super().__init__(f'denominator {denominator} vanishes at mu={point}')


class ParseError(BundleCalcError, ValueError):
    """Malformed scalar text or data pack."""


class PackNotFoundError(BundleCalcError):
    """A referenced data pack does not exist."""


class DomainMismatchError(BundleCalcError, TypeError):
    """Operands belong to different algebras."""


class NonConfluentError(BundleCalcError):
    """A presentation's rewrite rules are not confluent."""

    def __init__(self, overlap, left, right):
        self.overlap = overlap
        self.left = left
        self.right = right
        super().__init__(f'critical overlap {overlap} resolves to {left} and {right}')


class SpecIncompleteError(BundleCalcError):
    """A calculus pack lacks a table row or a preimage."""


class CapExceededError(BundleCalcError):
    """A graded computation needs a degree above the configured cap."""

    def __init__(self, degree: int, cap: int):
        self.degree = degree
        self.cap = cap
        super().__init__(f'degree {degree} exceeds the degree cap {cap}')


class InvalidBaseError(BundleCalcError):
    """A base algebra fails d^2=0, hermicity of d or the star involution."""


class InvalidSplittingError(BundleCalcError):
    """A splitting of the invariant forms fails its compatibility conditions."""


class ReconstructionPreconditionError(BundleCalcError):
    """Horizontal data fails a precondition of the form-algebra reconstruction."""

    def __init__(self, condition: str, witness: str):
        self.condition = condition
        self.witness = witness
        super().__init__(f'{condition} fails at {witness}')


class TranslationError(BundleCalcError):
    """No translation pairs q_k, b_k exist for the requested element."""


class InvalidConnectionError(BundleCalcError):
    """A connection is not hermitian or violates the connection law."""


class NonInvariantError(BundleCalcError):
    """An element is not invariant under the adjoint coaction."""


class NonRegularError(BundleCalcError):
    """An operation requires a regular connection."""


class NonTensorialError(BundleCalcError):
    """A map does not intertwine the adjoint coaction and the bundle coaction."""


class NotInIdealError(BundleCalcError):
    """An element is not among the listed generators of the calculus ideal."""


class UnknownScenarioError(BundleCalcError, KeyError):
    """The requested scenario id is not registered."""

    def __str__(self):
        return f'unknown scenario {self.args[0]!r}'
