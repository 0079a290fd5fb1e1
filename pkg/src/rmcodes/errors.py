"""Exception hierarchy shared by all rmcodes modules.

Every domain failure raises a subclass of :class:`RmcodesError`, so callers
(and the CLI) can distinguish usage mistakes from algebraic impossibilities
with a single except clause.
"""


class RmcodesError(Exception):
    """Base class for all library-level errors."""


class NotPrime(RmcodesError):
    """The characteristic p passed to a tower constructor is not prime."""


class ReducibleModulus(RmcodesError):
    """A supplied defining polynomial factors over the prime field."""


class NotPrimitiveModulus(RmcodesError):
    """A supplied irreducible modulus whose root is not a primitive element."""


class DivisionByZero(RmcodesError):
    """Field division or inversion of the zero element."""


class TowerMismatch(RmcodesError):
    """Operands belong to different field towers."""


class DoesNotDivide(RmcodesError):
    """A subfield degree that does not divide the extension degree."""


class Singular(RmcodesError):
    """Matrix inversion or order computation on a singular matrix."""


class TooLarge(RmcodesError):
    """An exhaustive enumeration would exceed the desk-scale guard."""


class NotInSpan(RmcodesError):
    """Coordinate solve for a vector outside the target span."""


class DependentVector(RmcodesError):
    """A tuple of field elements that is linearly dependent over the base field."""


class BadParams(RmcodesError):
    """Structurally invalid code parameters (shape constraints violated)."""


class ShapeMismatch(RmcodesError):
    """Operand dimensions are incompatible."""


class IllegalTranspose(RmcodesError):
    """Transpose-flagged matrix map requested on a non-square shape."""


class AmbientMismatch(RmcodesError):
    """Subspaces of different ambient spaces compared."""


class BadPivots(RmcodesError):
    """Pivot column list invalid for the requested lifting."""


class MixedPivots(RmcodesError):
    """Subspace code words do not share common pivot locations."""


class NonlinearCode(RmcodesError):
    """A codeword set that is not closed under base-field linear combinations."""


class UnknownExample(RmcodesError):
    """Unrecognised identifier passed to the worked-example verifier."""
