"""Exception types shared across the package."""


class NonExactDivision(ArithmeticError):
    """An exact division left a remainder.

    Never a valid-input condition: it signals an arithmetic bug, a wrong
    parity convention or a wrong parameter.
    """


class ScalarKindMismatch(TypeError):
    """Generic and root-of-unity scalars (or two different l) were mixed."""


class ModelMismatch(TypeError):
    """Elements from different algebra models were combined."""


class WrongModel(TypeError):
    """An operation was called on a model it does not support."""


class NonFiniteType(ValueError):
    """Reflection closure exceeded its safety bound."""


class UnsupportedCase(ValueError):
    """Satake type outside the rank-one cases realized here."""


class ParityUnsupported(ValueError):
    """Closed formula requested for a parity it does not cover."""
