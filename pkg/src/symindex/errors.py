"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` (bad input, CLI exit
code 2) and :class:`NumericalError` (tolerance-ambiguous numerics, exit 3).
"""


class SymIndexError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SymIndexError):
    pass


class NumericalError(SymIndexError):
    pass


class NotALieAlgebra(ValidationError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class NotSubalgebra(ValidationError):
    pass


class NotComplement(ValidationError):
    pass


class NonReductive(ValidationError):
    pass


class NotInvariant(ValidationError):
    pass


class NotPositiveDefinite(ValidationError):
    pass


class NotCompactType(ValidationError):
    pass


class InvariantFieldNotKilling(ValidationError):
    pass


class NotApplicable(ValidationError):
    pass


class ChainInvalid(ValidationError):
    pass


class PerpendicularityFailure(ValidationError):
    pass


class TransvectionMismatch(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line


class UnknownEntry(ValidationError):
    pass


class MissingData(ValidationError):
    pass


class DecompositionUnstable(NumericalError):
    pass


class ClosureFailure(NumericalError):
    pass


class SolveFailure(NumericalError):
    pass


class KoszulMismatch(NumericalError):
    pass
