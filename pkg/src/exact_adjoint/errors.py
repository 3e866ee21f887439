"""Error taxonomy shared by every layer of the engine."""


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(EngineError):
    """Operands act on different numbers of qubits or orbitals."""


class NotHermitian(EngineError):
    """An operation required a Hermitian operand and did not get one."""


class InvariantViolation(EngineError):
    """A constructed object fails one of its defining algebraic checks."""


class ParseError(EngineError):
    """A text payload could not be parsed in the documented format."""


class NoClosureWithinBound(EngineError):
    """Nested adjoints stayed linearly independent up to the degree cap."""


class NotAnticommuting(EngineError):
    """The anticommuting-pair reduction was asked for a non-anticommuting pair."""


class NotClosed(EngineError):
    """A commutator left the span of the supplied operator basis."""


class SingularSystem(EngineError):
    """A linear solve hit a numerically singular matrix."""


class ComplexResidueTooLarge(EngineError):
    """Coefficients that must be real came out with a large imaginary part."""


class OracleCapExceeded(EngineError):
    """A dense-matrix request exceeded the configured qubit cap."""
