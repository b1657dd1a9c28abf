class OsDulacError(Exception):
    """Base class of every error raised by os-dulac."""


class InputError(OsDulacError):
    """Malformed user input; the command line maps it to exit code 3."""


class ParseError(InputError):
    def __init__(self, message, line=1, column=1):
        super(ParseError, self).__init__(f"{message} (line {line}, column {column})")
        self.reason = message
        self.line = line
        self.column = column


class UnknownIdentifierError(ParseError):
    pass


class UndefinedParameterError(ParseError):
    pass


class NonPolynomialError(ParseError):
    pass


class InvalidRegionError(InputError):
    pass


class InvalidMatrixError(InputError):
    pass


class InvalidToleranceError(InputError):
    pass


class ZeroPolynomialError(OsDulacError, ZeroDivisionError):
    pass


class ComplexCoefficientError(OsDulacError, ValueError):
    pass


# synthesis


class SynthesisError(OsDulacError):
    pass


class TraceZeroError(SynthesisError):
    pass


class SingularAnsatzError(SynthesisError):
    pass


class DoubleZeroEigenvalueError(SynthesisError):
    pass


class ConstantPotentialError(SynthesisError):
    pass


class NotAnEquilibriumError(OsDulacError):
    def __init__(self, point, residual):
        super(NotAnEquilibriumError, self).__init__(
            f"{point} is not an equilibrium, |X| = {residual:.3e}"
        )
        self.point = point
        self.residual = residual


class NonHyperbolicLinearizationError(SynthesisError):
    pass


class CertificationFailedError(SynthesisError):
    def __init__(self, message, radius=None):
        super(CertificationFailedError, self).__init__(message)
        self.radius = radius


class FlowboxError(SynthesisError):
    pass


class EquilibriumEncounteredError(FlowboxError):
    pass


class TrajectoryLeftWindowError(FlowboxError):
    pass


class PositivityFailedError(FlowboxError):
    def __init__(self, node, value):
        super(PositivityFailedError, self).__init__(
            f"Div(B X) = {value:.6e} is not positive at node {node}"
        )
        self.node = node
        self.value = value


# darboux


class DarbouxError(OsDulacError):
    pass


class ConstantInputError(DarbouxError):
    pass


class NotInvariantError(DarbouxError):
    def __init__(self, remainder):
        super(NotInvariantError, self).__init__(
            f"curve is not invariant, remainder {remainder}"
        )
        self.remainder = remainder


class NotExponentialFactorError(DarbouxError):
    def __init__(self, remainder):
        super(NotExponentialFactorError, self).__init__(
            f"not an exponential factor, remainder {remainder}"
        )
        self.remainder = remainder


class DegreeBoundViolatedError(DarbouxError):
    def __init__(self, cofactor, bound):
        super(DegreeBoundViolatedError, self).__init__(
            f"cofactor {cofactor} has degree {cofactor.degree} > {bound}"
        )
        self.cofactor = cofactor
        self.bound = bound


class NoNontrivialRelationError(DarbouxError):
    pass


# numerics


class NumericsError(OsDulacError):
    pass


class NoReturnError(NumericsError):
    pass


class LimitCycleNotFoundError(NumericsError):
    pass


class OffSectionError(NumericsError):
    pass
