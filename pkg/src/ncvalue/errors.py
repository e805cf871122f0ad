"""Exception hierarchy.

Every error carries the process exit code the CLI maps it to, so scripts can
dispatch on failures without parsing messages.
"""


class NCValueError(Exception):
    exit_code = 3


class ParseError(NCValueError, ValueError):
    exit_code = 2


class DimensionMismatch(NCValueError, ValueError):
    exit_code = 3


class DimensionTooLarge(NCValueError, ValueError):
    exit_code = 3


class ZeroVector(NCValueError, ValueError):
    exit_code = 3


class ChartUndefined(NCValueError, ValueError):
    """The affine chart w = z/z^0 does not exist because z^0 = 0."""

    exit_code = 3


class StateMismatch(NCValueError, ValueError):
    """Symmetry data evaluated at different states cannot be multiplied."""

    exit_code = 3


class MomentOrderTooLarge(NCValueError, ValueError):
    exit_code = 3


class SingularOperator(NCValueError, ArithmeticError):
    exit_code = 4


class InconsistentData(NCValueError, ArithmeticError):
    """Derivative data that does not arise from any state vector."""

    exit_code = 5


class NotHermitian(NCValueError, ValueError):
    exit_code = 6


class ConvergenceFailure(NCValueError, ArithmeticError):
    exit_code = 3
