"""Exception types shared by the solvers, the oracle and the harness."""


class DynLabelError(Exception):
    pass


class DuplicateId(DynLabelError, ValueError):
    pass


class UnknownId(DynLabelError, LookupError):
    pass


class OutOfFrame(DynLabelError, ValueError):
    pass


class CoordinateRangeError(DynLabelError, ValueError):
    pass


class CapExceeded(DynLabelError, RuntimeError):
    pass


class FormatError(DynLabelError, ValueError):
    pass


class InfeasibleTrace(DynLabelError, ValueError):
    pass


class UnknownAlgo(DynLabelError, ValueError):
    pass


class InvariantViolation(DynLabelError, AssertionError):
    """Raised when a maintained structure disagrees with its from-scratch oracle.

    ``step`` is the trace step at which the violation was detected (None when
    raised outside a replay).
    """

    def __init__(self, message, step=None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step
        self.detail = message
