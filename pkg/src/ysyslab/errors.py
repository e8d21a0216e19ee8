"""Exception hierarchy shared by all verification modules."""


class YsysError(Exception):
    """Base class for every error raised by ysyslab."""


class DiagramError(YsysError, ValueError):
    """Invalid Dynkin type, rank or diagram spec string."""


class RootError(YsysError, ValueError):
    """A vector outside the set of positive roots and negative simple roots."""


class ParityError(YsysError, ValueError):
    """An (index, time) pair with the wrong parity for the requested object."""


class IndexMismatchError(YsysError, ValueError):
    """Operands living over different index sets."""


class NumericRangeError(YsysError, ArithmeticError):
    """Floating point overflow/underflow or a non-positive value.

    Retrying with an assignment closer to 1 usually helps.
    """


class InvariantViolation(YsysError, AssertionError):
    """An internal invariant failed; this signals a bug, not bad input."""


class FalsificationError(InvariantViolation):
    """A computed object contradicts a known identity, such as a mixed tropical sign."""


class BudgetExceeded(YsysError):
    """A symbolic computation was refused because it exceeds the size budget."""


class ConvergenceError(YsysError, ArithmeticError):
    """The fixed point solver did not reach the requested residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
