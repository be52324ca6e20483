'''
Exceptions raised by the library. Every error carries a stable `code`
(the class name) which is what reports and the CLI refer to.
'''


class OverlapGenError(Exception):
    '''Base class of all library errors.'''

    @property
    def code(self):
        return type(self).__name__


class IndeterminateSum(OverlapGenError, ArithmeticError):
    '''(+inf) + (-inf) was requested.'''


class DomainError(OverlapGenError, ValueError):
    '''A function was evaluated outside of its domain.'''


class DomainMismatch(OverlapGenError, ValueError):
    '''The range of an inner function leaves the domain of the outer one.'''

    def __init__(self, message, witness=None):
        super(DomainMismatch, self).__init__(message)
        self.witness = witness


class NotBracketed(OverlapGenError, ValueError):
    '''The value to invert lies outside the range of the function.'''


class MonotonicityViolation(OverlapGenError, ValueError):
    '''Bisection met samples contradicting the assumed monotonicity.'''

    def __init__(self, message, witness=None):
        super(MonotonicityViolation, self).__init__(message)
        self.witness = witness


class ConvergenceError(OverlapGenError, RuntimeError):
    '''The bisection budget was used up.'''


class RangeError(OverlapGenError, ValueError):
    '''An overlap value fell outside of [0,1] by more than rounding.'''


class InvalidParams(OverlapGenError, ValueError):
    '''Transform parameters violate the preconditions of the transform.'''


class NotInvertible(OverlapGenError, ValueError):
    '''A generator needed for inversion is not strictly monotone.'''


class InvalidPair(OverlapGenError, ValueError):
    '''A generator pair could not be assembled (e.g. infinite anchor).'''


class SpecError(OverlapGenError, ValueError):
    '''A pair-spec file or function descriptor could not be resolved.'''
