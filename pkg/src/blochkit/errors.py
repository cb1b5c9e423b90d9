"""Exception hierarchy shared by all blochkit modules."""


class BlochkitError(Exception):
    pass


class DomainError(BlochkitError, ValueError):
    """Input outside the open unit disk or another declared domain."""


class PoleError(BlochkitError, ArithmeticError):
    """A denominator vanished during evaluation."""


class NumericalOverflow(BlochkitError, ArithmeticError):
    """An integrand produced a non-finite value or left its safe range."""


class SingularMatrix(BlochkitError, ArithmeticError):
    pass


class PreconditionError(BlochkitError, ValueError):
    pass
