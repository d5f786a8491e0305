"""Exception hierarchy shared by all modules."""


class WeilFormsError(Exception):
    pass


class PoleAtZero(WeilFormsError, ValueError):
    pass


class DomainError(WeilFormsError, ValueError):
    pass


class DegeneratePencil(WeilFormsError, ArithmeticError):
    pass


class RankError(WeilFormsError, ArithmeticError):
    pass


class SingularMatrix(WeilFormsError, ArithmeticError):
    pass


class Undecidable(WeilFormsError, ArithmeticError):
    """An interval sign could not be certified at the maximal precision."""


class IncompleteFunctional(WeilFormsError, KeyError):
    pass


class NotPositiveDefinite(WeilFormsError, ArithmeticError):
    def __init__(self, message, minor=None):
        super().__init__(message)
        self.minor = minor


class PreconditionFailed(WeilFormsError, ValueError):
    pass


class NodeLimitExceeded(WeilFormsError, RuntimeError):
    """The ellipsoid traversal visited more nodes than its budget allows."""
