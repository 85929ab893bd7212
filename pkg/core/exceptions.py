"""Exception hierarchy for SCQR"""


class ScqrError(Exception):
    """Base class for all SCQR errors"""


class DomainError(ScqrError, ValueError):
    """An argument lies outside the domain of the operation"""


class ContractError(ScqrError, ValueError):
    """A precondition between arguments does not hold (dimensions, sizes)"""


class NumericalError(ScqrError, ArithmeticError):
    """A computation produced a non-finite value or a singular system"""
