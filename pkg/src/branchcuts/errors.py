"""Exception hierarchy shared by every layer of the package."""


class BranchCutError(Exception):
    """Base class for all errors raised by branchcuts."""


class ParseError(BranchCutError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownFunction(BranchCutError):
    pass


class NotPolynomial(BranchCutError):
    pass


class PoleOrSingularity(BranchCutError):
    pass


class EngineLimit(BranchCutError):
    pass


class InversionFailure(BranchCutError):
    pass


class EmptyInWindow(BranchCutError):
    pass


class InsufficientSamples(BranchCutError):
    pass
