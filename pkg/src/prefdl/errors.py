"""Exception hierarchy. Every domain error derives from :class:`PrefDLError`."""


class PrefDLError(Exception):
    """Base class for all errors raised by prefdl."""


class ParseError(PrefDLError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UndeclaredSymbolError(ParseError):
    pass


class SymbolTableError(PrefDLError):
    pass


class ModelError(PrefDLError):
    pass


class WorldSetMismatchError(ModelError):
    pass


class GraphError(PrefDLError):
    pass


class InconsistentFormulaError(PrefDLError):
    pass


class VacuousRevisionError(InconsistentFormulaError):
    """Revision by a formula that no world of the model satisfies."""


class UnknownOperatorError(PrefDLError):
    pass


class InvariantViolationError(PrefDLError):
    """A plugged-in operator or transformation broke its contract."""


class BoundExceededError(PrefDLError):
    pass
