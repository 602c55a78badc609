class IhvaError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(IhvaError, ValueError):
    pass


class GenerationError(IhvaError, RuntimeError):
    pass


class GraphParseError(IhvaError, ValueError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class DisconnectedGraphError(IhvaError, ValueError):
    pass


class ResourceError(IhvaError, MemoryError):
    """Requested problem size exceeds a configured guard."""


class NumericalError(IhvaError, ArithmeticError):
    pass
