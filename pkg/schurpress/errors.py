class SchurpressError(Exception):
    pass


class InvalidArgument(SchurpressError, ValueError):
    pass


class UnsupportedOperation(SchurpressError):
    pass


class InternalError(SchurpressError):
    pass


class ResourceLimit(SchurpressError):
    pass


class OutOfRange(InvalidArgument):
    def __init__(self, name: str, value: float, low: float, high: float):
        super().__init__(f"{name} must lie in [{low}, {high}]. Got: {value}")
