from typing import Optional


class MIOCPError(Exception):
    pass


class SpecValidationError(MIOCPError, ValueError):

    def __init__(self, message: str, field: str = "", k: Optional[int] = None):
        self.field = field
        self.k = k
        super().__init__(message)


class ConfigFormatError(MIOCPError, ValueError):

    def __init__(self,
                 message: str,
                 field: str = "",
                 line: Optional[int] = None,
                 column: Optional[int] = None):
        self.field = field
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f" (line {line}, column {column})"
        elif field:
            location = f" (field '{field}')"
        super().__init__(f"{message}{location}")


class DimensionMismatchError(MIOCPError, ValueError):
    pass


class NotPositiveDefiniteError(MIOCPError, ValueError):
    pass


class NumericalError(MIOCPError, ArithmeticError):

    def __init__(self,
                 message: str,
                 iteration: Optional[int] = None,
                 k: Optional[int] = None):
        self.detail = message
        self.iteration = iteration
        self.k = k
        tags = []
        if iteration is not None:
            tags.append(f"iteration {iteration}")
        if k is not None:
            tags.append(f"k={k}")
        suffix = f" [{', '.join(tags)}]" if tags else ""
        super().__init__(f"{message}{suffix}")


class RegressionError(MIOCPError, ValueError):
    pass
