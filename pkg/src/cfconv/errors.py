"""Exception hierarchy shared by every module."""


class CFError(Exception):
    """Base class for all errors raised by cfconv."""


class ZeroPartialNumerator(CFError):
    """A partial numerator evaluated to zero, which makes the fraction finite."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"partial numerator a_{index} is zero")


class IndexOutOfRange(CFError):
    def __init__(self, index, length):
        self.index = index
        self.length = length
        super().__init__(f"index {index} outside sequence of length {length}")


class TransformUndefined(CFError):
    """Equivalence transform needs b_n != 0."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"equivalence transform undefined: b_{index} = 0")


class ContractionUndefined(CFError):
    def __init__(self, kind, index, k=None):
        self.kind = kind
        self.index = index
        self.k = k
        where = f" (needed for element {k})" if k is not None else ""
        super().__init__(f"{kind} part undefined: b_{index} = 0{where}")


class WrongForm(CFError):
    """The criterion needs unit partial denominators."""


class InvalidParameter(CFError):
    pass


class InexactError(CFError):
    """The exact backend cannot represent a value (e.g. an irrational root)."""


class SpecError(CFError):
    pass


class SpecSyntaxError(SpecError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        self.bare_message = message
        super().__init__(f"line {line}, column {column}: {message}")


class SpecSemanticError(SpecError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        self.bare_message = message
        super().__init__(f"line {line}, column {column}: {message}")


class SpecEvalError(SpecError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message if index is None else f"{message} (at n={index})")
