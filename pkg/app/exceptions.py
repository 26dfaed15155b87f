"""Custom exceptions for the collinear toolkit"""


class CollinearException(Exception):
    """Base exception for the collinear toolkit"""

    exit_code = 1


class InputError(CollinearException):
    """Raised when input data cannot be read"""

    exit_code = 2


class NumericalError(CollinearException):
    """Raised when a computation fails numerically"""

    exit_code = 3


class ArgumentError(CollinearException):
    """Raised when user-supplied arguments are inconsistent"""

    exit_code = 4


# Input errors

class ParseError(InputError):
    """Raised when a CSV cell is blank or not numeric"""

    def __init__(self, row: int, col: str, value: str = ""):
        self.row = row
        self.col = col
        self.value = value
        super().__init__(f"Cannot parse value {value!r} at row {row}, column {col!r}")


class MissingColumn(InputError):
    """Raised when a requested column is absent"""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"Column {column!r} not found")


class DuplicateName(InputError):
    """Raised when a header repeats a column name"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Duplicate column name {name!r}")


class UnknownFixture(InputError):
    """Raised when an embedded fixture name is not known"""
    pass


class EmptyDataset(InputError):
    """Raised when a data file has no rows or no predictors"""
    pass


# Numerical errors

class NotPositiveDefinite(NumericalError):
    """Raised when a symmetric factorization meets a non-positive pivot"""

    def __init__(self, pivot_index: int, pivot: float):
        self.pivot_index = pivot_index
        self.pivot = pivot
        super().__init__(
            f"Matrix is not positive definite (pivot {pivot_index} = {pivot:.3e})"
        )


class SingularDesign(NumericalError):
    """Raised when XᵀX of a design cannot be factorized"""

    def __init__(self, columns, reason: str = ""):
        self.columns = tuple(columns)
        suffix = f": {reason}" if reason else ""
        super().__init__(f"Singular design for columns {list(self.columns)}{suffix}")


class ZeroVariance(NumericalError):
    """Raised when a predictor column is constant"""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"Column {column!r} has zero variance")


class ApcInfeasible(NumericalError):
    """Raised when no sign assignment makes a group all-positively correlated"""

    def __init__(self, group):
        self.group = tuple(group)
        super().__init__(
            f"No all-positive-correlation arrangement exists for group {list(self.group)}"
        )


# Argument errors

class WeightNormalizationError(ArgumentError):
    """Raised when effect weights do not satisfy sum(|w|) = 1"""
    pass


class DimensionMismatch(ArgumentError):
    """Raised when a vector has the wrong length"""

    def __init__(self, expected: int, got: int, what: str = "vector"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} has length {got}, expected {expected}")


class ColumnsMissing(ArgumentError):
    """Raised when an effect refers to columns absent from a fit"""

    def __init__(self, columns):
        self.columns = tuple(columns)
        super().__init__(f"Columns not in fitted model: {list(self.columns)}")


class NotNested(ArgumentError):
    """Raised when a partial F test is asked for non-nested fits"""
    pass


class TooManyGroups(ArgumentError):
    """Raised when all-subsets enumeration would explode"""

    def __init__(self, groups: int, limit: int):
        self.groups = groups
        self.limit = limit
        super().__init__(f"{groups} groups exceed the enumeration limit of {limit}")


class InsufficientRows(ArgumentError):
    """Raised when a fit has no residual degrees of freedom"""

    def __init__(self, rows: int, parameters: int):
        self.rows = rows
        self.parameters = parameters
        super().__init__(f"{rows} rows cannot fit {parameters} parameters")


class InvalidSpec(ArgumentError):
    """Raised when an effect spec or points file is malformed"""
    pass
