"""Exception hierarchy shared across the package."""


class RbmElmError(Exception):
    """Base class for all errors raised by this package."""


class NumericFailure(RbmElmError, ArithmeticError):
    """A numeric routine failed to converge or produced non-finite values."""

    def __init__(self, message, *, shape=None, epoch=None, batch=None):
        super().__init__(message)
        self.shape = shape
        self.epoch = epoch
        self.batch = batch


class DimensionError(RbmElmError, ValueError):
    """Operand shapes are incompatible."""


class DatasetError(RbmElmError, ValueError):
    """Base class for dataset ingestion and splitting problems."""


class MissingFileError(DatasetError, FileNotFoundError):
    pass


class RaggedRowError(DatasetError):
    def __init__(self, path, row, found, expected):
        super().__init__(f"{path}: row {row} has {found} fields, expected {expected}")
        self.row = row


class NonNumericFieldError(DatasetError):
    def __init__(self, path, row, column, value):
        super().__init__(f"{path}: row {row}, column {column}: cannot parse {value!r} as a number")
        self.row = row
        self.column = column


class SingleClassError(DatasetError):
    pass


class UnknownLabelError(DatasetError, KeyError):
    def __init__(self, label):
        super().__init__(f"unknown label {label!r}")
        self.label = label

    def __str__(self):
        return self.args[0]


class EmptyPartitionError(DatasetError):
    pass


class ConfigError(RbmElmError, ValueError):
    """Invalid experiment configuration."""


class PairingError(RbmElmError, ValueError):
    """Trial reports cannot be paired across algorithms."""


class InsufficientDataError(RbmElmError, ValueError):
    """Too few usable observations for a statistical test."""
