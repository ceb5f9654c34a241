"""Exception hierarchy shared across the package.

DataError and its subclasses map to CLI exit code 2; everything else under
PersqError maps to exit code 3.
"""


class PersqError(Exception):
    """Base class for all package errors."""


class DataError(PersqError):
    """Problems with input data: schema, row contents, empty datasets."""


class SchemaError(DataError):
    """A file is missing a mandatory column or has an unusable header."""


class RowError(DataError):
    """A row failed to parse or violated a declared range."""

    def __init__(self, file, line, column, message):
        self.file = str(file)
        self.line = line
        self.column = column
        super().__init__(f"{self.file}:{line}: column '{column}': {message}")


class DomainError(DataError):
    """Arguments outside an operation's mathematical domain."""


class EmptyDatasetError(DataError):
    """Every user was excluded or no input data was found."""


class EncodeError(DataError):
    """A day record lacks a variable required by the feature schema."""


class ShapeError(PersqError):
    """Array dimensions are inconsistent with the model architecture."""


class StateError(PersqError):
    """Operation invoked on an object in the wrong state (unfitted scaler,
    stale forward cache, model without scaler)."""


class DivergenceError(PersqError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch, message="non-finite loss"):
        self.epoch = epoch
        super().__init__(f"{message} at epoch {epoch}")


class CheckpointError(PersqError):
    """A model checkpoint is malformed or dimension-inconsistent."""
