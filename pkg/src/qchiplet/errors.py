"""Exception hierarchy shared by all qchiplet modules."""


class QChipletError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(QChipletError):
    """Operand dimensions are incompatible or not a power of two."""


class DimensionLimitError(QChipletError):
    """A dense operator would exceed the configured dimension cap."""


class PlacementError(QChipletError):
    """Gate placement references overlapping or out-of-range qubits."""


class UnknownGateError(QChipletError):
    """Gate name is not in the library."""


class ParameterError(QChipletError):
    """Gate parameter count or value out of range."""


class DegenerateStateError(QChipletError):
    """Operation on a zero vector or empty polynomial."""


class LabelError(QChipletError):
    """Qubit label missing or duplicated."""


class AssignmentError(QChipletError):
    """Numeric evaluation is missing a symbol binding."""


class UnsupportedGateError(QChipletError):
    """Gate has no symbolic substitution rule."""


class LibraryError(QChipletError):
    """Chiplet library name collision or missing entry."""


class ConfigError(QChipletError):
    """Invalid run configuration."""


class DocumentError(QChipletError):
    """Circuit document failed to parse or validate.

    ``location`` pinpoints the offending field, e.g. ``program[3].gate``.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ScriptError(QChipletError):
    """QPR script directive failed; carries the line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
