"""Exception hierarchy.

All package-specific failures derive from QuftsError so callers (and the
CLI) can distinguish domain errors from programming errors.
"""


class QuftsError(Exception):
    """Base class for all package errors."""


class ConfigError(QuftsError):
    """Invalid or unknown configuration key/value."""


# --- line list parsing ------------------------------------------------------

class RecordTooShort(QuftsError):
    """Fixed-width record shorter than the required 160 characters."""

    def __init__(self, length: int, record_index: int = 0):
        self.length = length
        self.record_index = record_index
        super().__init__(
            f"record {record_index}: {length} characters, need at least 160"
        )


class FieldParseError(QuftsError):
    """A fixed-width numeric field failed to parse."""

    def __init__(self, field: str, columns: str, text: str, record_index: int = 0):
        self.field = field
        self.columns = columns
        self.record_index = record_index
        super().__init__(
            f"record {record_index}: field {field!r} (columns {columns}) "
            f"unparseable from {text!r}"
        )


class EmptyLineList(QuftsError):
    """A line list with no lines."""


# --- profiles and grids -----------------------------------------------------

class DegenerateWidths(QuftsError):
    """Voigt profile requested with both half-widths zero."""


class GridNotUniform(QuftsError):
    """Wavenumber grid is not strictly increasing with a uniform step."""


class DomainError(QuftsError):
    """Argument outside the mathematically valid domain."""


class GridOutsideSupport(QuftsError):
    """Grid captures (almost) none of the spectral shape's area."""


# --- interferograms ---------------------------------------------------------

class GridMismatch(QuftsError):
    """Two inputs that must share a grid do not."""


class NyquistViolation(QuftsError):
    """OPD step too coarse for the highest active wavenumber."""


class AxisMismatch(QuftsError):
    """Interferograms to combine have different OPD axes or configs."""


class NonUniformAxis(QuftsError):
    """OPD axis is not uniformly sampled."""


# --- retrieval --------------------------------------------------------------

class EmptyValidBand(QuftsError):
    """Reference spectrum has no region above the validity threshold."""


class WindowOutsideBand(QuftsError):
    """Requested wavenumber window is not inside the valid band."""


class KernelWiderThanBand(QuftsError):
    """Instrument line shape kernel is longer than the model band."""


class SingularNormalMatrix(QuftsError):
    """Least-squares normal matrix is singular; parameters unconstrained."""
