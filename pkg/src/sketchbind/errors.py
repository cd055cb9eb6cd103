"""Exception types shared by every kernel module.

Everything raised on purpose by the kernel derives from :class:`KernelError`,
so the replayer and the CLI can catch a single base class and report the
failing command instead of crashing.
"""

from __future__ import annotations


class KernelError(Exception):
    """Base class for all intentional kernel failures."""


# -- tabular ----------------------------------------------------------------

class EmptyInput(KernelError):
    """CSV input has no header row."""


class RaggedRows(KernelError):
    """A CSV data row does not match the header length."""


class DuplicateColumn(KernelError):
    """Two CSV columns share a name (case-sensitive)."""


class MissingNumeric(KernelError):
    """Empty cell inside a quantitative column."""


class UnknownDimension(KernelError):
    pass


class UnknownDataset(KernelError):
    pass


class IndexOutOfRange(KernelError):
    pass


# -- scene ------------------------------------------------------------------

class DegenerateStroke(KernelError):
    """Fewer than two points, all points identical, or non-finite coordinates."""


class UnknownObject(KernelError):
    pass


class DuplicateId(KernelError):
    """An explicit object id collides with an existing object or scribble."""


class NonPositiveHeight(KernelError):
    pass


class ZeroCurrentHeight(KernelError):
    """Cannot rescale a degenerate (zero-extent) object."""


class NonPositiveWidth(KernelError):
    pass


class ZeroCurrentWidth(KernelError):
    pass


# -- modifiers ---------------------------------------------------------------

class FillOnOpenStroke(KernelError):
    pass


class OpenStroke(KernelError):
    """Shape beautification requires a closed stroke."""


class DuplicateModifierKind(KernelError):
    pass


class NoSuchModifier(KernelError):
    pass


class TypeMismatch(KernelError):
    """Categorical dimension mapped onto a quantitative channel."""


class EmptyDimension(KernelError):
    """The dimension has no usable maximum to build a scale from."""


# -- activators ---------------------------------------------------------------

class DuplicateActivator(KernelError):
    pass


class NoSuchActivator(KernelError):
    pass


class ReplicateWithoutBinding(KernelError):
    """Replicate requires at least one data-bound persistent modifier."""


class DistributeSpanTooSmall(KernelError):
    """The tool stroke must cross at least two other objects."""


class InkNotAttached(KernelError):
    pass


class PushNotAttached(KernelError):
    pass


class ReplicateNotAttached(KernelError):
    pass


class NegativeDrag(KernelError):
    pass


class DistributeNotAttached(KernelError):
    pass


class CollapsedSpan(KernelError):
    """Left handle placed at or past the right handle."""


class SortNotAttached(KernelError):
    pass


class SortNotBound(KernelError):
    pass


class UnmappedMark(KernelError):
    """A span object has no record index to sort by."""


# -- script -------------------------------------------------------------------

class ParseError(KernelError):
    """Script rejected; parsing stops at the first offense."""

    def __init__(self, line: int, column: int, message: str, token: str = ""):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.token = token


class ReplayError(KernelError):
    """A command failed during replay; wraps the module error."""

    def __init__(self, index: int, cause: KernelError):
        super().__init__(f"command {index}: {cause}")
        self.index = index
        self.cause = cause


class DataFileNotFound(KernelError):
    """A `load data` path resolves to no registered name and no readable file."""
