"""Exception types shared across the library.

Branch-cut hits and singular kernel arguments are rejected loudly rather
than silently resolved: a quietly wrong square-root sign is much harder to
debug than an exception.
"""


class SourceWaveError(Exception):
    """Base class for all library errors."""


class DomainError(SourceWaveError):
    """Argument outside the mathematical domain of an operation
    (non-finite input, x < 0 where a formula only holds on x >= 0, ...)."""


class BranchCutError(DomainError):
    """Evaluation exactly on a branch cut or at a branch point."""


class GeometryError(SourceWaveError):
    """State and grid are geometrically incompatible (support outside the
    grid, tails truncated above tolerance, unresolved well, ...)."""


class GridOverflowError(SourceWaveError):
    """Probability density reached the edge of a periodic grid above the
    configured monitor threshold.  Carries the partial evolution record
    (if any) in ``record``."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class SingularKernelError(SourceWaveError):
    """Kernel evaluated at its singular point (t == t'); the delta-function
    limit must be handled by the caller."""


class RecordTooShortError(SourceWaveError):
    """A reconstruction was requested beyond the recorded signal duration."""


class ScenarioFormatError(SourceWaveError):
    """Scenario file violates the documented schema."""


class NotSupportedError(SourceWaveError):
    """Requested configuration is recognised but deliberately unsupported
    (e.g. attractive wells in bound-state-sensitive reconstructions)."""
