"""Exception taxonomy shared across the package.

Input/shape problems (parsing, resolution, bounds) derive from InputError;
refusals of an analysis that cannot be certified derive from AnalysisRefused.
The CLI maps InputError to exit code 2 and AnalysisRefused to exit code 1.
"""


class StagedPathsError(Exception):
    """Base class for all package errors."""


class InputError(StagedPathsError):
    """Malformed or unresolvable input (exit code 2 in the CLI)."""


class DslSyntaxError(InputError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ResolutionError(InputError):
    """A name does not resolve to a declared vertex/edge/ray/block."""


class DuplicateIdError(InputError):
    """The same identifier is declared twice in one scope."""


class UnknownVertex(InputError):
    pass


class BoundsError(InputError):
    pass


class InvalidGraph(InputError):
    """A graph failed validation and an operation requiring validity was called."""


class CompositionMismatch(InputError):
    """Path concatenation with source(left) != range(right)."""


class IndexBelowMin(InputError):
    pass


class AnalysisRefused(StagedPathsError):
    """A certification was requested that the engine refuses to fake (exit 1)."""


class NotPrincipal(AnalysisRefused):
    pass


class NotEquivalent(AnalysisRefused):
    """Two infinite paths are not shift equivalent."""


class NotComposable(AnalysisRefused):
    pass


class NotUnique(AnalysisRefused):
    """More than one candidate path exists where exactly one was required."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class NoPath(AnalysisRefused):
    pass


class SliceTooSmall(AnalysisRefused):
    pass


class DenominatorNotExact(AnalysisRefused):
    """The limit path's orbit count is infinite or budget-limited."""


class NonExactCount(AnalysisRefused):
    """A family member's orbit count did not terminate Exact."""


class NoOrbitConvergence(AnalysisRefused):
    """The family does not converge to the limit's orbit (k=1 criterion fails)."""


class StrengthNotCertified(AnalysisRefused):
    pass


class EmpiricalOnly(AnalysisRefused):
    """Closed-form output was requested from a merely empirical window."""


class NonUniformFamily(AnalysisRefused):
    """A structural decision was requested for a family without uniform shape."""
