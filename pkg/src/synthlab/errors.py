"""Exception taxonomy for the laboratory.

Argument errors (bad shapes, out-of-range parameters, mismatched dimensions)
raise plain ``ValueError``.  Everything that can only be detected while
computing derives from :class:`SynthlabError` so callers can distinguish
"you called it wrong" from "the computation could not deliver".
"""

from __future__ import annotations


class SynthlabError(Exception):
    """Base class for failures detected during a computation."""


class CoveringError(SynthlabError):
    """No covering with the requested geometry exists for this input.

    Raised e.g. when every admissible block diameter window is empty
    (cloud diameter at or below ``delta / p_constant``) or an undersized
    block cannot be augmented without leaving the window.
    """


class NumericError(SynthlabError):
    """A numerical routine failed to converge or lost too much accuracy.

    Carries enough context in the message to identify the routine and the
    achieved (insufficient) tolerance.
    """


class AccuracyError(SynthlabError):
    """A requested approximation target was not met.

    Raised by interpolation constructors when the control-lattice defect
    exceeds the stated budget, e.g. a trigonometric interpolant of a
    distance power that undersamples the point set.
    """


class PreconditionError(SynthlabError):
    """A mathematical hypothesis of an experiment fails on the given data.

    Distinct from ``ValueError``: the arguments are well-formed, but a
    property the experiment's conclusion relies on (a decay condition,
    commutativity of a family) does not hold.
    """


class NotGeneralizedScalarError(NumericError):
    """Growth of ``exp(itA)`` is not polynomially bounded on the fit window.

    Raised when the spectrum of ``A`` is far enough from the real axis that
    the exponential growth would overflow or drown the polynomial fit.
    """


class ResourceError(SynthlabError):
    """A generator or experiment would exceed its declared size budget."""
