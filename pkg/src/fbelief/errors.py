"""Exception hierarchy shared by all fbelief modules."""


class EvidenceError(Exception):
    """Base class for all domain errors raised by this package."""


class MalformedDocument(EvidenceError):
    """A BPA document is not valid JSON or violates the schema."""


class UnknownElement(EvidenceError):
    """A focal-set label or position does not belong to the frame."""


class EmptyFocalSet(EvidenceError):
    """A mass entry is keyed by the empty set."""


class MassOutOfRange(EvidenceError):
    """A mass value lies outside [0, 1]."""


class NotNormalized(EvidenceError):
    """Masses do not sum to 1 within the accepted tolerance."""


class FrameTooLarge(EvidenceError):
    """The frame exceeds the size limit of the requested operation."""


class EmptySetQuery(EvidenceError):
    """A belief/plausibility/commonality query was made with the empty set."""


class NotSingleton(EvidenceError):
    """A single-element focal set was required."""


class NotThreeElementFrame(EvidenceError):
    """The parametrized split step only applies to 3-element frames."""


class ParamOutOfRange(EvidenceError):
    """A numeric parameter violates its admissible range."""


class TotalConflict(EvidenceError):
    """Dempster combination is undefined: the sources fully contradict."""


class FrameMismatch(EvidenceError):
    """Two mass assignments do not share the same frame."""


class JointFrameTooLarge(EvidenceError):
    """A product frame exceeds the supported size."""


class TooManyFocalElements(EvidenceError):
    """The sparse entropy evaluator supports at most 20 focal elements."""


class UnsupportedDecomposition(EvidenceError):
    """The measure has no defined non-specificity component."""


class UnknownExperiment(EvidenceError):
    """The experiment name is not in the registry."""


class InvalidParam(EvidenceError):
    """An experiment parameter has an unknown name or a bad value."""


class RenormalizedMassWarning(UserWarning):
    """Masses summed to 1 only within the loose tolerance and were rescaled."""
