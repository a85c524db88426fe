"""Exception types shared across the package."""


class DefectChargesError(Exception):
    """Base class for all package errors."""


class UnboundSymbolError(DefectChargesError):
    """A generator appearing in a polynomial has no numeric binding."""


class OmegaNotDifferentiableError(DefectChargesError):
    """Total x-derivative was asked for a radical-bearing polynomial."""


class NotUnitSeriesError(DefectChargesError):
    """Series logarithm/reciprocal requires a unit constant term."""


class SingularLeadingTermError(DefectChargesError):
    """Matrix series inverse requires an invertible leading determinant."""


class DegenerateEigenvaluesError(DefectChargesError):
    """Projector decomposition is undefined when the two eigenvalues agree."""


class InvalidParamsError(DefectChargesError):
    """Defect specification violates its class constraints."""


class UnknownClassError(DefectChargesError):
    """Reduction class is not one of I, II, III."""


class WrongClassError(DefectChargesError):
    """Operation restricted to a particular reduction class."""


class WrongModelError(DefectChargesError):
    """Operation restricted to a particular model."""


class WrongPolarityError(DefectChargesError):
    """Time-part defect equations used with the wrong V polarity in lambda."""


class OrderUnavailableError(DefectChargesError):
    """Requested expansion order exceeds what was computed."""


class OverlappingDefectsError(DefectChargesError):
    """Composed defects must sit at strictly increasing locations."""


class QuadratureUnderflowError(DefectChargesError):
    """Field tails at the domain edges are too large for the quadrature."""


class BlowUpError(DefectChargesError):
    """Backlund ODE integration hit a vanishing/negative radicand."""


class StepSizeTooCoarseError(DefectChargesError):
    """Transition-matrix integration error estimate above tolerance."""


class ConfigError(DefectChargesError):
    """Malformed run configuration."""


class NotExactError(DefectChargesError):
    """Polynomial is not a total x-derivative."""
