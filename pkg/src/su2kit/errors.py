"""Exception types shared across the library."""


class Su2KitError(Exception):
    """Base class for all library errors."""


class AxisUndefined(Su2KitError):
    """Rotation axis is not determined (identity or its negative)."""


class GibbsSingularity(Su2KitError):
    """Gibbs-vector chart hit a pi-rotation, where it blows up."""


class ChartSingular(Su2KitError):
    """Coordinate chart evaluated at (or too close to) a singular locus."""


class ResolutionMismatch(Su2KitError):
    """Grid functions defined on incompatible quadrature grids."""


class RankOutOfRange(Su2KitError):
    """Tensor rank l outside the admissible window 0 <= l <= 2j."""


class LabelOutOfRange(Su2KitError):
    """Magnetic labels m, n outside |m|, |n| <= j."""


class QuadratureFailure(Su2KitError):
    """Adaptive quadrature failed to converge to requested accuracy."""


class StepUnstable(Su2KitError):
    """Time step violates the advection stability bound."""


class NotInIdeal(Su2KitError):
    """Function is not (within tolerance) in the requested spectral block."""


class WindowInvalid(Su2KitError):
    """Quasiclassical j-window violates its validity flags."""
