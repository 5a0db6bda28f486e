"""Exception types shared across the package."""


class WaveguideError(Exception):
    """Base class for all package-specific errors."""


class InvalidMode(WaveguideError):
    """Mode indices or family are not admissible for the geometry."""


class InvalidFrame(WaveguideError):
    """The requested reference frame is not defined for this mode."""


class OutOfCrossSection(WaveguideError):
    """A sample point lies outside the guide cross-section."""


class UndefinedElectrode(WaveguideError):
    """The electrode or electrode pair carries no definition for this mode."""


class StencilOutOfBounds(WaveguideError):
    """A finite-difference stencil would sample outside the valid domain."""


class GridTooCoarse(WaveguideError):
    """Quadrature grid violates the minimum sampling density precondition."""


class DegenerateWavevector(WaveguideError):
    """Longitudinal wavenumber beta = 0: phase velocity and every 1/beta
    closed form are undefined."""


class DegenerateScale(WaveguideError):
    """Scaling factor alpha = 0 would destroy the canonical pair."""
