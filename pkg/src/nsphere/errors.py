"""Exception types shared across the package."""


class NsphereError(Exception):
    """Base class for all package-specific errors."""


class DegenerateInput(NsphereError):
    """A zero-probability degenerate configuration was encountered."""


class DimensionTooLarge(NsphereError):
    """Requested dimension exceeds what the method can handle."""


class UnsupportedDimension(NsphereError):
    """The (method, dimension) combination is not valid."""


class TooFewSamples(NsphereError):
    """Not enough data points for the requested statistical test."""


class BinsTooFine(NsphereError):
    """Binning would leave fewer than the minimum expected count per bin."""
