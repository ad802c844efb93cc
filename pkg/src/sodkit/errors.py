"""Exception types raised by the engine."""


class SodkitError(Exception):
    """Base class for engine errors."""


class DimensionError(SodkitError, ValueError):
    """Shapes or sizes do not fit the requested operation."""


class NotSquarefree(SodkitError, ValueError):
    pass


class InvalidAlgebra(SodkitError, ValueError):
    """Structure constants violate associativity or the unit law."""


class NotAutomorphism(SodkitError, ValueError):
    pass


class NotSemisimple(SodkitError):
    """The algebra has a nonzero Jacobson radical."""


class UnsupportedCenter(SodkitError):
    """A center field has a real place of degree > 1 over Q."""


class InvalidDescriptor(SodkitError, ValueError):
    pass
