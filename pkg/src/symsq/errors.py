class SymSqError(Exception):
    """Base class for every error raised by the package."""


class MalformedInputError(SymSqError, ValueError):
    pass


class ParityError(SymSqError, ValueError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(
            f"symmetric squaring over Z needs an even degree, got k={degree}: the swap "
            "reverses the orientation of k-by-k product cells when k is odd, so the "
            "quotient cells carry no canonical orientation; use Z2 coefficients instead"
        )


class NotACycleError(SymSqError, ValueError):
    """A chain that had to be a (relative) cycle is not one; ``boundary`` holds its boundary."""

    def __init__(self, message, boundary=None):
        self.boundary = boundary
        super().__init__(message)


class StructureError(SymSqError, ValueError):
    pass


class OrientationError(SymSqError, ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ResourceGuardError(SymSqError, RuntimeError):
    pass
