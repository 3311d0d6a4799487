"""Exception types shared across the package."""


class TripartitionError(Exception):
    pass


class EdgeNotPresent(TripartitionError, KeyError):
    pass


class BadNeighbors(TripartitionError, ValueError):
    pass


class ParseError(TripartitionError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Singular(TripartitionError, ArithmeticError):
    pass


class BadPrime(TripartitionError, ArithmeticError):
    pass


class MissingCoordinates(TripartitionError, KeyError):
    pass


class DegenerateSample(TripartitionError):
    """Repeated sampling never produced a realization with the required ranks."""


class NotMinimallyRigid(TripartitionError):
    pass


class NotSpanningTree(TripartitionError, ValueError):
    pass


class NotAPartition(TripartitionError, ValueError):
    pass


class InternalAssertionFailed(TripartitionError, AssertionError):
    """A step that must succeed for valid input did not. Indicates a bug."""


class GenerationStalled(TripartitionError):
    pass
