"""Exception types raised by the library."""


class TorusError(ValueError):
    """Base class for all library errors."""


class ModulusError(TorusError):
    """The modulus is outside the range an operation accepts."""


class ModulusTooSmall(ModulusError):
    pass


class BadModulus(ModulusError):
    pass


class EvenModulus(ModulusError):
    pass


class OddModulus(ModulusError):
    pass


class MixedModulus(TorusError):
    pass


class IllFormedTriple(TorusError):
    def __init__(self, vertex, triple):
        super().__init__(f"triple {triple} at {vertex} is not a permutation of (0,1,2)")
        self.vertex = vertex
        self.triple = triple


class NotAPermutation(TorusError):
    """A map that was expected to be bijective has a collision."""

    def __init__(self, v1, v2, image):
        super().__init__(f"{v1} and {v2} both map to {image}")
        self.v1 = v1
        self.v2 = v2
        self.image = image


class SupportNotClosed(TorusError):
    def __init__(self, member, image):
        super().__init__(f"support contains {member} but not its Kempe image {image}")
        self.member = member
        self.image = image


class SameColor(TorusError):
    pass


class StepNotUnit(TorusError):
    pass


class PartitionViolation(TorusError):
    pass


class UnclassifiedDefect(TorusError):
    pass


class NoReturn(TorusError):
    def __init__(self, lane, steps):
        super().__init__(f"lane {lane} did not return to the transversal within {steps} steps")
        self.lane = lane
        self.steps = steps


class BlockMismatch(TorusError):
    pass


class UnsupportedFormat(TorusError):
    pass
