"""Exception hierarchy shared by all modules."""


class IMarkError(Exception):
    pass


class InvalidSpec(IMarkError, ValueError):
    pass


class EmptySet(InvalidSpec):
    pass


class InvalidSubtraction(InvalidSpec):
    pass


class InvalidDivisor(InvalidSpec):
    pass


class PreconditionViolated(IMarkError, ValueError):
    pass


class SpecMismatch(IMarkError, ValueError):
    pass


class OutOfRange(IMarkError, IndexError):
    pass


class ResourceLimit(IMarkError, MemoryError):
    pass


class Overflow(IMarkError, OverflowError):
    pass


class CorruptFile(IMarkError, ValueError):
    pass
