"""Exception types shared across the package."""


class QdilogError(Exception):
    """Base class for domain errors raised by this package."""


class PoleError(QdilogError):
    """A rational function was evaluated at a zero of its denominator."""


class TwoCycleError(QdilogError):
    """An operation requires no 2-cycle through the chosen vertex."""


class FrozenVertexError(QdilogError):
    """Mutation was requested at a frozen vertex."""


class SignCoherenceError(QdilogError):
    """A c-vector with mixed signs was encountered.

    This must never happen along mutation sequences starting from a framed
    quiver; if raised, it indicates a bug and is treated as a test failure.
    """


class GuardError(QdilogError):
    """A brute-force enumeration exceeded its configured size guard."""


class GenericityError(QdilogError):
    """A central charge failed the genericity requirement."""


class TruncationError(QdilogError):
    """A truncation depth outside the supported range was requested."""
