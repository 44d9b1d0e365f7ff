"""Exception types shared across the package."""


class WcalgError(Exception):
    """Base class for all package errors."""


class ContextMismatchError(WcalgError):
    """Two elements built under different algebra contexts were combined."""


class DomainError(WcalgError):
    """An element is outside the domain an operation is defined on
    (e.g. Clifford factors passed to a Weyl-only pairing)."""


class ParityError(WcalgError):
    """A parity-homogeneous element was required but an inhomogeneous one given."""


class IndexRangeError(WcalgError):
    """A generator index lies outside 1..n for the active context."""


class ResourceLimitError(WcalgError):
    """A computation would exceed the configured monomial cap."""


class ParseError(WcalgError):
    """Syntax error in the expression or diagram language.

    Carries the character offset at which scanning failed.
    """

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class RewriteError(WcalgError):
    """The diagram rewriter could not make progress (guard tripped or no rule)."""
