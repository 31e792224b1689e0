"""Exception types shared across the package."""


class TropError(Exception):
    """Base class for all library errors."""


class ArityError(TropError):
    """An operation was given data of the wrong or an unsupported arity."""


class ParseError(TropError):
    """Syntax error in a value, point, or polynomial literal."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class DegenerateRelationError(TropError):
    """A binomial relation with no variable to eliminate."""


class ChainError(TropError):
    """A variety chain violates strictness or is missing a required relation."""


class InadmissibleError(TropError):
    """An operation that requires an admissible set was given an inadmissible one."""


class InternalContradiction(TropError):
    """An invariant the theory guarantees was violated; indicates a bug."""
