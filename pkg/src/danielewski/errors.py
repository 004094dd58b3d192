"""Exception hierarchy shared by all modules."""


class DanielewskiError(Exception):
    """Base class for every error raised by this package."""


class InputError(DanielewskiError, ValueError):
    """Malformed or out-of-contract input."""


class ParseError(InputError):
    pass


class SimpleZerosError(InputError):
    """p(z) has a repeated root; ``witness`` is gcd(p, p')."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ResidueError(DanielewskiError, ArithmeticError):
    """A Laurent result did not clear to a polynomial.

    ``residue`` holds the offending negative-exponent part.
    """

    def __init__(self, residue):
        super().__init__(f"uncleared negative exponents: {residue}")
        self.residue = residue


class MoveError(DanielewskiError, ValueError):
    """A graph modification was applied where its precondition fails."""


class ValidationError(DanielewskiError, ValueError):
    """A vector-field family parameter set violates a defining condition."""

    def __init__(self, condition, witness=None):
        msg = condition if witness is None else f"{condition}; witness: {witness}"
        super().__init__(msg)
        self.condition = condition
        self.witness = witness


class DegreeError(ValidationError):
    pass


class CapError(DanielewskiError, RuntimeError):
    """Bounded search exhausted without a decision (inconclusive)."""
