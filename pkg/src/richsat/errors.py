"""Exception types raised across the package."""


class RichsatError(Exception):
    """Base class for all errors raised by richsat."""


class ParseError(RichsatError, ValueError):
    """Malformed textual input (dimension vector, prime, range)."""


class NonNilpotent(RichsatError, ArithmeticError):
    """A matrix expected to be nilpotent has no vanishing power."""


class NotRichardson(RichsatError, ValueError):
    """An element passed where x(d) was required is something else."""


class Unsupported(RichsatError):
    """The requested construction is only known for fewer Levi roots."""


class CaseVacuous(RichsatError):
    """The side conditions of a case admit no instance at this rank."""


class WrongArity(RichsatError, ValueError):
    """Wrong number of projective points for a parametrized family."""


class PreconditionViolated(RichsatError):
    """The restricted nullcone is not all of u, so maximality is not decidable here."""


class CapExceeded(RichsatError):
    """The quotient c/z is too large for exhaustive subspace enumeration."""
