"""Exception types shared across the package.

Everything raised on bad data derives from DataError so callers (and the
CLI) can map validation failures to a single exit path.
"""


class QTorusError(Exception):
    """Base class for all package errors."""


class DataError(QTorusError, ValueError):
    """Invalid data: wrong shape, broken symmetry, unparseable input."""


class DimensionError(DataError):
    pass


class SymmetryError(DataError):
    """Grid fails the point symmetry z[-k,-l] = conj(z[k,l])."""


class HermiticityError(DataError):
    """Grid fails w[l,k] = conj(w[k,l])."""


class FormatError(DataError):
    """Unparseable file content; message carries a line number when known."""


class DomainError(DataError):
    """Parameter outside the valid domain (e.g. Re s <= 1, a_1 = 0)."""


class EmptyRangeError(DomainError):
    """A zero-ordinate query selected no entries."""


class IntegrationError(QTorusError, RuntimeError):
    """Numerical integration produced NaN or overflow."""
