class LatticeError(Exception):
    """Base class for every error raised by the library"""


class CoordinateError(LatticeError):
    """A vector does not lie in the lattice it is expressed against"""


class NotTorsion(LatticeError):
    """A module expected to be finite has positive free rank"""


class NotNilpotent(LatticeError):
    """An operator expected to be nilpotent on a module is not"""


class BadDivisor(LatticeError):
    """A value that must divide the group order does not"""


class MismatchedBase(LatticeError):
    """Two lattices live over different base rings or groups"""


class RankInfeasible(LatticeError):
    """No block combination realizes the requested rank"""


class WrongGroup(LatticeError):
    """An operation was applied to a lattice over an unsupported group"""


class NotMonic(LatticeError):
    """A polynomial expected to be monic is not"""


class InvariantViolation(LatticeError):
    """A structural invariant failed to hold"""


class UnsupportedPrime(LatticeError):
    """A prime outside the supported range was requested"""


class ParseError(LatticeError):
    """A lattice document or builtin name could not be parsed"""
