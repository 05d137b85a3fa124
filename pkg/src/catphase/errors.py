"""Exception types raised by catphase."""


class CatPhaseError(Exception):
    """Base class for all catphase errors."""


class ZeroNorm(CatPhaseError, ValueError):
    """The superposition cancels to (numerically) zero norm."""


class NoRoot(CatPhaseError, ArithmeticError):
    """A root could not be bracketed."""


class MixedModuli(CatPhaseError, ValueError):
    """Components do not share a common amplitude modulus."""


class BadWeights(CatPhaseError, ValueError):
    """Probability weights are negative or do not sum to one."""


class NonConverged(CatPhaseError, ArithmeticError):
    """Quadrature self-convergence test failed."""
