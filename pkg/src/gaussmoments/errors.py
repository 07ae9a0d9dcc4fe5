"""Exception types shared across the package."""


class HypothesisError(ValueError):
    """Inputs fall outside the hypotheses under which an identity is stated."""


class UnsupportedModulusError(HypothesisError):
    """Even modulus, or a modulus below 3."""


class InfeasibleError(RuntimeError):
    """A brute-force computation was refused by its cost guard."""


class NonIntegralError(ArithmeticError):
    """An exact sum that must be a rational integer is not one.

    Seeing this means the implementation is wrong, not the mathematics.
    """
