"""Exact generalized quadratic Gauss sums and verification of their 2m-th power means."""

from .arith import Modulus, factorize, legendre, jacobi, primitive_root, discrete_log
from .characters import Character, enumerate_characters, evaluate
from .cyclo import CycloSum
from .gauss import classical_gauss_sum, gauss_sum, multiplicativity_check, bound_check
from .closedform import theorem1_closed, lemma9_closed
from .oracle import power_mean_brute, power_sum_k_brute
from .errors import HypothesisError, InfeasibleError, NonIntegralError, UnsupportedModulusError

__version__ = "0.1.0"
