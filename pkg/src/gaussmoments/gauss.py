"""Classical and generalized quadratic Gauss sums.

``G(n, chi; q) = sum_{a=1}^{q} chi(a) e(n a^2 / q)``, evaluated exactly as a
:class:`CycloSum` at the working order ``lcm(q, phi(q))`` and in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import Modulus, factorize, index_table
from .characters import Character, character_exponents, enumerate_characters, evaluate, lift
from .cyclo import CycloSum, working_order
from .errors import HypothesisError

_U = 2.0**-53


def _check_unit(n: int, modulus: Modulus) -> int:
    if math.gcd(n, modulus.q) != 1:
        raise HypothesisError(f"n={n} is not coprime to q={modulus.q}")
    return n % modulus.q


def classical_gauss_sum(n: int, modulus: Modulus | int, order: int | None = None) -> CycloSum:
    """G(n; q) = sum over a = 1..q of e(n a^2 / q)."""
    if isinstance(modulus, int):
        modulus = factorize(modulus)
    q = modulus.q
    order = order or q
    if order % q:
        raise ValueError(f"order {order} is not a multiple of q={q}")
    a = np.arange(1, q + 1, dtype=np.int64)
    return CycloSum.from_exponents((n % q) * (a * a % q) % q * (order // q), order)


def character_sum(n: int, chi: Character, order: int | None = None, power: int = 2) -> CycloSum:
    """sum over a = 1..q of chi(a) e(n a^power / q), exact."""
    q = chi.modulus.q
    order = order or working_order(q, chi.modulus.phi)
    if order % q:
        raise ValueError(f"order {order} is not a multiple of q={q}")
    t_chi = character_exponents(chi, order)
    a = np.flatnonzero(t_chi >= 0)
    apow = np.array([pow(int(x), power, q) for x in a], dtype=np.int64)
    t = (t_chi[a] + (n % q) * apow % q * (order // q)) % order
    return CycloSum.from_exponents(t, order)


@dataclass(frozen=True)
class GaussSumValue:
    n: int
    chi: Character
    exact: CycloSum
    value: complex
    error: float

    @property
    def modulus(self) -> Modulus:
        return self.chi.modulus

    def abs_squared(self) -> CycloSum:
        return self.exact * self.exact.conjugate()


def gauss_sum(n: int, chi: Character, modulus: Modulus | None = None, order: int | None = None) -> GaussSumValue:
    """G(n, chi; q) with gcd(n, q) = 1 enforced."""
    if modulus is not None and modulus != chi.modulus:
        raise ValueError("character and modulus disagree")
    n = _check_unit(n, chi.modulus)
    exact = character_sum(n, chi, order)
    value, err = exact.eval_float()
    return GaussSumValue(n, chi, exact, value, err)


def _root_exponent(chi: Character, a: int, order: int) -> CycloSum:
    r = evaluate(chi, a)
    if r is None:
        return CycloSum.zero(order)
    return CycloSum.from_root(r.e, r.D, order)


def multiplicativity_sides(
    u: int, m1: Modulus, m2: Modulus, chi1: Character, chi2: Character
) -> tuple[CycloSum, CycloSum]:
    """Both sides of the CRT splitting of G(u, chi1 chi2; m1 m2), at a common order."""
    if math.gcd(m1.q, m2.q) != 1:
        raise HypothesisError(f"moduli {m1.q} and {m2.q} are not coprime")
    if math.gcd(u, m1.q * m2.q) != 1:
        raise HypothesisError(f"u={u} is not coprime to {m1.q * m2.q}")
    if chi1.modulus != m1 or chi2.modulus != m2:
        raise ValueError("characters do not match their moduli")
    combined = factorize(m1.q * m2.q)
    L = working_order(combined.q, combined.phi)
    lhs = character_sum(u, lift(chi1, chi2, combined), L)
    g1 = character_sum(u * m2.q, chi1, working_order(m1.q, m1.phi)).embed(L)
    g2 = character_sum(u * m1.q, chi2, working_order(m2.q, m2.phi)).embed(L)
    rhs = _root_exponent(chi1, m2.q, L) * _root_exponent(chi2, m1.q, L) * g1 * g2
    return lhs, rhs


def multiplicativity_check(u: int, m1: Modulus, m2: Modulus, chi1: Character, chi2: Character) -> bool:
    """G(u, chi1 chi2; m1 m2) == chi1(m2) chi2(m1) G(u m2, chi1; m1) G(u m1, chi2; m2), exactly."""
    lhs, rhs = multiplicativity_sides(u, m1, m2, chi1, chi2)
    return lhs.equals_exact(rhs)


def gauss_sums_float(n: int, modulus: Modulus, power: int = 2, block: int = 256) -> tuple[np.ndarray, float]:
    """Float values of the character sums for every character, in enumeration order.

    Returns the complex array and a per-entry bound on the absolute error.
    """
    q, phi = modulus.q, modulus.phi
    L = working_order(q, phi)
    units = np.array([a for a in range(1, q) if math.gcd(a, q) == 1], dtype=np.int64)
    # per-factor contribution to the exponent at order L
    scaled = []
    for p, alpha in modulus.factors:
        ph = p ** (alpha - 1) * (p - 1)
        ind = np.asarray(index_table(p, alpha), dtype=np.int64)[units % p**alpha]
        scaled.append((ph, ind * (L // ph) % L))
    apow = np.array([pow(int(x), power, q) for x in units], dtype=np.int64)
    base = (n % q) * apow % q * (L // q)
    angles = 2.0 * np.pi * np.arange(L) / L
    roots = np.cos(angles) + 1j * np.sin(angles)

    chars = np.array(list(np.ndindex(*[ph for ph, _ in scaled])), dtype=np.int64).reshape(phi, len(scaled))
    out = np.empty(phi, dtype=complex)
    for start in range(0, phi, block):
        K = chars[start : start + block]
        E = np.broadcast_to(base, (len(K), len(units))).copy()
        for i, (_, s) in enumerate(scaled):
            E = (E + K[:, i : i + 1] * s[None, :]) % L
        out[start : start + block] = roots[E].sum(axis=1)
    N = len(units)
    return out, (N + 8) * _U * N


@dataclass(frozen=True)
class BoundReport:
    q: int
    n: int
    max_abs: float
    bound: float
    holds: bool
    argmax: tuple[int, ...]
    prime_modulus: bool


def bound_check(n: int, modulus: Modulus, tolerance: float = 1e-6) -> BoundReport:
    """max over chi of |G(n, chi; q)| against 2**omega(q) * sqrt(q)."""
    n = _check_unit(n, modulus)
    values, _ = gauss_sums_float(n, modulus)
    mags = np.abs(values)
    i = int(np.argmax(mags))
    bound = 2**modulus.omega * math.sqrt(modulus.q)
    chars = list(enumerate_characters(modulus))
    return BoundReport(
        q=modulus.q,
        n=n,
        max_abs=float(mags[i]),
        bound=bound,
        holds=bool(mags[i] <= bound + tolerance),
        argmax=chars[i].indices,
        prime_modulus=modulus.is_prime,
    )
