"""Closed-form right-hand sides of the power-mean identities and their lemmas.

Every evaluator refuses inputs outside the hypotheses its identity is stated
under; the formulas are false there (e.g. the 2m-th moment formula fails for
moduli that are not square-full).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .arith import Modulus, factorize, is_prime, legendre, totient
from .cyclo import CycloSum
from .errors import HypothesisError
from .gauss import classical_gauss_sum


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise HypothesisError(f"p={p} is not an odd prime")


def _as_modulus(modulus: Modulus | int) -> Modulus:
    return factorize(modulus) if isinstance(modulus, int) else modulus


def theorem1_closed(modulus: Modulus | int, m: int) -> int:
    """4**((m-1) omega(q)) * q**(m-1) * phi(q)**2 for odd square-full q and m >= 2."""
    modulus = _as_modulus(modulus)
    if not modulus.square_full:
        raise HypothesisError(f"q={modulus.q} not square-full")
    if m < 2:
        raise HypothesisError(f"m={m} < 2")
    return 4 ** ((m - 1) * modulus.omega) * modulus.q ** (m - 1) * modulus.phi**2


def lemma9_closed(p: int, alpha: int, m: int) -> int:
    """The prime-power case: 4**(m-1) * phi(p**alpha)**2 * p**((m-1) alpha)."""
    _require_odd_prime(p)
    if alpha < 2:
        raise HypothesisError(f"alpha={alpha} < 2")
    if m < 2:
        raise HypothesisError(f"m={m} < 2")
    phi = p ** (alpha - 1) * (p - 1)
    return 4 ** (m - 1) * phi**2 * p ** ((m - 1) * alpha)


def t_closed(p: int, n: int, k: int, a: int) -> int:
    """T_p(n, k, a): Legendre product of the first k coordinates, summed over
    nonzero n-tuples with coordinate sum a mod p."""
    _require_odd_prime(p)
    if not 1 <= k <= n:
        raise HypothesisError(f"need 1 <= k <= n, got k={k}, n={n}")
    m1 = legendre(-1, p)
    divides = a % p == 0
    if k % 2:
        if divides:
            return 0
        return (-1) ** (n - k) * legendre(a, p) * p ** ((k - 1) // 2) * m1 ** ((k - 1) // 2)
    if divides:
        return (-1) ** (n - k) * (p - 1) * m1 ** (k // 2) * p ** ((k - 2) // 2)
    return (-1) ** (n + 1 - k) * m1 ** (k // 2) * p ** ((k - 2) // 2)


def quadsum_closed(p: int, a: int) -> int:
    """sum over x = 1..p-1 of ((x^2 + a x) / p)."""
    _require_odd_prime(p)
    return p - 1 if a % p == 0 else -1


def count_closed(p: int, n: int, a: int) -> int:
    """Number of n-tuples of nonzero residues mod p summing to a."""
    _require_odd_prime(p)
    if n < 1:
        raise HypothesisError(f"n={n} < 1")
    if a % p:
        num = (p - 1) ** n - (-1) ** n
    else:
        num = (p - 1) ** n + (p - 1) * (-1) ** n
    q, r = divmod(num, p)
    assert r == 0
    return q


@dataclass(frozen=True)
class InnerSumCase:
    """Where a unit a mod p**alpha sits relative to p**(alpha-1) | a^2 - 1."""

    tag: Literal["not-divisible", "exactly-divides", "fully-divides"]
    r: int | None = None
    epsilon: int | None = None


def classify_inner(p: int, alpha: int, a: int) -> InnerSumCase:
    pa = p**alpha
    low = p ** (alpha - 1)
    a %= pa
    d = (a * a - 1) % pa
    if d == 0:
        return InnerSumCase("fully-divides")
    if d % low:
        return InnerSumCase("not-divisible")
    eps = 1 if (a - 1) % low == 0 else -1
    r = (a - eps) // low
    assert 1 <= r <= p - 1
    return InnerSumCase("exactly-divides", r, eps)


def inner_sum_closed(p: int, alpha: int, n: int, a: int, order: int | None = None) -> CycloSum:
    """Closed value of the sum over units b mod p**alpha of e(n b^2 (a^2 - 1) / p**alpha)."""
    _require_odd_prime(p)
    if alpha < 2:
        raise HypothesisError(f"alpha={alpha} < 2")
    if n % p == 0 or a % p == 0:
        raise HypothesisError("n and a must be prime to p")
    pa = p**alpha
    order = order or pa
    case = classify_inner(p, alpha, a)
    if case.tag == "not-divisible":
        return CycloSum.zero(order)
    if case.tag == "fully-divides":
        return CycloSum.integer(pa // p * (p - 1), order)
    g = classical_gauss_sum(1, p, order)
    return (g * legendre(2 * case.epsilon * case.r * n, p) - 1) * p ** (alpha - 1)


def a_closed(p: int, alpha: int, m: int, k: int) -> int:
    """A(m, k) = 2**(m-2) p**(m(alpha-1)-1) ((-1)**k (p+1)(p-1)**m + (p-1)**(m-k+1) (p+1)**k)."""
    _require_odd_prime(p)
    if alpha < 2:
        raise HypothesisError(f"alpha={alpha} < 2")
    if m < 1 or not 0 <= k <= m:
        raise HypothesisError(f"need m >= 1 and 0 <= k <= m, got m={m}, k={k}")
    value = (
        Fraction(2) ** (m - 2)
        * Fraction(p) ** (m * (alpha - 1) - 1)
        * ((-1) ** k * (p + 1) * (p - 1) ** m + (p - 1) ** (m - k + 1) * (p + 1) ** k)
    )
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class QuadraticValue:
    """The real number rational + sqrt_coeff * sqrt(radicand)."""

    rational: int
    sqrt_coeff: int
    radicand: int

    def __float__(self) -> float:
        return self.rational + self.sqrt_coeff * math.sqrt(self.radicand)

    def as_cyclo(self, order: int) -> CycloSum:
        # for p = 1 mod 4, G(1; p) is the positive square root of p
        g = classical_gauss_sum(1, self.radicand, order)
        return g * self.sqrt_coeff + self.rational

    def __str__(self) -> str:
        sign = "+" if self.sqrt_coeff >= 0 else "-"
        return f"{self.rational}{sign}{abs(self.sqrt_coeff)}*sqrt({self.radicand})"


def zhang_p4_closed(p: int, n: int) -> int | QuadraticValue:
    """Fourth power mean over characters mod a prime p."""
    _require_odd_prime(p)
    if n % p == 0:
        raise HypothesisError(f"p={p} divides n={n}")
    base = (p - 1) * (3 * p * p - 6 * p - 1)
    if p % 4 == 3:
        return base
    return QuadraticValue(base, 4 * legendre(n, p) * (p - 1), p)


def zhang_p6_closed(p: int) -> int:
    """Sixth power mean over characters mod a prime p = 3 mod 4."""
    _require_odd_prime(p)
    if p % 4 != 3:
        raise HypothesisError(
            f"p={p} = 1 mod 4: no closed form is known for the sixth power mean (open question)"
        )
    return (p - 1) * (10 * p**3 - 25 * p**2 - 4 * p - 1)


def zhangliu_closed(modulus: Modulus | int, k: int) -> Fraction:
    """q phi(q)^2 prod_{p|q} (k, p-1)^2 * prod_{p|q, (k,p-1)=1} phi(p-1)/(p-1), verbatim."""
    modulus = _as_modulus(modulus)
    if not modulus.square_full:
        raise HypothesisError(f"q={modulus.q} not square-full")
    if k < 1:
        raise HypothesisError(f"k={k} < 1")
    value = Fraction(modulus.q * modulus.phi**2)
    for p, _ in modulus.factors:
        g = math.gcd(k, p - 1)
        value *= g * g
        if g == 1:
            value *= Fraction(totient(p - 1), p - 1)
    return value
