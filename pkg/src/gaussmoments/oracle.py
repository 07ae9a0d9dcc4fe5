"""Brute-force evaluations of every sum the identities manipulate.

Nothing here consults a closed form. Quadratic residuosity is read off the set
of squares mod p rather than the reciprocity-based symbol in :mod:`arith`, so
the Legendre machinery is checked as well.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .arith import Modulus, factorize
from .characters import enumerate_characters
from .cyclo import CycloSum, working_order
from .errors import HypothesisError, InfeasibleError, NonIntegralError
from .gauss import character_sum, gauss_sums_float

TUPLE_BUDGET = 10**8
EXACT_BUDGET = 7 * 10**8
FLOAT_BUDGET = 25 * 10**6
_TAIL = 1 << 17
_U = 2.0**-53


class Approx(NamedTuple):
    """A float result with an a-priori bound on its absolute error."""

    value: float
    error: float


@dataclass(frozen=True)
class SumSpec:
    """Parameters of a lemma-level sum; unused fields stay None."""

    p: int
    alpha: int | None = None
    n: int | None = None
    k: int | None = None
    m: int | None = None
    a: int | None = None


@lru_cache(maxsize=None)
def _residue_table(p: int) -> tuple[int, ...]:
    """chi[x] for x in [0, p): +1 on nonzero squares, -1 on non-squares, 0 at 0."""
    squares = {x * x % p for x in range(1, p)}
    return tuple(0 if x == 0 else (1 if x in squares else -1) for x in range(p))


@lru_cache(maxsize=None)
def _grouped(p: int, d: int, kk: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Enumerate all d-tuples in [1, p-1]; return per-residue s of the coordinate sum:
    the tuple count and the sum of Legendre products over the first kk coordinates."""
    count = np.zeros(p, dtype=np.int64)
    weight = np.zeros(p, dtype=np.int64)
    if d == 0:
        count[0] = weight[0] = 1
        return tuple(count.tolist()), tuple(weight.tolist())
    chi = np.asarray(_residue_table(p), dtype=np.int64)
    t = 1
    while t < d and (p - 1) ** (t + 1) <= _TAIL:
        t += 1
    P = d - t
    grid = np.indices((p - 1,) * t).reshape(t, -1) + 1
    tail_sum = grid.sum(axis=0) % p
    tail_w = np.ones(grid.shape[1], dtype=np.int64)
    for i in range(P, min(kk, d)):
        tail_w *= chi[grid[i - P]]
    pos, neg = tail_w > 0, tail_w < 0
    for prefix in itertools.product(range(1, p), repeat=P):
        ps = sum(prefix) % p
        pw = 1
        for x in prefix[:kk]:
            pw *= int(chi[x])
        s = (tail_sum + ps) % p
        count += np.bincount(s, minlength=p)
        weight += pw * (np.bincount(s[pos], minlength=p) - np.bincount(s[neg], minlength=p))
    return tuple(count.tolist()), tuple(weight.tolist())


def _guard_tuples(p: int, dims: int) -> None:
    if (p - 1) ** dims > TUPLE_BUDGET:
        raise InfeasibleError(f"too large: {(p - 1) ** dims} tuples mod {p} exceed budget {TUPLE_BUDGET}")


def t_brute(p: int, n: int, k: int, a: int) -> int:
    """T_p(n, k, a) by exhaustive summation; the last coordinate is solved for."""
    if not 1 <= k <= n:
        raise HypothesisError(f"need 1 <= k <= n, got k={k}, n={n}")
    _guard_tuples(p, n - 1)
    chi = _residue_table(p)
    _, weight = _grouped(p, n - 1, min(k, n - 1))
    a %= p
    total = 0
    for s, w in enumerate(weight):
        last = (a - s) % p
        if last == 0 or w == 0:
            continue
        total += w * (chi[last] if k == n else 1)
    return total


def count_brute(p: int, n: int, a: int) -> int:
    """Number of n-tuples of nonzero residues mod p summing to a."""
    if n < 1:
        raise HypothesisError(f"n={n} < 1")
    _guard_tuples(p, n - 1)
    count, _ = _grouped(p, n - 1, 0)
    a %= p
    return sum(c for s, c in enumerate(count) if (a - s) % p)


def quadsum_brute(p: int, a: int) -> int:
    chi = _residue_table(p)
    return sum(chi[(x * x + a * x) % p] for x in range(1, p))


def inner_sum_brute(p: int, alpha: int, n: int, a: int, order: int | None = None) -> CycloSum:
    """Sum over units b mod p**alpha of e(n b^2 (a^2 - 1) / p**alpha)."""
    if alpha < 2:
        raise HypothesisError(f"alpha={alpha} < 2")
    if n % p == 0 or a % p == 0:
        raise HypothesisError("n and a must be prime to p")
    pa = p**alpha
    order = order or pa
    b = np.array([x for x in range(1, pa) if x % p], dtype=np.int64)
    c = n * (a * a - 1) % pa
    return CycloSum.from_exponents(c * (b * b % pa) % pa * (order // pa), order)


def a_brute(p: int, alpha: int, m: int, k: int, n: int = 1) -> int:
    """A(m, k): unit m-tuples with product 1 mod p**alpha, the first k coordinates
    with p**(alpha-1) || x^2 - 1 and the rest with p**alpha | x^2 - 1, weighted by
    the product of the inner sums."""
    if not 0 <= k <= m or m < 1:
        raise HypothesisError(f"need m >= 1 and 0 <= k <= m, got m={m}, k={k}")
    pa, low = p**alpha, p ** (alpha - 1)
    units = [x for x in range(1, pa) if x % p]
    exact_div = [x for x in units if (x * x - 1) % low == 0 and (x * x - 1) % pa]
    full_div = [x for x in units if (x * x - 1) % pa == 0]
    allowed = [exact_div] * k + [full_div] * (m - k)
    size = math.prod(len(s) for s in allowed[:-1])
    if size > TUPLE_BUDGET:
        raise InfeasibleError(f"too large: {size} tuples")
    inner = {x: inner_sum_brute(p, alpha, n, x) for x in units if x in exact_div or x in full_div}
    last_ok = set(allowed[-1])
    total = CycloSum.zero(pa)
    for head in itertools.product(*allowed[:-1]):
        prod = 1
        for x in head:
            prod = prod * x % pa
        last = pow(prod, -1, pa)
        if last not in last_ok:
            continue
        term = inner[last]
        for x in head:
            term = term * inner[x]
        total = total + term
    value = total.to_integer()
    if value is None:
        raise NonIntegralError(f"A({m},{k}) mod {p}**{alpha} is not an integer")
    return value


def exact_cost(modulus: Modulus, m: int) -> int:
    L = working_order(modulus.q, modulus.phi)
    return modulus.phi * L * L * max(m, 1)


def exact_feasible(modulus: Modulus, m: int) -> bool:
    return exact_cost(modulus, m) <= EXACT_BUDGET


def float_feasible(modulus: Modulus) -> bool:
    return modulus.phi**2 <= FLOAT_BUDGET


def power_sum_k_brute(n: int, modulus: Modulus | int, k_power: int, m: int, backend: str = "exact"):
    """Sum over all chi mod q of |sum_a chi(a) e(n a^k / q)|^(2m).

    The exact backend returns an int when the total is a rational integer and the
    CycloSum otherwise; the float backend returns an :class:`Approx`.
    """
    if isinstance(modulus, int):
        modulus = factorize(modulus)
    if math.gcd(n, modulus.q) != 1:
        raise HypothesisError(f"n={n} is not coprime to q={modulus.q}")
    if m < 1 or k_power < 1:
        raise HypothesisError("need m >= 1 and k >= 1")
    n %= modulus.q
    if backend == "exact":
        if not exact_feasible(modulus, m):
            raise InfeasibleError(f"exact backend refused: cost {exact_cost(modulus, m)} > {EXACT_BUDGET}")
        L = working_order(modulus.q, modulus.phi)
        total = CycloSum.zero(L)
        for chi in enumerate_characters(modulus):
            g = character_sum(n, chi, L, k_power)
            total = total + (g * g.conjugate()) ** m
        value = total.to_integer()
        if value is not None:
            return value
        if modulus.square_full and k_power == 2:
            raise NonIntegralError(f"power mean at q={modulus.q}, m={m} is not an integer")
        return total
    if backend == "float":
        if not float_feasible(modulus):
            raise InfeasibleError(f"float backend refused: phi(q)^2 = {modulus.phi ** 2} > {FLOAT_BUDGET}")
        values, delta = gauss_sums_float(n, modulus, k_power)
        mags = np.abs(values).tolist()
        terms = [x ** (2 * m) for x in mags]
        total = math.fsum(terms)
        err = math.fsum(
            2 * m * (x + delta) ** (2 * m - 1) * delta + (2 * m + 2) * _U * t for x, t in zip(mags, terms)
        )
        return Approx(total, err + _U * abs(total))
    raise ValueError(f"unknown backend {backend!r}")


def power_mean_brute(n: int, modulus: Modulus | int, m: int, backend: str = "exact"):
    """Sum over all chi mod q of |G(n, chi; q)|^(2m)."""
    return power_sum_k_brute(n, modulus, 2, m, backend)
