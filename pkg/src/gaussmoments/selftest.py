"""Desk-scale invariant suites behind ``gaussmoments selftest``.

Each check is a zero-argument function returning True on success. Checks are
looked up by (suite, name) so worker processes can run them independently.
Module attributes are resolved at call time (``arith.legendre`` rather than an
imported name) so a patched function is what gets exercised.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import arith, characters, closedform, cyclo, gauss, oracle

SUITES: dict[str, dict[str, Callable[[], bool]]] = {}


def check(suite: str):
    def register(fn):
        SUITES.setdefault(suite, {})[fn.__name__.removeprefix("check_").replace("_", "-")] = fn
        return fn

    return register


_PRIMES = [p for p in range(3, 98) if arith.is_prime(p)]


# -- arith --------------------------------------------------------------------


@check("arith")
def check_factorize_examples():
    m = arith.factorize(675)
    return (
        m.factors == ((3, 3), (5, 2))
        and m.phi == 360
        and m.omega == 2
        and m.square_full
        and not arith.factorize(45).square_full
    )


@check("arith")
def check_euler_criterion():
    for p in _PRIMES:
        for a in range(1, p):
            e = pow(a, (p - 1) // 2, p)
            if arith.legendre(a, p) != (1 if e == 1 else -1):
                return False
    return True


@check("arith")
def check_totient_direct_count():
    return all(arith.factorize(q).phi == sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1) for q in range(3, 2001, 2))


@check("arith")
def check_primitive_roots():
    for p in _PRIMES[:10]:
        for alpha in (1, 2, 3):
            mod = p**alpha
            if mod > 5000:
                continue
            g = arith.primitive_root(p, alpha)
            if arith.multiplicative_order(g, mod) != p ** (alpha - 1) * (p - 1):
                return False
    return True


@check("arith")
def check_discrete_log_round_trip():
    for p, alpha in [(3, 2), (3, 4), (5, 2), (7, 2), (11, 2), (13, 1)]:
        mod = p**alpha
        g = arith.primitive_root(p, alpha)
        for x in range(1, mod):
            if x % p and pow(g, arith.discrete_log(x, g, p, alpha), mod) != x:
                return False
    return True


# -- characters -----------------------------------------------------------------


def _as_cyclo(root, order):
    if root is None:
        return cyclo.CycloSum.zero(order)
    return cyclo.CycloSum.from_root(root.e, root.D, order)


@check("characters")
def check_character_count():
    return all(
        len(list(characters.enumerate_characters(arith.factorize(q)))) == arith.factorize(q).phi
        for q in (7, 9, 25, 27, 45, 49, 675)
    )


@check("characters")
def check_orthogonality():
    for q in (9, 25, 27, 49):
        m = arith.factorize(q)
        chars = list(characters.enumerate_characters(m))
        D = chars[0].exponent
        for a in range(1, q):
            if math.gcd(a, q) != 1:
                continue
            total = cyclo.CycloSum.zero(D)
            for chi in chars:
                total = total + _as_cyclo(characters.evaluate(chi, a), D)
            if not total.equals_exact(m.phi if a == 1 else 0):
                return False
    return True


@check("characters")
def check_multiplicativity_and_conjugation():
    for q in range(3, 50, 2):
        m = arith.factorize(q)
        units = [a for a in range(1, q) if math.gcd(a, q) == 1]
        for chi in characters.enumerate_characters(m):
            D = chi.exponent
            conj = chi.conj()
            vals = {a: characters.evaluate(chi, a) for a in units}
            for a in units:
                if characters.evaluate(conj, a).e != (-vals[a].e) % D:
                    return False
            for a, b in itertools.product(units[:6], units):
                if (vals[a].e + vals[b].e) % D != vals[a * b % q].e:
                    return False
            if characters.evaluate(chi, q) is not None:
                return False
    return True


# -- cyclo ----------------------------------------------------------------------


def _random_cyclo(rng: random.Random, order: int) -> cyclo.CycloSum:
    coeffs = [0] * order
    for _ in range(rng.randint(1, 6)):
        coeffs[rng.randrange(order)] += rng.randint(-5, 5)
    return cyclo.CycloSum(order, coeffs)


@check("cyclo")
def check_cyclotomic_factorization():
    for n in (12, 18, 36, 45, 90, 180, 360):
        r = math.prod(p for p, _ in arith._trial_factor(n))
        s = n // r
        base = cyclo.cyclotomic_poly(r)
        stretched = [0] * ((len(base) - 1) * s + 1)
        for i, c in enumerate(base):
            stretched[i * s] = c
        if tuple(stretched) != cyclo.cyclotomic_poly(n):
            return False
    return True


@check("cyclo")
def check_ring_laws():
    rng = random.Random(20240611)
    for _ in range(40):
        L = rng.choice([3, 9, 12, 20, 45, 60, 360])
        x, y, z = (_random_cyclo(rng, L) for _ in range(3))
        if not (x * y).equals_exact(y * x):
            return False
        if not ((x * y) * z).equals_exact(x * (y * z)):
            return False
        if not (x * y).conjugate().equals_exact(x.conjugate() * y.conjugate()):
            return False
        n = (x * x.conjugate()).eval_float()[0]
        if n.real < -1e-9 or abs(n.imag) > 1e-9:
            return False
    return True


@check("cyclo")
def check_exact_equality_agrees_with_float():
    rng = random.Random(7)
    for _ in range(100):
        L = rng.choice([6, 9, 15, 24, 36, 90, 360])
        x = _random_cyclo(rng, L)
        val, err = x.eval_float()
        if x.is_zero() != (abs(val) <= err):
            return False
    root_sum = sum((cyclo.CycloSum.from_root(j, 9, 9) for j in (1, 4, 7)), cyclo.CycloSum.zero(9))
    return root_sum.is_zero()


# -- gauss ----------------------------------------------------------------------


@check("gauss")
def check_gauss_square():
    for p in _PRIMES:
        g = gauss.classical_gauss_sum(1, p)
        if not (g * g).equals_exact(arith.legendre(-1, p) * p):
            return False
    return True


@check("gauss")
def check_square_substitution():
    for q in (9, 15, 21, 25, 27, 35, 49):
        m = arith.factorize(q)
        units = [t for t in range(2, q) if math.gcd(t, q) == 1][:4]
        for chi in characters.enumerate_characters(m):
            ref = gauss.gauss_sum(1, chi).abs_squared()
            for t in units:
                if not gauss.gauss_sum(t * t, chi).abs_squared().equals_exact(ref):
                    return False
    return True


@check("gauss")
def check_conjugate_character():
    for q in range(3, 26, 2):
        m = arith.factorize(q)
        for chi in characters.enumerate_characters(m):
            for n in (1, 2):
                if math.gcd(n, q) != 1:
                    continue
                lhs = gauss.gauss_sum(n, chi.conj()).exact
                rhs = gauss.gauss_sum(-n, chi).exact.conjugate()
                if not lhs.equals_exact(rhs):
                    return False
    return True


@check("gauss")
def check_crt_splitting():
    m1, m2 = arith.factorize(9), arith.factorize(25)
    return all(
        gauss.multiplicativity_check(u, m1, m2, c1, c2)
        for u in (1, 2)
        for c1 in characters.enumerate_characters(m1)
        for c2 in characters.enumerate_characters(m2)
    )


@check("gauss")
def check_bounds():
    return all(gauss.bound_check(1, arith.factorize(q)).holds for q in (7, 9, 25, 27, 49, 225))


# -- closedform -------------------------------------------------------------------


@check("closedform")
def check_recombination():
    for p, alpha, m in itertools.product((3, 5, 7), (2, 3), (2, 3, 4)):
        phi = p ** (alpha - 1) * (p - 1)
        total = phi * sum(math.comb(m, k) * closedform.a_closed(p, alpha, m, k) for k in range(m + 1))
        if total != closedform.lemma9_closed(p, alpha, m):
            return False
    return True


@check("closedform")
def check_a_recursion():
    for p, alpha, m in itertools.product((3, 5, 7), (2, 3), (2, 3, 4)):
        phi = p ** (alpha - 1) * (p - 1)
        for k in range(m):
            if closedform.a_closed(p, alpha, m, k) != 2 * phi * closedform.a_closed(p, alpha, m - 1, k):
                return False
    return True


@check("closedform")
def check_t_descent():
    for p in (3, 5, 7, 11):
        for n in range(2, 7):
            for k in range(1, n):
                for a in range(p):
                    if closedform.t_closed(p, n, k, a) != -closedform.t_closed(p, n - 1, k, a):
                        return False
    return True


@check("closedform")
def check_zhangliu_matches_theorem1():
    for q in range(9, 1001, 2):
        m = arith.factorize(q)
        if m.square_full and closedform.zhangliu_closed(m, 2) != closedform.theorem1_closed(m, 2):
            return False
    return True


# -- oracle -------------------------------------------------------------------------


@check("oracle")
def check_t_sums():
    return all(
        oracle.t_brute(p, n, k, a) == closedform.t_closed(p, n, k, a)
        for p in (3, 5, 7)
        for n in range(1, 6)
        for k in range(1, n + 1)
        for a in range(p)
    )


@check("oracle")
def check_counts():
    for p in (3, 5, 7):
        for n in range(1, 7):
            row = [oracle.count_brute(p, n, a) for a in range(p)]
            if sum(row) != (p - 1) ** n:
                return False
            if row != [closedform.count_closed(p, n, a) for a in range(p)]:
                return False
    return True


@check("oracle")
def check_inner_sums():
    for p, alpha in ((3, 2), (3, 3), (5, 2)):
        for n in (1, 2):
            for a in range(1, p**alpha):
                if a % p and not oracle.inner_sum_brute(p, alpha, n, a).equals_exact(
                    closedform.inner_sum_closed(p, alpha, n, a)
                ):
                    return False
    return True


@check("oracle")
def check_a_sums():
    return all(
        oracle.a_brute(p, 2, m, k) == closedform.a_closed(p, 2, m, k)
        for p in (3, 5)
        for m in (2, 3)
        for k in range(m + 1)
    )


@check("oracle")
def check_power_means():
    for q in (9, 25, 27):
        for m in (2, 3):
            for n in (1, 2, q - 1):
                if oracle.power_mean_brute(n, q, m, "exact") != closedform.theorem1_closed(q, m):
                    return False
    return True


@check("oracle")
def check_float_exact_agreement():
    for q, m in ((9, 2), (25, 2), (7, 2), (5, 3)):
        exact = oracle.power_mean_brute(1, q, m, "exact")
        approx = oracle.power_mean_brute(1, q, m, "float")
        ref = exact if isinstance(exact, int) else exact.eval_float()[0].real
        if abs(approx.value - ref) > approx.error + 1e-9 * abs(ref):
            return False
    return True


# -- runner -------------------------------------------------------------------------


def _run_one(key: tuple[str, str]) -> bool:
    suite, name = key
    try:
        return bool(SUITES[suite][name]())
    except Exception:
        return False


def run(parallel: int = 1) -> tuple[bool, list[str]]:
    """Run every check; return overall success and the report lines."""
    keys = [(suite, name) for suite, checks in SUITES.items() for name in checks]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_run_one, keys, chunksize=1))
    else:
        results = [_run_one(k) for k in keys]
    outcome = dict(zip(keys, results))
    lines = []
    for suite, checks in SUITES.items():
        passed = [outcome[(suite, n)] for n in checks]
        status = "PASS" if all(passed) else "FAIL"
        lines.append(f"{status} {suite}: {sum(passed)}/{len(passed)} checks")
        lines.extend(f"  FAIL {suite}/{n}" for n in checks if not outcome[(suite, n)])
    ok = all(results)
    lines.append(f"selftest: {'PASS' if ok else 'FAIL'} ({sum(results)}/{len(results)} checks)")
    return ok, lines
