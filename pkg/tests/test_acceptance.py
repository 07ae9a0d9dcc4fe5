"""Acceptance criteria, one recorded PASS/FAIL line each (see the terminal summary)."""

import math
import subprocess
import sys
import time
from math import comb

import pytest

from gaussmoments.arith import factorize, is_prime, legendre
from gaussmoments.characters import enumerate_characters
from gaussmoments.closedform import (
    a_closed,
    count_closed,
    inner_sum_closed,
    lemma9_closed,
    t_closed,
    theorem1_closed,
    zhang_p4_closed,
    zhang_p6_closed,
    zhangliu_closed,
)
from gaussmoments.gauss import bound_check, classical_gauss_sum, multiplicativity_check
from gaussmoments.oracle import (
    a_brute,
    count_brute,
    inner_sum_brute,
    power_mean_brute,
    power_sum_k_brute,
    t_brute,
)
from gaussmoments.verify import Options, run_case


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_01_theorem1_exact(record):
    bad = []
    with Timer() as t:
        for q in (9, 25, 27, 49, 121):
            for m in (2, 3):
                for n in (1, 2, q - 1):
                    got = power_mean_brute(n, q, m, "exact")
                    if got != theorem1_closed(q, m):
                        bad.append((q, m, n, got))
    ok = not bad and power_mean_brute(1, 9, 2, "exact") == 1296 and t.seconds < 120
    record(1, "theorem1 exact", ok, f"30 cases, {t.seconds:.1f}s, mismatches={bad}")
    assert ok


def test_criterion_02_theorem1_composite(record):
    closed = theorem1_closed(225, 2)
    with Timer() as t:
        errs = [abs(power_mean_brute(n, 225, 2, "float").value - closed) / closed for n in (1, 2)]
    ok = closed == 51_840_000 and max(errs) <= 1e-3 and t.seconds < 60
    record(2, "theorem1 q=225 float", ok, f"max rel err {max(errs):.2e}, {t.seconds:.1f}s")
    assert ok


def test_criterion_03_lemma9_grid(record):
    reports = []
    with Timer() as t:
        for p, alpha in ((3, 2), (3, 3), (5, 2), (7, 2)):
            for m in (2, 3):
                reports.append(run_case("lemma9", {"p": p, "alpha": alpha, "m": m, "n": 1}, Options()))
    ok = all(r.match for r in reports) and t.seconds < 300
    backends = sorted({r.backend for r in reports})
    record(3, "lemma9 grid", ok, f"{len(reports)} cases, backends={backends}, {t.seconds:.1f}s")
    assert ok


def test_criterion_04_t_sums(record):
    cases = bad = 0
    with Timer() as t:
        for p in (3, 5, 7, 11, 13):
            for n in range(1, 7):
                for k in range(1, n + 1):
                    for a in range(p):
                        cases += 1
                        bad += t_brute(p, n, k, a) != t_closed(p, n, k, a)
    ok = bad == 0 and t.seconds < 60
    record(4, "t-sum suite", ok, f"{cases} cases, {bad} mismatches, {t.seconds:.1f}s")
    assert ok


def test_criterion_05_inner_sums(record):
    cases = bad = 0
    for p, alpha in ((3, 2), (3, 3), (5, 2), (7, 2)):
        for n in (1, 2):
            for a in range(1, p**alpha):
                if a % p:
                    cases += 1
                    bad += not inner_sum_brute(p, alpha, n, a).equals_exact(inner_sum_closed(p, alpha, n, a))
    record(5, "inner-sum classification", bad == 0, f"{cases} cases, {bad} mismatches")
    assert bad == 0


def test_criterion_06_a_sums(record):
    bad = []
    for p in (3, 5):
        phi = p * (p - 1)
        for m in (2, 3):
            for k in range(m + 1):
                if a_brute(p, 2, m, k) != a_closed(p, 2, m, k):
                    bad.append(("a", p, m, k))
            if phi * sum(comb(m, k) * a_closed(p, 2, m, k) for k in range(m + 1)) != lemma9_closed(p, 2, m):
                bad.append(("recombination", p, m))
    record(6, "A(m,k) machinery", not bad, f"mismatches={bad}")
    assert not bad


def test_criterion_07_counts(record):
    bad = []
    for p in (3, 5, 7, 11, 13):
        for n in range(1, 9):
            row = [count_brute(p, n, a) for a in range(p)]
            if row != [count_closed(p, n, a) for a in range(p)] or sum(row) != (p - 1) ** n:
                bad.append((p, n))
    record(7, "counting lemma", not bad, f"mismatches={bad}")
    assert not bad


def test_criterion_08_gauss_square(record):
    primes = [p for p in range(3, 98) if is_prime(p)]
    bad = [p for p in primes if not (classical_gauss_sum(1, p) ** 2).equals_exact(legendre(-1, p) * p)]
    record(8, "gauss-square", not bad, f"{len(primes)} primes, failures={bad}")
    assert not bad


def test_criterion_09_multiplicativity(record):
    cases, bad = 0, []
    with Timer() as t:
        for q1, q2 in ((9, 25), (9, 49), (27, 25)):
            m1, m2 = factorize(q1), factorize(q2)
            for u in (1, 2):
                for chi1 in enumerate_characters(m1):
                    for chi2 in enumerate_characters(m2):
                        cases += 1
                        if not multiplicativity_check(u, m1, m2, chi1, chi2):
                            bad.append((q1, q2, u, chi1.indices, chi2.indices))
    ok = not bad and t.seconds < 120
    record(9, "multiplicativity", ok, f"{cases} cases, {len(bad)} failures, {t.seconds:.1f}s")
    assert ok


def test_criterion_10a_zhang_p4(record):
    errs = {}
    for p in (5, 7, 11, 13):
        for n in (1, 2):
            errs[(p, n)] = abs(power_mean_brute(n, p, 2, "float").value - float(zhang_p4_closed(p, n)))
    ok = max(errs.values()) <= 1e-6 and zhang_p4_closed(7, 1) == 624
    ok &= abs(float(zhang_p4_closed(5, 1)) - 211.7770876) < 1e-6
    record("10a", "zhang-p4 vs float oracle", ok, f"max abs err {max(errs.values()):.2e}")
    assert ok


def test_criterion_10b_zhang_p6(record):
    errs = {p: abs(power_mean_brute(1, p, 3, "float").value - zhang_p6_closed(p)) for p in (7, 11)}
    ok = max(errs.values()) <= 1e-6 and zhang_p6_closed(7) == 13056
    record("10b", "zhang-p6 vs float oracle", ok, f"max abs err {max(errs.values()):.2e}")
    assert ok


def test_criterion_10c_zhangliu_k2(record):
    qs = [q for q in range(3, 1001, 2) if factorize(q).square_full]
    bad = [q for q in qs if zhangliu_closed(q, 2) != theorem1_closed(q, 2)]
    record("10c", "zhang-liu(q,2) = theorem1(q,2)", not bad, f"{len(qs)} moduli, failures={bad}")
    assert not bad


def test_criterion_10d_zhangliu_cubic(record):
    closed = zhangliu_closed(9, 3)
    oracle = power_sum_k_brute(1, 9, 3, 2, "float")
    ok = abs(oracle.value - float(closed)) <= 1e-6
    record("10d", "zhang-liu(9,3) vs cubic oracle", ok, f"closed={closed} oracle={oracle.value:.10g}")
    assert ok


def test_criterion_11_bounds(record):
    violations, prime_violations = [], []
    for q in (7, 9, 25, 27, 49, 225):
        m = factorize(q)
        for n in (1, 2, q - 1):
            if math.gcd(n, q) > 1:
                continue
            rep = bound_check(n, m)
            if not rep.holds:
                violations.append((q, n, round(rep.max_abs, 6), round(rep.bound, 6)))
                if rep.prime_modulus:
                    prime_violations.append((q, n))
    ok = not prime_violations
    record(11, "bounds 2^omega sqrt(q)", ok, f"violations={violations}")
    assert ok


def test_criterion_12_determinism(record):
    def selftest(n):
        cmd = [sys.executable, "-m", "gaussmoments", "selftest", "--parallel", str(n)]
        return subprocess.run(cmd, capture_output=True, check=False).stdout

    serial, parallel = selftest(1), selftest(8)
    ok = serial == parallel and serial.strip().endswith(b"checks)")
    record(12, "selftest determinism", ok, f"{len(serial)} bytes, identical={serial == parallel}")
    assert ok
