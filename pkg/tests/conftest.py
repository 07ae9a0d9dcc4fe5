import cmath
import math
from functools import lru_cache

import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(number, label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {label} {detail}".rstrip())
        return ok

    return _record


def _factor(q):
    out, d = [], 3
    while d * d <= q:
        if q % d == 0:
            e = 0
            while q % d == 0:
                q //= d
                e += 1
            out.append((d, e))
        d += 2
    if q > 1:
        out.append((q, 1))
    return out


@lru_cache(maxsize=None)
def naive_character_table(q):
    """Complex values of every character mod odd q, built without the package.

    Rows follow the lexicographic order of per-prime-power indices, matching
    the enumeration order of the library.
    """
    parts = []
    for p, a in _factor(q):
        mod = p**a
        ph = mod // p * (p - 1)
        g = next(g for g in range(2, mod) if math.gcd(g, p) == 1 and len({pow(g, e, mod) for e in range(ph)}) == ph)
        log = {pow(g, e, mod): e for e in range(ph)}
        parts.append((mod, ph, log))

    rows = [dict()]
    for mod, ph, log in parts:
        new = []
        for row in rows:
            for k in range(ph):
                new.append({**row, mod: (k, ph, log)})
        rows = new
    table = []
    for row in rows:
        vals = {}
        for x in range(1, q + 1):
            if math.gcd(x, q) != 1:
                continue
            v = 1
            for mod, (k, ph, log) in row.items():
                v *= cmath.exp(2j * math.pi * k * log[x % mod] / ph)
            vals[x] = v
        table.append(vals)
    return table


def naive_power_mean(q, n, m, power=2):
    total = 0.0
    for chi in naive_character_table(q):
        g = sum(v * cmath.exp(2j * math.pi * n * pow(a, power, q) / q) for a, v in chi.items())
        total += abs(g) ** (2 * m)
    return total
