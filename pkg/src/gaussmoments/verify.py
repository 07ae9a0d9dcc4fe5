"""Claim registry: pair each closed form with its oracle and produce reports."""

from __future__ import annotations

import dataclasses
import itertools
import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import closedform as cf
from . import oracle
from .arith import factorize, is_prime, legendre
from .characters import enumerate_characters
from .cyclo import CycloSum
from .errors import HypothesisError, InfeasibleError
from .gauss import bound_check, classical_gauss_sum, multiplicativity_sides

BACKENDS = ("exact", "float", "auto")


@dataclass
class VerificationReport:
    claim: str
    params: dict[str, int]
    closed_form: str
    oracle: str
    backend: str
    match: bool
    tolerance: str | None = None
    elapsed_ms: int = 0
    warning: str | None = None

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        if d["warning"] is None:
            del d["warning"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True)
class Options:
    backend: str = "auto"
    tolerance: float | None = None
    timing: bool = False


def fmt_float(x: float) -> str:
    s = format(x, ".15g")
    return "0" if s in ("-0", "0") else s


def fmt_complex(z: complex) -> str:
    return f"{fmt_float(round(z.real, 10))},{fmt_float(round(z.imag, 10))}"


def fmt_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def default_tolerance(q: int, reference: float, override: float | None = None) -> float:
    """Absolute tolerance: 1e-6 for q <= 100, else 1e-3 relative to the reference value."""
    if q <= 100:
        return 1e-6 if override is None else override
    return (1e-3 if override is None else override) * abs(reference)


def quadratic_part(x: CycloSum, p: int) -> cf.QuadraticValue | None:
    """Write x as c0 + c1 sqrt(p) with integers c0, c1 (p a prime = 1 mod 4), if possible."""
    L = x.order
    if L % p or p % 4 != 1:
        return None
    t = next(t for t in itertools.count(2) if math.gcd(t, L) == 1 and legendre(t, p) == -1)
    y = x.galois(t)
    twice_c0 = (x + y).to_integer()
    g = classical_gauss_sum(1, p, L)
    twice_c1p = (g * (x - y)).to_integer()
    if twice_c0 is None or twice_c1p is None or twice_c0 % 2 or twice_c1p % (2 * p):
        return None
    value = cf.QuadraticValue(twice_c0 // 2, twice_c1p // (2 * p), p)
    return value if x.equals_exact(value.as_cyclo(L)) else None


def _resolve_backend(requested: str, modulus, m: int) -> tuple[str, str | None]:
    if requested == "exact":
        if not oracle.exact_feasible(modulus, m):
            raise InfeasibleError(f"exact backend refused by cost guard for q={modulus.q}, m={m}")
        return "exact", None
    if requested == "float":
        if not oracle.float_feasible(modulus):
            raise InfeasibleError(f"float backend refused by cost guard for q={modulus.q}")
        return "float", None
    if oracle.exact_feasible(modulus, m):
        return "exact", None
    if oracle.float_feasible(modulus):
        return "float", "exact backend refused by cost guard; float backend used"
    raise InfeasibleError(f"no backend admitted for q={modulus.q}, m={m}")


def _power_mean_report(claim, params, modulus, m, n, k_power, closed, opts) -> VerificationReport:
    backend, warning = _resolve_backend(opts.backend, modulus, m)
    closed_str = str(closed) if isinstance(closed, cf.QuadraticValue) else fmt_rational(closed)
    if backend == "exact":
        value = oracle.power_sum_k_brute(n, modulus, k_power, m, "exact")
        if isinstance(value, int):
            match = isinstance(closed, (int, Fraction)) and Fraction(closed) == value
            oracle_str = str(value)
        else:
            if isinstance(closed, cf.QuadraticValue):
                match = value.equals_exact(closed.as_cyclo(value.order))
            else:
                match = False
            quad = quadratic_part(value, modulus.q) if modulus.is_prime else None
            oracle_str = str(quad) if quad is not None else fmt_complex(value.eval_float()[0])
        return VerificationReport(claim, params, closed_str, oracle_str, "exact", match, warning=warning)
    approx = oracle.power_sum_k_brute(n, modulus, k_power, m, "float")
    ref = float(closed)
    tol = default_tolerance(modulus.q, ref, opts.tolerance)
    match = abs(approx.value - ref) <= tol
    if not (isinstance(closed, int) or (isinstance(closed, Fraction) and closed.denominator == 1)):
        closed_str = fmt_float(ref)
    return VerificationReport(
        claim, params, closed_str, fmt_float(approx.value), "float", match, fmt_float(tol), warning=warning
    )


# -- per-claim case runners ---------------------------------------------------


def _theorem1(params, opts):
    q, m, n = params["q"], params["m"], params["n"]
    modulus = factorize(q)
    return _power_mean_report("theorem1", params, modulus, m, n, 2, cf.theorem1_closed(modulus, m), opts)


def _lemma9(params, opts):
    p, alpha, m, n = params["p"], params["alpha"], params["m"], params["n"]
    modulus = factorize(p**alpha)
    return _power_mean_report("lemma9", params, modulus, m, n, 2, cf.lemma9_closed(p, alpha, m), opts)


def _int_report(claim, params, closed: int, value: int) -> VerificationReport:
    return VerificationReport(claim, params, str(closed), str(value), "exact", closed == value)


def _t_sum(params, opts):
    p, n, k, a = params["p"], params["n"], params["k"], params["a"]
    return _int_report("t-sum", params, cf.t_closed(p, n, k, a), oracle.t_brute(p, n, k, a))


def _quad_sum(params, opts):
    p, a = params["p"], params["a"]
    return _int_report("quad-sum", params, cf.quadsum_closed(p, a), oracle.quadsum_brute(p, a))


def _count(params, opts):
    p, n, a = params["p"], params["n"], params["a"]
    return _int_report("count", params, cf.count_closed(p, n, a), oracle.count_brute(p, n, a))


def _a_sum(params, opts):
    p, alpha, m, k, n = params["p"], params["alpha"], params["m"], params["k"], params["n"]
    return _int_report("a-sum", params, cf.a_closed(p, alpha, m, k), oracle.a_brute(p, alpha, m, k, n))


def _cyclo_report(claim, params, closed: CycloSum, value: CycloSum, opts) -> VerificationReport:
    if opts.backend == "float":
        c, v = closed.eval_float()[0], value.eval_float()[0]
        tol = opts.tolerance if opts.tolerance is not None else 1e-6
        return VerificationReport(
            claim, params, fmt_complex(c), fmt_complex(v), "float", abs(c - v) <= tol, fmt_float(tol)
        )
    match = closed.equals_exact(value)
    as_int = value.to_integer()
    if as_int is not None:
        v_str = str(as_int)
    else:
        v_str = fmt_complex(value.eval_float()[0])
    # equal values get one rendering; a mismatch shows both sides independently
    c_int = closed.to_integer() if not match else as_int
    c_str = v_str if match else (str(c_int) if c_int is not None else fmt_complex(closed.eval_float()[0]))
    return VerificationReport(claim, params, c_str, v_str, "exact", match)


def _inner_sum(params, opts):
    p, alpha, n, a = params["p"], params["alpha"], params["n"], params["a"]
    return _cyclo_report(
        "inner-sum", params, cf.inner_sum_closed(p, alpha, n, a), oracle.inner_sum_brute(p, alpha, n, a), opts
    )


def _gauss_square(params, opts):
    p = params["p"]
    g = classical_gauss_sum(1, p)
    return _cyclo_report("gauss-square", params, CycloSum.integer(legendre(-1, p) * p, p), g * g, opts)


def _multiplicativity(params, opts):
    m1, m2, u = factorize(params["m1"]), factorize(params["m2"]), params["u"]
    chi1 = next(c for i, c in enumerate(enumerate_characters(m1)) if i == params["chi1"])
    chi2 = next(c for i, c in enumerate(enumerate_characters(m2)) if i == params["chi2"])
    lhs, rhs = multiplicativity_sides(u, m1, m2, chi1, chi2)
    return _cyclo_report("multiplicativity", params, rhs, lhs, opts)


def _zhang_p4(params, opts):
    p, n = params["p"], params["n"]
    return _power_mean_report("zhang-p4", params, factorize(p), 2, n, 2, cf.zhang_p4_closed(p, n), opts)


def _zhang_p6(params, opts):
    p, n = params["p"], params["n"]
    return _power_mean_report("zhang-p6", params, factorize(p), 3, n, 2, cf.zhang_p6_closed(p), opts)


def _zhang_liu(params, opts):
    q, k, n = params["q"], params["k"], params["n"]
    modulus = factorize(q)
    return _power_mean_report("zhang-liu", params, modulus, 2, n, k, cf.zhangliu_closed(modulus, k), opts)


def _bounds(params, opts):
    q, n = params["q"], params["n"]
    rep = bound_check(n, factorize(q))
    warning = None
    if not rep.holds:
        kind = "Weil bound 2 sqrt(p)" if rep.prime_modulus else "2^omega(q) sqrt(q) reading of the bound"
        warning = f"violation of {kind} at character {list(rep.argmax)}"
    return VerificationReport(
        "bounds", params, fmt_float(rep.bound), fmt_float(rep.max_abs), "float", rep.holds, "1e-06", warning=warning
    )


# -- grids --------------------------------------------------------------------


def _need(args: dict, key: str) -> list[int]:
    vals = args.get(key)
    if not vals:
        raise HypothesisError(f"--{key.replace('_', '-')} is required for this claim")
    return vals


def _odd_prime(p: int) -> int:
    if p < 3 or not is_prime(p):
        raise HypothesisError(f"p={p} is not an odd prime")
    return p


def _coprime(n: int, q: int) -> int:
    if math.gcd(n, q) != 1:
        raise HypothesisError(f"n={n} not coprime to q={q}")
    return n


def _grid_theorem1(args):
    for q in _need(args, "q"):
        modulus = factorize(q)
        if not modulus.square_full:
            raise HypothesisError(f"q={q} not square-full")
        for m in args.get("m") or [2]:
            if m < 2:
                raise HypothesisError(f"m={m} < 2")
            for n in args.get("n") or [1]:
                yield {"q": q, "m": m, "n": _coprime(n, q)}


def _grid_lemma9(args):
    for p in map(_odd_prime, _need(args, "p")):
        for alpha in _need(args, "alpha"):
            if alpha < 2:
                raise HypothesisError(f"alpha={alpha} < 2")
            for m in args.get("m") or [2]:
                if m < 2:
                    raise HypothesisError(f"m={m} < 2")
                for n in args.get("n") or [1]:
                    yield {"p": p, "alpha": alpha, "m": m, "n": _coprime(n, p)}


def _grid_t_sum(args):
    n_max = args.get("n_max") or 6
    for p in map(_odd_prime, _need(args, "p")):
        for n in args.get("n") or range(1, n_max + 1):
            for k in args.get("k") or range(1, n + 1):
                if not 1 <= k <= n:
                    raise HypothesisError(f"need 1 <= k <= n, got k={k}, n={n}")
                for a in args.get("a") if args.get("a") is not None else range(p):
                    yield {"p": p, "n": n, "k": k, "a": a}


def _grid_quad_sum(args):
    for p in map(_odd_prime, _need(args, "p")):
        for a in args.get("a") if args.get("a") is not None else range(p):
            yield {"p": p, "a": a}


def _grid_count(args):
    n_max = args.get("n_max") or 8
    for p in map(_odd_prime, _need(args, "p")):
        for n in args.get("n") or range(1, n_max + 1):
            if n < 1:
                raise HypothesisError(f"n={n} < 1")
            for a in args.get("a") if args.get("a") is not None else range(p):
                yield {"p": p, "n": n, "a": a}


def _grid_inner_sum(args):
    for p in map(_odd_prime, _need(args, "p")):
        for alpha in _need(args, "alpha"):
            if alpha < 2:
                raise HypothesisError(f"alpha={alpha} < 2")
            for n in args.get("n") or [1]:
                _coprime(n, p)
                a_vals = args.get("a") or [a for a in range(1, p**alpha) if a % p]
                for a in a_vals:
                    yield {"p": p, "alpha": alpha, "n": n, "a": _coprime(a, p)}


def _grid_a_sum(args):
    for p in map(_odd_prime, _need(args, "p")):
        for alpha in _need(args, "alpha"):
            if alpha < 2:
                raise HypothesisError(f"alpha={alpha} < 2")
            for m in args.get("m") or [2]:
                if m < 1:
                    raise HypothesisError(f"m={m} < 1")
                for k in args.get("k") if args.get("k") is not None else range(m + 1):
                    if not 0 <= k <= m:
                        raise HypothesisError(f"need 0 <= k <= m, got k={k}, m={m}")
                    for n in args.get("n") or [1]:
                        yield {"p": p, "alpha": alpha, "m": m, "k": k, "n": _coprime(n, p)}


def _grid_gauss_square(args):
    for p in args.get("p") or [x for x in range(3, 98) if is_prime(x)]:
        yield {"p": _odd_prime(p)}


def _grid_multiplicativity(args):
    qs = _need(args, "q")
    if len(qs) != 2:
        raise HypothesisError("multiplicativity needs exactly two moduli (--q-list m1,m2)")
    m1, m2 = factorize(qs[0]), factorize(qs[1])
    if math.gcd(m1.q, m2.q) != 1:
        raise HypothesisError(f"moduli {m1.q} and {m2.q} are not coprime")
    for u in args.get("n") or [1]:
        _coprime(u, m1.q * m2.q)
        for i, j in itertools.product(range(m1.phi), range(m2.phi)):
            yield {"m1": m1.q, "m2": m2.q, "u": u, "chi1": i, "chi2": j}


def _grid_zhang_p4(args):
    for p in map(_odd_prime, _need(args, "p")):
        for n in args.get("n") or [1]:
            yield {"p": p, "n": _coprime(n, p)}


def _grid_zhang_p6(args):
    for p in map(_odd_prime, _need(args, "p")):
        if p % 4 != 3:
            raise HypothesisError(f"p={p} = 1 mod 4: sixth power mean closed form is an open question")
        for n in args.get("n") or [1]:
            yield {"p": p, "n": _coprime(n, p)}


def _grid_zhang_liu(args):
    for q in _need(args, "q"):
        modulus = factorize(q)
        if not modulus.square_full:
            raise HypothesisError(f"q={q} not square-full")
        for k in args.get("k") or [2]:
            if k < 1:
                raise HypothesisError(f"k={k} < 1")
            for n in args.get("n") or [1]:
                yield {"q": q, "k": k, "n": _coprime(n, q)}


def _grid_bounds(args):
    for q in _need(args, "q"):
        factorize(q)
        for n in args.get("n") or [1]:
            yield {"q": q, "n": _coprime(n, q)}


@dataclass(frozen=True)
class Claim:
    grid: Callable[[dict], Iterable[dict]]
    run: Callable[[dict, Options], VerificationReport]


CLAIMS: dict[str, Claim] = {
    "theorem1": Claim(_grid_theorem1, _theorem1),
    "lemma9": Claim(_grid_lemma9, _lemma9),
    "t-sum": Claim(_grid_t_sum, _t_sum),
    "quad-sum": Claim(_grid_quad_sum, _quad_sum),
    "count": Claim(_grid_count, _count),
    "inner-sum": Claim(_grid_inner_sum, _inner_sum),
    "a-sum": Claim(_grid_a_sum, _a_sum),
    "gauss-square": Claim(_grid_gauss_square, _gauss_square),
    "multiplicativity": Claim(_grid_multiplicativity, _multiplicativity),
    "zhang-p4": Claim(_grid_zhang_p4, _zhang_p4),
    "zhang-p6": Claim(_grid_zhang_p6, _zhang_p6),
    "zhang-liu": Claim(_grid_zhang_liu, _zhang_liu),
    "bounds": Claim(_grid_bounds, _bounds),
}


def build_grid(claim: str, args: dict) -> list[dict]:
    """Expand the parameter grid; raises HypothesisError on any invalid point."""
    if claim not in CLAIMS:
        raise HypothesisError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)}")
    return list(CLAIMS[claim].grid(args))


def run_case(claim: str, params: dict, opts: Options) -> VerificationReport:
    start = time.perf_counter()
    report = CLAIMS[claim].run(params, opts)
    if opts.timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# -- table ----------------------------------------------------------------------


@dataclass
class TableRow:
    q: int
    m: int
    n: int
    closed_form: str
    oracle: str
    backend: str
    match: bool | None
    tolerance: str | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def validate_table(qs: list[int], ms: list[int], n: int) -> None:
    if not qs:
        raise HypothesisError("empty q list")
    if not ms:
        raise HypothesisError("empty m range")
    for q in qs:
        if not factorize(q).square_full:
            raise HypothesisError(f"q={q} not square-full")
        _coprime(n, q)
    for m in ms:
        if m < 2:
            raise HypothesisError(f"m={m} < 2")


def table_row(q: int, m: int, n: int, opts: Options) -> TableRow:
    modulus = factorize(q)
    closed = cf.theorem1_closed(modulus, m)
    try:
        backend, _ = _resolve_backend(opts.backend, modulus, m)
    except InfeasibleError:
        return TableRow(q, m, n, str(closed), "skipped(guard)", "none", None)
    rep = _power_mean_report("theorem1", {"q": q, "m": m, "n": n}, modulus, m, n, 2, closed, opts)
    return TableRow(q, m, n, rep.closed_form, rep.oracle, rep.backend, rep.match, rep.tolerance)
