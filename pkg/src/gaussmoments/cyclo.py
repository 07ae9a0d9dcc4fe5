"""Exact arithmetic on integer combinations of L-th roots of unity.

A :class:`CycloSum` stores the coefficient vector of ``sum_j c_j e(j/L)`` in the
group ring Z[C_L]. That representation is not canonical (``1 + e(1/3) + e(2/3)``
is zero), so equality is decided by divisibility of the difference by the L-th
cyclotomic polynomial, see :meth:`CycloSum.equals_exact`.

Coefficients are int64 while an l1-norm bound guarantees no overflow, and fall
back to Python integers (numpy object arrays) beyond that.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import _trial_factor

_INT64_SAFE = 1 << 62
_UNIT_ROUNDOFF = 2.0**-53


class PrecisionWarning(UserWarning):
    """Double precision cannot resolve a value to the requested accuracy."""


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial.

    Obtained from X**n - 1 by exact division by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_divide(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_divide(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("division is not exact")
    return quot


def _radical(n: int) -> int:
    return math.prod(p for p, _ in _trial_factor(n)) if n > 1 else 1


def _as_array(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype == object or arr.size == 0:
        return _normalize(np.array(values, dtype=object))
    return _normalize(arr.astype(np.int64))


def _l1(arr: np.ndarray) -> int:
    if arr.dtype == object:
        return sum(abs(int(x)) for x in arr)
    return int(np.abs(arr).sum())


def _normalize(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object and _l1(arr) < _INT64_SAFE:
        arr = arr.astype(np.int64)
    arr.flags.writeable = False
    return arr


def _widen(arr: np.ndarray) -> np.ndarray:
    return arr if arr.dtype == object else arr.astype(object)


class CycloSum:
    """An element ``sum_j coeffs[j] * e(j / order)`` of Z[e(1/order)]."""

    __slots__ = ("order", "coeffs", "_l1")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        arr = coeffs if isinstance(coeffs, np.ndarray) and not coeffs.flags.writeable else _as_array(coeffs)
        if arr.shape != (order,):
            raise ValueError(f"expected {order} coefficients, got shape {arr.shape}")
        self.order = order
        self.coeffs = arr
        self._l1 = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> CycloSum:
        return cls(order, np.zeros(order, dtype=np.int64))

    @classmethod
    def integer(cls, value: int, order: int) -> CycloSum:
        arr = np.zeros(order, dtype=object if abs(value) >= _INT64_SAFE else np.int64)
        arr[0] = value
        return cls(order, _normalize(arr))

    @classmethod
    def from_root(cls, e: int, denom: int, order: int) -> CycloSum:
        """The root of unity e(e/denom), embedded at the given order."""
        if denom < 1 or order % denom:
            raise ValueError(f"denominator {denom} does not divide working order {order}")
        arr = np.zeros(order, dtype=np.int64)
        arr[(e % denom) * (order // denom)] = 1
        return cls(order, _normalize(arr))

    @classmethod
    def from_exponents(cls, exponents, order: int, weights=None) -> CycloSum:
        """Sum of e(t/order) over the given integer exponents t (optionally weighted)."""
        t = np.asarray(exponents, dtype=np.int64) % order
        if weights is None:
            arr = np.bincount(t, minlength=order).astype(np.int64)
        else:
            arr = np.zeros(order, dtype=np.int64)
            np.add.at(arr, t, np.asarray(weights, dtype=np.int64))
        return cls(order, _normalize(arr))

    # -- properties -------------------------------------------------------

    @property
    def l1(self) -> int:
        if self._l1 is None:
            self._l1 = _l1(self.coeffs)
        return self._l1

    def nonzero(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: CycloSum) -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _coerce(self, other) -> CycloSum:
        if isinstance(other, CycloSum):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return CycloSum.integer(int(other), self.order)
        return NotImplemented

    def __add__(self, other) -> CycloSum:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if self.l1 + other.l1 >= _INT64_SAFE:
            a, b = _widen(a), _widen(b)
        return CycloSum(self.order, _normalize(a + b))

    __radd__ = __add__

    def __neg__(self) -> CycloSum:
        return CycloSum(self.order, _normalize(-self.coeffs))

    def __sub__(self, other) -> CycloSum:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycloSum:
        return (-self) + other

    def __mul__(self, other) -> CycloSum:
        if isinstance(other, (int, np.integer)):
            other = int(other)
            a = self.coeffs
            if self.l1 * abs(other) >= _INT64_SAFE:
                a = _widen(a)
            return CycloSum(self.order, _normalize(a * other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloSum(self.order, _normalize(_cyclic_convolve(self, other)))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CycloSum:
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = CycloSum.integer(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def conjugate(self) -> CycloSum:
        return CycloSum(self.order, _normalize(np.roll(self.coeffs[::-1], 1)))

    def embed(self, order: int) -> CycloSum:
        """The same value viewed at a multiple of the current order."""
        if order % self.order:
            raise ValueError(f"{order} is not a multiple of {self.order}")
        arr = np.zeros(order, dtype=self.coeffs.dtype)
        arr[:: order // self.order] = self.coeffs
        return CycloSum(order, _normalize(arr))

    def galois(self, t: int) -> CycloSum:
        """Image under the automorphism e(1/L) -> e(t/L); t must be a unit mod L."""
        L = self.order
        if math.gcd(t, L) != 1:
            raise ValueError(f"{t} is not a unit mod {L}")
        arr = np.zeros(L, dtype=self.coeffs.dtype)
        arr[(np.arange(L) * t) % L] = self.coeffs
        return CycloSum(L, _normalize(arr))

    # -- exact comparison ------------------------------------------------

    def reduce(self) -> tuple[int, ...]:
        """Canonical coordinates: the remainder modulo Phi_L, of length phi(L)."""
        return _reduce_mod_cyclotomic(self.coeffs, self.order)

    def is_zero(self) -> bool:
        if not self.coeffs.any():
            return True
        return not any(self.reduce())

    def equals_exact(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare CycloSum with {type(other).__name__}")
        if np.array_equal(self.coeffs, other.coeffs):
            return True
        return (self - other).is_zero()

    def to_integer(self) -> int | None:
        """The rational integer this element equals, or None if it is not one."""
        r = self.reduce()
        return int(r[0]) if not any(r[1:]) else None

    def __eq__(self, other) -> bool:
        if isinstance(other, (CycloSum, int, np.integer)):
            try:
                return self.equals_exact(other)
            except ValueError:
                return False
        return NotImplemented

    __hash__ = None

    # -- floating point ---------------------------------------------------

    def eval_float(self) -> tuple[complex, float]:
        """Complex value and an a-priori bound on its absolute error."""
        idx = self.nonzero()
        angles = 2.0 * np.pi * idx / self.order
        cs = [float(c) for c in self.coeffs[idx]]
        re = math.fsum(c * x for c, x in zip(cs, np.cos(angles).tolist()))
        im = math.fsum(c * y for c, y in zip(cs, np.sin(angles).tolist()))
        bound = 16.0 * _UNIT_ROUNDOFF * float(self.l1)
        value = complex(re, im)
        if bound > 1e-6 * max(1.0, abs(value)):
            warnings.warn(
                f"float evaluation error bound {bound:.3g} is large relative to |value| {abs(value):.3g}",
                PrecisionWarning,
                stacklevel=2,
            )
        return value, bound

    def __complex__(self) -> complex:
        return self.eval_float()[0]

    def __repr__(self) -> str:
        terms = [f"{int(self.coeffs[j])}*e({Fraction(int(j), self.order)})" for j in self.nonzero()[:8]]
        more = " + ..." if len(self.nonzero()) > 8 else ""
        return f"CycloSum(L={self.order}: {' + '.join(terms) or '0'}{more})"


def _cyclic_convolve(x: CycloSum, y: CycloSum) -> np.ndarray:
    L = x.order
    a, b = x.coeffs, y.coeffs
    if x.l1 * y.l1 >= _INT64_SAFE:
        a, b = _widen(a), _widen(b)
    ia, ib = np.flatnonzero(a), np.flatnonzero(b)
    if len(ia) == 0 or len(ib) == 0:
        return np.zeros(L, dtype=np.int64)
    if len(ia) * len(ib) <= 4 * L:
        # sparse: only the nonzero pairs
        idx = (ia[:, None] + ib[None, :]) % L
        vals = a[ia][:, None] * b[ib][None, :]
        out = np.zeros(L, dtype=vals.dtype)
        np.add.at(out, idx.ravel(), vals.ravel())
        return out
    full = np.convolve(a, b)
    out = full[:L].copy()
    out[: L - 1] += full[L:]
    return out


def _reduce_mod_cyclotomic(coeffs: np.ndarray, L: int) -> tuple[int, ...]:
    # Phi_L(X) = Phi_r(X**s) with r = rad(L), s = L / r, so dividing by Phi_L
    # splits into independent divisions of the s residue-class slices by Phi_r.
    r = _radical(L)
    s = L // r
    phi_r = np.array(cyclotomic_poly(r), dtype=object)
    d = len(phi_r) - 1
    F = np.array(coeffs, dtype=object).reshape(r, s).T.copy()
    for deg in range(r - 1, d - 1, -1):
        c = F[:, deg]
        if any(c):
            F[:, deg - d : deg + 1] -= c[:, None] * phi_r[None, :]
    rem = F[:, :d].T.reshape(-1)
    return tuple(int(v) for v in rem)


def working_order(q: int, phi: int) -> int:
    """Order at which both e(x/q) and character values of modulus q live."""
    return math.lcm(q, phi)
