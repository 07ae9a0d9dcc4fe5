import cmath
import math

import pytest

from gaussmoments.arith import factorize
from gaussmoments.characters import (
    Character,
    Root,
    enumerate_characters,
    evaluate,
    legendre_character,
    principal,
)
from gaussmoments.cyclo import CycloSum

from conftest import naive_character_table

ODD_UP_TO_49 = list(range(3, 50, 2))


def _complex(root):
    return 0 if root is None else cmath.exp(2j * math.pi * root.e / root.D)


@pytest.mark.parametrize("q, count", [(9, 6), (675, 360), (7, 6), (225, 120)])
def test_enumeration_size(q, count):
    chars = list(enumerate_characters(factorize(q)))
    assert len(chars) == count
    assert len({c.indices for c in chars}) == count
    assert [c.indices for c in chars] == sorted(c.indices for c in chars)
    assert chars[0].is_principal


def test_single_quadratic_character_mod_7():
    chars = list(enumerate_characters(factorize(7)))
    quadratic = [c for c in chars if c.order == 2]
    assert [c.indices for c in quadratic] == [(3,)]
    assert quadratic[0] == legendre_character(factorize(7))


def test_evaluate_examples():
    assert evaluate(principal(factorize(9)), 2).e == 0
    assert evaluate(legendre_character(factorize(7)), 3) == Root(3, 6)  # e(3/6) = e(1/2) = -1
    for chi in enumerate_characters(factorize(9)):
        assert evaluate(chi, 3) is None


def test_legendre_character_value_is_minus_one():
    r = evaluate(legendre_character(factorize(7)), 3)
    assert CycloSum.from_root(r.e, r.D, r.D).equals_exact(-1)


@pytest.mark.parametrize("q", [7, 9, 15, 25, 45, 63])
def test_values_match_independent_table(q):
    # the naive table uses its own (smallest) generators, which agree with ours
    chars = list(enumerate_characters(factorize(q)))
    table = naive_character_table(q)
    for chi, ref in zip(chars, table):
        for a, v in ref.items():
            assert abs(_complex(evaluate(chi, a)) - v) < 1e-9


@pytest.mark.parametrize("q", [9, 25, 27, 49])
def test_orthogonality_exact(q):
    m = factorize(q)
    chars = list(enumerate_characters(m))
    D = chars[0].exponent
    for a in range(1, q):
        if math.gcd(a, q) > 1:
            continue
        total = CycloSum.zero(D)
        for chi in chars:
            r = evaluate(chi, a)
            total = total + CycloSum.from_root(r.e, r.D, D)
        assert total.equals_exact(m.phi if a == 1 else 0)


@pytest.mark.parametrize("q", ODD_UP_TO_49)
def test_conjugation_and_multiplicativity(q):
    m = factorize(q)
    units = [a for a in range(1, q) if math.gcd(a, q) == 1]
    for chi in enumerate_characters(m):
        D = chi.exponent
        bar = chi.conj()
        for a in units:
            assert evaluate(bar, a).e == (-evaluate(chi, a).e) % D
            for b in units:
                assert (evaluate(chi, a).e + evaluate(chi, b).e) % D == evaluate(chi, a * b % q).e
        for a in range(q):
            assert (evaluate(chi, a) is None) == (math.gcd(a, q) > 1)


def test_character_group_law():
    m = factorize(45)
    chars = list(enumerate_characters(m))
    for x in chars[:8]:
        for y in chars[:8]:
            xy = x * y
            for a in (1, 2, 4, 7, 44):
                assert (evaluate(x, a).e + evaluate(y, a).e) % x.exponent == evaluate(xy, a).e


def test_index_range_is_checked():
    with pytest.raises(ValueError):
        Character(factorize(9), (6,))
    with pytest.raises(ValueError):
        Character(factorize(45), (1,))
