from fractions import Fraction
from math import comb, sqrt

import pytest

from gaussmoments.arith import factorize
from gaussmoments.closedform import (
    InnerSumCase,
    QuadraticValue,
    a_closed,
    classify_inner,
    count_closed,
    inner_sum_closed,
    lemma9_closed,
    quadsum_closed,
    t_closed,
    theorem1_closed,
    zhang_p4_closed,
    zhang_p6_closed,
    zhangliu_closed,
)
from gaussmoments.cyclo import CycloSum
from gaussmoments.errors import HypothesisError
from gaussmoments.gauss import classical_gauss_sum


@pytest.mark.parametrize("q, m, value", [(9, 2, 1296), (9, 3, 46656), (25, 2, 40000), (225, 2, 51_840_000)])
def test_theorem1_examples(q, m, value):
    assert theorem1_closed(q, m) == value


@pytest.mark.parametrize("q, m", [(45, 2), (7, 2), (9, 1), (9, 0)])
def test_theorem1_guards(q, m):
    with pytest.raises(HypothesisError):
        theorem1_closed(q, m)


def test_theorem1_even_modulus_rejected():
    with pytest.raises(HypothesisError):
        theorem1_closed(36, 2)


def test_theorem1_is_exact_for_large_values():
    assert theorem1_closed(675, 4) == 4**6 * 675**3 * 360**2


@pytest.mark.parametrize("args, value", [((3, 2, 2), 1296), ((5, 2, 2), 40000), ((3, 3, 2), 34992)])
def test_lemma9_examples(args, value):
    assert lemma9_closed(*args) == value


@pytest.mark.parametrize("args", [(3, 1, 2), (3, 2, 1), (9, 2, 2)])
def test_lemma9_guards(args):
    with pytest.raises(HypothesisError):
        lemma9_closed(*args)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_t_trivial_case(p):
    assert t_closed(p, 1, 1, 0) == 0


@pytest.mark.parametrize("args, value", [((5, 2, 2, 0), 4), ((3, 2, 1, 0), 0), ((5, 3, 2, 1), 1)])
def test_t_examples(args, value):
    assert t_closed(*args) == value


def test_t_range_checked():
    with pytest.raises(HypothesisError):
        t_closed(5, 2, 3, 0)
    with pytest.raises(HypothesisError):
        t_closed(5, 2, 0, 0)


def test_t_descent():
    for p in (3, 5, 7, 11):
        for n in range(2, 7):
            for k in range(1, n):
                for a in range(p):
                    assert t_closed(p, n, k, a) == -t_closed(p, n - 1, k, a)


@pytest.mark.parametrize("args, value", [((5, 0), 4), ((5, 1), -1), ((7, 14), 6)])
def test_quadsum_examples(args, value):
    assert quadsum_closed(*args) == value


@pytest.mark.parametrize("args, value", [((3, 2, 0), 2), ((3, 2, 1), 1)])
def test_count_examples(args, value):
    assert count_closed(*args) == value


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_count_single_coordinate_zero(p):
    assert count_closed(p, 1, 0) == 0


def test_count_rows_sum_to_all_tuples():
    for p in (3, 5, 7):
        for n in range(1, 9):
            assert sum(count_closed(p, n, a) for a in range(p)) == (p - 1) ** n


def test_classification_is_exhaustive():
    for p, alpha in ((3, 2), (3, 3), (5, 2), (7, 2), (5, 3)):
        pa, low = p**alpha, p ** (alpha - 1)
        for a in range(1, pa):
            if a % p == 0:
                continue
            case = classify_inner(p, alpha, a)
            if case.tag == "exactly-divides":
                assert a == case.r * low + case.epsilon
                assert 1 <= case.r <= p - 1 and case.epsilon in (1, -1)
            else:
                assert case.r is None and case.epsilon is None


def test_inner_sum_examples():
    assert inner_sum_closed(3, 2, 1, 1).equals_exact(6)
    assert classify_inner(3, 2, 1) == InnerSumCase("fully-divides")
    x = inner_sum_closed(3, 2, 1, 4)
    g = classical_gauss_sum(1, 3, 9)
    assert x.equals_exact(g * -3 - 3)
    v, _ = x.eval_float()
    assert abs(v - complex(-3, -3 * sqrt(3))) < 1e-9
    assert inner_sum_closed(5, 2, 1, 2).is_zero()


def test_inner_sum_guards():
    with pytest.raises(HypothesisError):
        inner_sum_closed(3, 2, 3, 1)
    with pytest.raises(HypothesisError):
        inner_sum_closed(3, 1, 1, 1)


@pytest.mark.parametrize("k, value", [(0, 72), (1, 0), (2, 144)])
def test_a_examples(k, value):
    assert a_closed(3, 2, 2, k) == value


def test_recombination():
    for p in (3, 5, 7):
        for alpha in (2, 3):
            phi = p ** (alpha - 1) * (p - 1)
            for m in (2, 3, 4):
                total = phi * sum(comb(m, k) * a_closed(p, alpha, m, k) for k in range(m + 1))
                assert total == lemma9_closed(p, alpha, m)


def test_a_recursion():
    for p in (3, 5, 7):
        for alpha in (2, 3):
            phi = p ** (alpha - 1) * (p - 1)
            for m in range(2, 6):
                for k in range(m):
                    assert a_closed(p, alpha, m, k) == 2 * phi * a_closed(p, alpha, m - 1, k)


def test_zhang_p4_examples():
    assert zhang_p4_closed(7, 1) == 624
    five = zhang_p4_closed(5, 1)
    assert five == QuadraticValue(176, 16, 5)
    assert float(five) == pytest.approx(211.7770876, abs=1e-6)
    assert str(five) == "176+16*sqrt(5)"
    assert zhang_p4_closed(5, 2) == QuadraticValue(176, -16, 5)


def test_quadratic_value_as_cyclo():
    v = QuadraticValue(176, 16, 5).as_cyclo(20)
    assert abs(v.eval_float()[0] - (176 + 16 * sqrt(5))) < 1e-9


def test_zhang_p4_rejects_multiples():
    with pytest.raises(HypothesisError):
        zhang_p4_closed(7, 14)


def test_zhang_p6():
    assert zhang_p6_closed(7) == 13056
    assert zhang_p6_closed(11) == 102400
    with pytest.raises(HypothesisError, match="open question"):
        zhang_p6_closed(5)


@pytest.mark.parametrize("q, k, value", [(9, 2, 1296), (25, 2, 40000), (9, 3, Fraction(162))])
def test_zhangliu_examples(q, k, value):
    assert zhangliu_closed(q, k) == value


def test_zhangliu_at_two_is_theorem1():
    square_full = [q for q in range(3, 1001, 2) if factorize(q).square_full]
    assert len(square_full) > 10
    for q in square_full:
        assert zhangliu_closed(q, 2) == theorem1_closed(q, 2)


def test_zhangliu_guards():
    with pytest.raises(HypothesisError):
        zhangliu_closed(45, 2)
    with pytest.raises(HypothesisError):
        zhangliu_closed(9, 0)


def test_return_types():
    assert isinstance(theorem1_closed(27, 3), int)
    assert isinstance(inner_sum_closed(3, 2, 1, 1), CycloSum)
