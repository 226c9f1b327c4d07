from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from effmod.dvr import (INF, NotDivisible, RElem, beta, div_t_exact, format_relem, gcd, is_unit,
                        parse_relem, valuation, xgcd)
from strategies import relem_tuples


def schoolbook(a, b, p):
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def test_square_of_one_plus_t():
    a = RElem([1, 1], 3)
    assert a * a == RElem([1, 2, 1], 3)


def test_characteristic_two_sum_vanishes():
    a = RElem([1, 1], 2)
    assert not (a + a)


@given(relem_tuples(2, 6))
def test_product_matches_schoolbook(args):
    p, a, b = args
    assert a * b == RElem(schoolbook(a.coeffs, b.coeffs, p), p)


@given(relem_tuples(3))
def test_ring_axioms(args):
    p, a, b, c = args
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a and a + b == b + a
    assert a + RElem.zero(p) == a
    assert a - a == RElem.zero(p)


@given(relem_tuples(2))
def test_valuation_is_additive(args):
    p, a, b = args
    if a and b:
        assert valuation(a * b) == valuation(a) + valuation(b)


@given(relem_tuples(1), st.integers(0, 6))
def test_div_t_exact_inverts_shift(args, n):
    p, a = args
    assert div_t_exact(RElem.t_pow(n, p) * a, n) == a


def test_valuation_examples():
    assert valuation(RElem([0, 0, 1, 1], 3)) == 2
    assert valuation(RElem.zero(3)) == INF
    assert valuation(RElem([1, 1], 3)) == 0


def test_div_t_exact_examples():
    assert div_t_exact(RElem([0, 0, 1, 1], 3), 2) == RElem([1, 1], 3)
    assert div_t_exact(RElem.zero(3), 5) == RElem.zero(3)
    with pytest.raises(NotDivisible):
        div_t_exact(RElem.t_pow(1, 3), 2)


def test_units():
    assert is_unit(RElem([1, 1], 3))
    assert not is_unit(RElem.t_pow(1, 3))
    assert not is_unit(RElem.zero(3))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_beta_matches_integer_binomials(p):
    for k in range(1, p):
        assert beta(p, k) == (comb(p, k) // p) % p
    assert [beta(3, 1), beta(5, 2), beta(2, 1)] == [1, 2, 1]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_beta_carry_identity(p):
    x, y = sympy.symbols("x y")
    carry = sympy.Poly(sympy.expand(((x + y) ** p - x ** p - y ** p) / p), x, y)
    for k in range(1, p):
        assert carry.coeff_monomial(x ** k * y ** (p - k)) % p == beta(p, k)


@given(relem_tuples(2))
def test_xgcd_bezout(args):
    p, a, b = args
    g, s, u = xgcd(a, b)
    assert s * a + u * b == g
    assert g == gcd(a, b)
    if g:
        assert not (a % g) and not (b % g)


@given(relem_tuples(1, 6))
def test_text_round_trip(args):
    p, a = args
    assert parse_relem(format_relem(a), p) == a


def test_text_form():
    assert format_relem(RElem([1, 2, 1], 3)) == "1 + 2*t + t^2"
    assert parse_relem("t^2 + 2*t + 1", 3) == RElem([1, 2, 1], 3)
