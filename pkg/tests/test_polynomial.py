from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rotosc.polynomial import (
    RationalPolynomial,
    count_odd_positive_roots,
    count_roots,
    isolate_real_roots,
    refine_root,
    sign_at,
    square_free_decomposition,
    sturm_sequence,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, min_size=1, max_size=7).map(RationalPolynomial)

X = sympy.Symbol("x")


def to_sympy(p):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                       for c in reversed(p.coefficients)] or [0], X)


def test_zero_and_degree():
    assert RationalPolynomial().degree == -1
    assert RationalPolynomial([1, 2, 0, 0]).degree == 1
    assert RationalPolynomial([0, 0]).is_zero()


def test_exact_arithmetic():
    p = RationalPolynomial([Fraction(1, 3), 1])
    q = RationalPolynomial([Fraction(-1, 3), 1])
    assert (p * q).coefficients == (Fraction(-1, 9), 0, 1)
    assert (p + q).coefficients == (0, 2)
    assert p(Fraction(2, 3)) == 1


@given(polys, polys)
def test_divmod_identity(p, q):
    if q.is_zero():
        return
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(polys, rationals)
def test_evaluation_matches_sympy(p, x):
    assert p(x) == to_sympy(p).eval(sympy.Rational(x.numerator, x.denominator))


@settings(max_examples=60)
@given(st.lists(rationals, min_size=2, max_size=6))
def test_root_count_matches_sympy(coeffs):
    p = RationalPolynomial(coeffs)
    if p.degree < 1:
        return
    seq = sturm_sequence(p)
    distinct = len(set(sympy.real_roots(to_sympy(p))))
    assert count_roots(seq, float("-inf"), float("inf")) == distinct
    assert len(isolate_real_roots(p)) == distinct


def test_sturm_counts_half_open_interval():
    p = RationalPolynomial([-2, 0, 1])          # x^2 - 2
    seq = sturm_sequence(p)
    assert count_roots(seq, 0, 2) == 1
    assert count_roots(seq, -2, 2) == 2


def test_refine_sqrt2():
    p = RationalPolynomial([-2, 0, 1])
    lo, hi = refine_root(p, Fraction(1), Fraction(2), Fraction(1, 2**60))
    assert lo * lo < 2 <= hi * hi or lo == hi
    assert float(hi) == pytest.approx(2**0.5, abs=1e-17)


def test_sign_at_limits():
    p = RationalPolynomial([0, 0, -3, 1])       # x^3 - 3x^2
    assert sign_at(p, 0) == -1                  # just right of 0
    assert sign_at(p, float("inf")) == 1
    assert sign_at(p, float("-inf")) == -1


def test_square_free_and_tangential_roots():
    # (x - 1)^2 (x - 2): one sign change at 2, tangential at 1
    p = RationalPolynomial([-1, 1])
    p = p * p * RationalPolynomial([-2, 1])
    factors = square_free_decomposition(p)
    assert sorted(m for _, m in factors) == [1, 2]
    assert count_odd_positive_roots(p) == (1, True)


def test_parity_and_in_square():
    p = RationalPolynomial([0, 3, 0, -1])
    assert p.parity() == 1
    q = RationalPolynomial([2, 0, 5])
    assert q.parity() == 0
    assert q.in_square().coefficients == (2, 5)
    assert RationalPolynomial([1, 1]).parity() is None


@given(polys)
def test_json_round_trip(p):
    assert RationalPolynomial.from_json(p.to_json()) == p
