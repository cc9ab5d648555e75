"""Exact univariate polynomials over the rationals and Sturm-sequence root tools."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

_INF = math.inf


class RationalPolynomial:
    """Polynomial with :class:`fractions.Fraction` coefficients.

    Coefficients are stored in ascending order of power, so ``coefficients[k]``
    multiplies ``x**k``.  Trailing zeros are stripped; the zero polynomial has
    an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coefficients", "_integer_form")

    def __init__(self, coefficients: Iterable[Rational] = ()) -> None:
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(coeffs)
        self._integer_form: tuple[int, tuple[int, ...]] | None = None

    @classmethod
    def constant(cls, c: Rational) -> RationalPolynomial:
        return cls([c])

    @classmethod
    def monomial(cls, power: int, c: Rational = 1) -> RationalPolynomial:
        return cls([0] * power + [c])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coefficients]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            terms.append(f"({c})" + ("" if k == 0 else "*a" if k == 1 else f"*a^{k}"))
        return " + ".join(terms)

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self.coefficients)

    def __add__(self, other: RationalPolynomial | Rational) -> RationalPolynomial:
        other = _lift(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other: RationalPolynomial | Rational) -> RationalPolynomial:
        return self + (-_lift(other))

    def __rsub__(self, other: Rational) -> RationalPolynomial:
        return _lift(other) - self

    def __mul__(self, other: RationalPolynomial | Rational) -> RationalPolynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, ci in enumerate(self.coefficients):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coefficients):
                out[i + j] += ci * cj
        return RationalPolynomial(out)

    def __rmul__(self, other: Rational) -> RationalPolynomial:
        return self.scale(other)

    def scale(self, c: Rational) -> RationalPolynomial:
        c = Fraction(c)
        return RationalPolynomial(c * x for x in self.coefficients)

    def shift_power(self, k: int = 1) -> RationalPolynomial:
        """Multiply by ``x**k``."""
        if self.is_zero():
            return self
        return RationalPolynomial([0] * k + list(self.coefficients))

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(k * c for k, c in enumerate(self.coefficients) if k)

    def integer_form(self) -> tuple[int, tuple[int, ...]]:
        """(D, C) with integer C such that p(x) = sum(C[k] x**k) / D."""
        if self._integer_form is None:
            den = math.lcm(*(c.denominator for c in self.coefficients)) if self.coefficients else 1
            ints = tuple(c.numerator * (den // c.denominator) for c in self.coefficients)
            self._integer_form = (den, ints)
        return self._integer_form

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction input, float otherwise."""
        if isinstance(x, (int, Fraction)):
            if self.is_zero():
                return Fraction(0)
            x = Fraction(x)
            num, den = x.numerator, x.denominator
            D, C = self.integer_form()
            acc = 0
            power = 1
            # homogenised Horner: sum C_k num^k den^(d-k)
            for c in reversed(C):
                acc = acc * num + c * power
                power *= den
            return Fraction(acc, D * den ** self.degree)
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + float(c)
        return acc

    def magnitude(self, x: float) -> float:
        """sum |c_k| |x|^k, the natural scale for judging p(x) against zero."""
        ax = abs(float(x))
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * ax + abs(float(c))
        return acc

    def divmod(self, other: RationalPolynomial) -> tuple[RationalPolynomial, RationalPolynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c == 0:
                continue
            quot[k - dq] = c
            for j, oc in enumerate(other.coefficients):
                rem[k - dq + j] -= c * oc
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq])

    def __mod__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self.divmod(other)[1]

    def __floordiv__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self.divmod(other)[0]

    def monic(self) -> RationalPolynomial:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def primitive_sign_preserving(self) -> RationalPolynomial:
        """Rescale by a positive constant to keep coefficient sizes small."""
        if self.is_zero():
            return self
        return self.scale(1 / abs(self.leading))

    def parity(self) -> int | None:
        """0 if even, 1 if odd, None if mixed (the zero polynomial is even)."""
        powers = {k % 2 for k, c in enumerate(self.coefficients) if c != 0}
        if len(powers) > 1:
            return None
        return powers.pop() if powers else 0

    def in_square(self) -> RationalPolynomial:
        """For p(x) = x**r g(x**2) with r = parity, return g."""
        r = self.parity()
        if r is None:
            raise ValueError("polynomial has mixed parity")
        return RationalPolynomial(self.coefficients[r::2])

    def to_json(self) -> list[list[str]]:
        return [[str(c.numerator), str(c.denominator)] for c in self.coefficients]

    @classmethod
    def from_json(cls, pairs: Sequence[Sequence[str]]) -> RationalPolynomial:
        return cls(Fraction(int(p), int(q)) for p, q in pairs)


def _lift(x: RationalPolynomial | Rational) -> RationalPolynomial:
    return x if isinstance(x, RationalPolynomial) else RationalPolynomial([x])


def gcd(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    """Monic greatest common divisor."""
    while not q.is_zero():
        p, q = q, (p % q).primitive_sign_preserving()
    return p.monic()


def square_free_decomposition(p: RationalPolynomial) -> list[tuple[RationalPolynomial, int]]:
    """Yun's algorithm: p = c * prod(f_k ** k) with each f_k square-free."""
    if p.degree < 1:
        return []
    factors = []
    dp = p.derivative()
    a = gcd(p, dp)
    b = p // a
    c = dp // a
    k = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = gcd(b, d)
        if g.degree > 0:
            factors.append((g, k))
        b = b // g
        c = d // g
        k += 1
    return factors


def sign_at(p: RationalPolynomial, x: Rational | float) -> int:
    """Sign of p at x; x may be +-inf.  ``x == 0`` means the limit 0+."""
    if p.is_zero():
        return 0
    if x == _INF:
        return 1 if p.leading > 0 else -1
    if x == -_INF:
        s = 1 if p.leading > 0 else -1
        return s if p.degree % 2 == 0 else -s
    if x == 0:
        for c in p.coefficients:
            if c != 0:
                return 1 if c > 0 else -1
    v = p(Fraction(x))
    return (v > 0) - (v < 0)


def _primitive(ints: list[int]) -> list[int]:
    g = 0
    for c in ints:
        g = math.gcd(g, c)
        if g == 1:
            return ints
    return [c // g for c in ints] if g > 1 else ints


def _positive_prem(f: list[int], g: list[int]) -> list[int]:
    """Remainder of |lc(g)|**k * f by g for the k that keeps it integral.

    Scaling by a positive factor preserves the signs a Sturm chain relies on.
    """
    rem = list(f)
    dg = len(g) - 1
    lead = g[-1]
    mag = abs(lead)
    sgn = 1 if lead > 0 else -1
    while len(rem) - 1 >= dg and rem:
        top = rem[-1]
        shift = len(rem) - 1 - dg
        rem = [mag * c for c in rem]
        t = sgn * top
        for j, gc in enumerate(g):
            rem[shift + j] -= t * gc
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    """Sturm chain p, p', -rem(p, p'), ... ending with the last nonzero term.

    Members are positive multiples of the classical chain, kept as primitive
    integer polynomials.  The final element is gcd(p, p') up to a constant; it
    has positive degree exactly when p has a repeated root.
    """
    _, ints = p.integer_form()
    f0 = _primitive(list(ints))
    f1 = _primitive([k * c for k, c in enumerate(f0) if k])
    chain = [f0]
    if not f1:
        return [RationalPolynomial(f0)]
    chain.append(f1)
    while True:
        r = _positive_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive([-c for c in r]))
    return [RationalPolynomial(c) for c in chain]


def sign_variations(seq: Sequence[RationalPolynomial], x: Rational | float) -> int:
    signs = [s for s in (sign_at(f, x) for f in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(
    seq: Sequence[RationalPolynomial], lo: Rational | float, hi: Rational | float
) -> int:
    """Distinct real roots in (lo, hi] from a precomputed Sturm chain."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    """All roots satisfy |x| < bound."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coefficients[:-1]), default=Fraction(0))


def isolate_real_roots(
    p: RationalPolynomial,
    lo: Rational | None = None,
    hi: Rational | None = None,
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (l, h], each holding exactly one distinct root of p.

    Defaults cover the whole real line.  Intervals come back sorted.
    """
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    lo = Fraction(-bound if lo is None else lo)
    hi = Fraction(bound if hi is None else hi)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, count_roots(seq, lo, hi))]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = _split_point(p, a, b)
        stack.append((a, mid, count_roots(seq, a, mid)))
        stack.append((mid, b, count_roots(seq, mid, b)))
    return sorted(out)


def _split_point(p: RationalPolynomial, a: Fraction, b: Fraction) -> Fraction:
    # Sturm counts on (a, b] need p(a) != 0, so never split on a root.
    for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)):
        mid = a + (b - a) * num / den
        if p(mid) != 0:
            return mid
    raise ValueError("could not find a root-free split point")


def refine_root(
    p: RationalPolynomial, lo: Fraction, hi: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    """Bisect a sign-changing bracket (lo, hi] of a simple root down to ``width``."""
    s_hi = sign_at(p, hi)
    if s_hi == 0:
        return hi, hi
    s_lo = sign_at(p, lo)
    if s_lo == s_hi:
        raise ValueError("bracket does not straddle a simple root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def count_odd_positive_roots(p: RationalPolynomial) -> tuple[int, bool]:
    """Number of sign changes of p on (0, inf).

    Returns ``(count, tangential)`` where count is the number of distinct
    positive roots with odd multiplicity and ``tangential`` flags any positive
    root of even multiplicity.
    """
    if p.degree < 1:
        return 0, False
    seq = sturm_sequence(p)
    if seq[-1].degree < 1:
        return count_roots(seq, 0, _INF), False
    count = 0
    tangential = False
    for factor, mult in square_free_decomposition(p):
        k = count_roots(sturm_sequence(factor), 0, _INF)
        if mult % 2:
            count += k
        elif k:
            tangential = True
    return count, tangential
