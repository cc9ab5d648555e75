"""Three-term recurrence for the Frobenius coefficients.

With f(q) = q^(l+1) P(q) exp(a q/2 - q^2/2) and P(q) = sum_j c_j q^j,

    c_{j+2} = A_j(a) c_{j+1} + B_j(W, a) c_j,   c_{-1} = 0, c_0 = 1,
    A_j(a)    = -a (j+l+2) / ((j+2)(j+2l+3)),
    B_j(W, a) = [4(2j+2l+3-W) - a^2] / (4 (j+2)(j+2l+3)).

At the truncation energy W = 2n+2l+3 - a^2/4 the B_j lose their a dependence
and every c_j becomes a polynomial in a with rational coefficients, which is
what :func:`build_table` constructs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from rotosc.polynomial import Rational, RationalPolynomial


def _check(j: int, l: int) -> None:
    if j < -1:
        raise ValueError(f"recurrence index must be >= -1, got {j}")
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")


def coeff_A(j: int, l: int) -> RationalPolynomial:
    """A_j(a) as the degree-one polynomial ``[0, -(j+l+2)/((j+2)(j+2l+3))]``."""
    _check(j, l)
    return RationalPolynomial([0, Fraction(-(j + l + 2), (j + 2) * (j + 2 * l + 3))])


def coeff_B(j: int, l: int, W: float, a: float) -> float:
    _check(j, l)
    return (4.0 * (2 * j + 2 * l + 3 - W) - a * a) / (4.0 * (j + 2) * (j + 2 * l + 3))


def coeff_B_truncated(j: int, n: int, l: int) -> Fraction:
    """B_j at the truncation energy of order n; independent of a."""
    _check(j, l)
    return Fraction(2 * (j - n), (j + 2) * (j + 2 * l + 3))


@dataclass(frozen=True)
class RecurrenceTable:
    """Exact c_0(a), ..., c_{n+1}(a) under the order-n truncation energy."""

    n: int
    l: int
    polys: tuple[RationalPolynomial, ...]

    @property
    def truncation_poly(self) -> RationalPolynomial:
        """c_{n+1}(a), whose zeros are the admissible couplings."""
        return self.polys[self.n + 1]

    def evaluate(self, a: Rational | float) -> list:
        return [p(a) for p in self.polys]

    def to_json(self, indent: int | None = None) -> str:
        payload = {
            "n": self.n,
            "l": self.l,
            "c": [p.to_json() for p in self.polys],
        }
        return json.dumps(payload, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> RecurrenceTable:
        payload = json.loads(text)
        polys = tuple(RationalPolynomial.from_json(c) for c in payload["c"])
        return cls(n=payload["n"], l=payload["l"], polys=polys)


@lru_cache(maxsize=256)
def build_table(n: int, l: int) -> RecurrenceTable:
    if n < 0 or l < 0:
        raise ValueError(f"need n >= 0 and l >= 0, got n={n}, l={l}")
    polys = [RationalPolynomial([1])]
    prev = RationalPolynomial()
    for j in range(-1, n):
        nxt = coeff_A(j, l) * polys[-1]
        if j >= 0:
            nxt = nxt + prev * coeff_B_truncated(j, n, l)
        prev = polys[-1]
        polys.append(nxt)
    return RecurrenceTable(n=n, l=l, polys=tuple(polys))


def series_coefficients(l: int, W: float, a: float, count: int) -> list[float]:
    """First ``count`` Frobenius coefficients for arbitrary (W, a), in floats."""
    c = [1.0]
    prev = 0.0
    for j in range(-1, count - 2):
        A = float(coeff_A(j, l)[1]) * a
        B = coeff_B(j, l, W, a) if j >= 0 else 0.0
        nxt = A * c[-1] + B * prev
        prev = c[-1]
        c.append(nxt)
    return c[:count]
