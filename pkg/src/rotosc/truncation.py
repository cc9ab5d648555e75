"""Exact eigenpairs from truncating the Frobenius series.

The series terminates at degree n when W = 2n+2l+3 - a^2/4 and c_{n+1}(a) = 0.
c_{n+1} has the parity of n+1, so it factors as a^p g(a^2); the positive roots
of g are isolated with a Sturm chain over the rationals and then bisected in
exact arithmetic, which certifies both the count and the realness of all n+1
couplings.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import IO, Iterable

from rotosc.errors import DegenerateTruncation, RealnessViolation
from rotosc.export import write_csv
from rotosc.model import lambda_from_w
from rotosc.polynomial import (
    RationalPolynomial,
    count_odd_positive_roots,
    count_roots,
    isolate_real_roots,
    refine_root,
    sturm_sequence,
)
from rotosc.recurrence import build_table, coeff_A, coeff_B

# Roots are carried as dyadic rationals.  P(q) written in monomials cancels by
# up to exp(a^2/2) inside the oscillation region, so the precision grows with a.
BASE_ROOT_BITS = 96
RESIDUAL_TOL = 1e-10
# c_n may be legitimately tiny next to its term scale; it only counts as zero
# when it is lost in the uncertainty left by the rational root.
DEGENERACY_TOL = 2.0 ** -72


def cancellation_bits(a: float) -> int:
    """log2 of the worst monomial cancellation in P(q) for coupling a."""
    return math.ceil(a * a / (2.0 * math.log(2.0)))


def root_bits(a: float) -> int:
    return BASE_ROOT_BITS + cancellation_bits(a)


@dataclass(frozen=True)
class ExactSolution:
    """One truncation eigenpair (n, l, i) with 1-based ascending root index i."""

    n: int
    l: int
    i: int
    a_root: float
    W: float
    coeffs: tuple[float, ...]
    node_count: int | None = None
    a_exact: Fraction = field(default=Fraction(0), repr=False, compare=False)
    coeffs_exact: tuple[Fraction, ...] = field(default=(), repr=False, compare=False)

    @property
    def lam(self) -> float:
        return lambda_from_w(self.W, self.a_root)

    @property
    def curve_index(self) -> int:
        """Index nu of the eigencurve W_nu(a) that passes through this point."""
        return self.i - 1

    def polynomial(self) -> RationalPolynomial:
        """P(q) with exact coefficients (evaluated at the rational root)."""
        return RationalPolynomial(self.coeffs_exact or [Fraction(c) for c in self.coeffs])


def truncation_energy(n: int, l: int, a: float) -> float:
    return 2 * n + 2 * l + 3 - a * a / 4.0


def _sqrt_fraction(s: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.isqrt(s.numerator * scale * scale // s.denominator), scale)


@lru_cache(maxsize=256)
def exact_roots(n: int, l: int) -> tuple[Fraction, ...]:
    """Rational approximations of the n+1 sorted roots.

    Each root is accurate to 2**-root_bits(a_max) with a_max the largest root.
    """
    table = build_table(n, l)
    p = table.truncation_poly
    parity = p.parity()
    if parity != (n + 1) % 2:
        raise RealnessViolation(f"c_{n + 1} has unexpected parity for n={n}, l={l}")
    g = p.in_square()
    if g(0) == 0:
        raise RealnessViolation(f"c_{n + 1} has a repeated root at a=0 (n={n}, l={l})")
    seq = sturm_sequence(g)
    if seq[-1].degree > 0:
        raise RealnessViolation(f"c_{n + 1} has repeated roots (n={n}, l={l})")
    found = count_roots(seq, 0, math.inf)
    if found != g.degree:
        raise RealnessViolation(
            f"c_{n + 1} has {2 * found + parity} real roots, expected {n + 1} (n={n}, l={l})"
        )
    brackets = isolate_real_roots(g, 0, None)
    s_max = float(brackets[-1][1]) if brackets else 0.0
    bits = root_bits(math.sqrt(s_max))
    width = Fraction(1, 1 << (bits + 8))
    positive = []
    for lo, hi in brackets:
        lo, hi = refine_root(g, lo, hi, width)
        positive.append(_sqrt_fraction((lo + hi) / 2, bits))
    roots = [-a for a in reversed(positive)]
    if parity == 1:
        roots.append(Fraction(0))
    roots.extend(positive)
    return tuple(roots)


def truncation_roots(n: int, l: int) -> list[float]:
    """The n+1 real couplings a with c_{n+1}(a) = 0, ascending."""
    return [float(a) for a in exact_roots(n, l)]


def root_certificate(n: int, l: int) -> dict:
    """Sturm data on the full c_{n+1}(a): distinct real roots and square-freeness."""
    p = build_table(n, l).truncation_poly
    seq = sturm_sequence(p)
    return {
        "n": n,
        "l": l,
        "degree": p.degree,
        "distinct_real_roots": count_roots(seq, -math.inf, math.inf),
        "square_free": seq[-1].degree == 0,
        "zero_is_root": p(0) == 0,
    }


def _round_relative(c: Fraction, bits: int) -> Fraction:
    if c == 0:
        return c
    e = math.frexp(float(c))[1]
    scale = Fraction(2) ** (bits - e)
    return Fraction(round(c * scale)) / scale


def count_nodes_of(coeffs, a: float = 0.0) -> tuple[int, bool]:
    """Sign changes of P on (0, inf), by a Sturm chain on the rationals.

    Float coefficients are used as the exact rationals they represent.  Exact
    root-derived coefficients carry far more bits than the chain can afford,
    so they are rounded to a relative precision above the cancellation level
    for coupling ``a``, then to twice as many extra bits; the count is
    accepted once two successive precisions agree.
    """
    if not any(isinstance(c, Fraction) for c in coeffs):
        return count_odd_positive_roots(RationalPolynomial(Fraction(float(c)) for c in coeffs))
    bits = cancellation_bits(a) + 48
    previous = None
    for _ in range(4):
        result = count_odd_positive_roots(
            RationalPolynomial(_round_relative(Fraction(c), bits) for c in coeffs)
        )
        if result == previous:
            return result
        previous = result
        bits += 48
    warnings.warn(f"node count did not stabilise for a={a}", RuntimeWarning)
    return result


def _solution(n: int, l: int, i: int, a_q: Fraction) -> ExactSolution:
    table = build_table(n, l)
    exact = tuple(p(a_q) for p in table.polys[: n + 1])
    coeffs = tuple(float(c) for c in exact)
    a = float(a_q)
    if abs(coeffs[n]) <= DEGENERACY_TOL * 2.0 ** -cancellation_bits(a) * table.polys[n].magnitude(a):
        raise DegenerateTruncation(f"c_{n} vanishes at root {i} (n={n}, l={l})")
    W = truncation_energy(n, l, a)
    p_next = table.truncation_poly
    tail1 = float(p_next(a_q))
    # c_{n+2} from the untruncated recurrence with the numeric B_n(W, a)
    A_n = float(coeff_A(n, l)[1]) * a
    B_n = coeff_B(n, l, W, a)
    tail2 = A_n * tail1 + B_n * coeffs[n]
    scale1 = p_next.magnitude(a)
    scale2 = abs(A_n) * scale1 + abs(coeffs[n]) * (abs(n + 2 * l + 3 - W) + a * a)
    if abs(tail1) > RESIDUAL_TOL * scale1 or abs(tail2) > RESIDUAL_TOL * max(scale2, 1.0):
        raise RealnessViolation(
            f"series does not terminate at root {i} (n={n}, l={l}): "
            f"c_n+1={tail1:.3e}, c_n+2={tail2:.3e}"
        )
    nodes, tangential = count_nodes_of(exact, a)
    if tangential:
        warnings.warn(f"tangential node in P for (n={n}, l={l}, i={i})", RuntimeWarning)
    return ExactSolution(
        n=n, l=l, i=i, a_root=a, W=W, coeffs=coeffs, node_count=nodes,
        a_exact=a_q, coeffs_exact=exact,
    )


def exact_solutions(n: int, l: int) -> list[ExactSolution]:
    """All n+1 truncation eigenpairs for order n, sorted by coupling."""
    return [_solution(n, l, i, a_q) for i, a_q in enumerate(exact_roots(n, l), start=1)]


CSV_HEADER = ("n", "l", "i", "a", "W", "lambda", "node_count", "coefficients")


def solution_rows(solutions: Iterable[ExactSolution]):
    for s in solutions:
        yield (
            s.n, s.l, s.i, s.a_root, s.W, s.lam,
            "" if s.node_count is None else s.node_count,
            ";".join(format(c, ".17g") for c in s.coeffs),
        )


def write_solutions_csv(solutions: Iterable[ExactSolution], target: str | Path | IO[str]) -> None:
    write_csv(target, CSV_HEADER, solution_rows(solutions))
