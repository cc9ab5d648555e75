"""Closed-form eigenfunctions from truncated series.

    f(q) = q^(l+1) P(q) exp(a q/2 - q^2/2),   P(q) = sum_{j<=n} c_j q^j.

Writing f = R e^phi with R = q^(l+1) P and phi = a q/2 - q^2/2, the radial
operator acts as

    -f'' + (V - W) f = e^phi [-R'' - 2 phi' R' - (phi'' + phi'^2) R + (V - W) R],

and the bracket is a polynomial T(q) because R carries the factor q^(l+1).
The residual is therefore checked through exact rational algebra on T.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np
from scipy import integrate

from rotosc.errors import NumericalError
from rotosc.export import write_csv
from rotosc.polynomial import RationalPolynomial
from rotosc.truncation import ExactSolution, count_nodes_of

STANDARD_GRID = tuple(k / 10 for k in range(1, 81))
RESIDUAL_TOL = 1e-10
QUAD_RTOL = 1e-10


@dataclass(frozen=True)
class WaveForm:
    """Exact-arithmetic view of f for given l, a, W and coefficients of P.

    ``a``, ``W`` and ``coeffs`` are held as :class:`Fraction`; float inputs are
    converted exactly.
    """

    l: int
    a: Fraction
    W: Fraction
    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_solution(cls, sol: ExactSolution) -> WaveForm:
        if sol.coeffs_exact:
            a = sol.a_exact
            W = 2 * sol.n + 2 * sol.l + 3 - a * a / 4
            return cls(l=sol.l, a=a, W=W, coeffs=tuple(sol.coeffs_exact))
        return cls.from_floats(sol.l, sol.a_root, sol.W, sol.coeffs)

    @classmethod
    def from_floats(cls, l: int, a: float, W: float, coeffs: Sequence[float]) -> WaveForm:
        return cls(
            l=l, a=Fraction(a), W=Fraction(W), coeffs=tuple(Fraction(c) for c in coeffs)
        )

    def with_energy(self, W: float | Fraction) -> WaveForm:
        return replace(self, W=Fraction(W))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @cached_property
    def P(self) -> RationalPolynomial:
        return RationalPolynomial(self.coeffs)

    @cached_property
    def R(self) -> RationalPolynomial:
        return self.P.shift_power(self.l + 1)

    @cached_property
    def T(self) -> RationalPolynomial:
        """Polynomial factor of the residual, e^-phi (-f'' + (V - W) f)."""
        l, a, W = self.l, self.a, self.W
        R = self.R
        dR = R.derivative()
        d2R = dR.derivative()
        dphi = RationalPolynomial([a / 2, -1])
        out = -d2R - (dphi * dR) * 2 - (dphi * dphi - 1) * R
        # (V - W) R with V = l(l+1)/q^2 - a q + q^2; R/q^2 is a polynomial for l >= 1
        if l:
            centrifugal = RationalPolynomial(R.coefficients[2:]).scale(l * (l + 1))
            out = out + centrifugal
        out = out + RationalPolynomial([-W, -a, 1]) * R
        return out

    def _exponent(self, q: float) -> float:
        return float(self.a) * q / 2.0 - q * q / 2.0


def evaluate(w: WaveForm, q: float) -> float:
    """f(q); P is evaluated exactly at the rational value of ``q``."""
    if q < 0:
        raise ValueError(f"q must be non-negative, got {q}")
    if q == 0:
        return 0.0
    return float(w.R(Fraction(q))) * math.exp(w._exponent(q))


def evaluate_many(w: WaveForm, qs: Iterable[float]) -> np.ndarray:
    return np.array([evaluate(w, float(q)) for q in qs])


def residual(w: WaveForm, q: float) -> float:
    """[-f'' + (l(l+1)/q^2 - a q + q^2) f - W f](q) without numerical derivatives."""
    if not q > 0:
        raise ValueError(f"q must be positive, got {q}")
    return float(w.T(Fraction(q))) * math.exp(w._exponent(q))


def residual_ok(w: WaveForm, q: float, tol: float = RESIDUAL_TOL) -> bool:
    scale = max(1.0, abs(evaluate(w, q)) * abs(float(w.W)))
    return abs(residual(w, q)) <= tol * scale


def max_relative_residual(w: WaveForm, grid: Sequence[float] = STANDARD_GRID) -> float:
    """Worst |residual| / max(1, |f| |W|) over the grid."""
    worst = 0.0
    Wf = abs(float(w.W))
    for q in grid:
        worst = max(worst, abs(residual(w, q)) / max(1.0, abs(evaluate(w, q)) * Wf))
    return worst


def count_nodes(w: WaveForm) -> int:
    """Zeros of f in (0, inf) where it changes sign (Sturm count on P)."""
    nodes, tangential = count_nodes_of(w.coeffs, float(w.a))
    if tangential:
        warnings.warn("tangential node: P has a positive root of even multiplicity",
                      RuntimeWarning)
    return nodes


def with_node_count(sol: ExactSolution) -> ExactSolution:
    return replace(sol, node_count=count_nodes(WaveForm.from_solution(sol)))


def quadrature_cutoff(w: WaveForm) -> float:
    a, W = float(w.a), float(w.W)
    return max(a / 2.0, 0.0) + 10.0 + math.sqrt(max(2.0 * W + 20.0, 0.0))


def expectation_q(w: WaveForm) -> float:
    """<q> = int q f^2 / int f^2 over (0, inf) by adaptive Gauss-Kronrod."""
    q_max = quadrature_cutoff(w)
    # fold the peak of the weight into a constant so f^2 stays in range
    a = float(w.a)
    q_peak = min(max(a / 2.0, 0.0), q_max)
    shift = w._exponent(q_peak)

    def f2(q: float) -> float:
        if q <= 0.0:
            return 0.0
        r = float(w.R(Fraction(q)))
        return r * r * math.exp(2.0 * (w._exponent(q) - shift))

    points = [q_peak] if 0.0 < q_peak < q_max else None
    norm, err_n, info_n = _quad(lambda q: f2(q), q_max, points)
    first, err_m, info_m = _quad(lambda q: q * f2(q), q_max, points)
    if norm <= 0.0:
        raise NumericalError("wavefunction norm vanished in quadrature")
    value = first / norm
    rel_err = err_m / abs(first) + err_n / norm
    if rel_err > QUAD_RTOL:
        raise NumericalError(
            f"<q> quadrature did not converge: estimated relative error {rel_err:.2e} "
            f"(cutoff {q_max:.3f}, evaluations {info_n['neval']}+{info_m['neval']})"
        )
    return value


def _quad(func, q_max: float, points):
    value, err, info = integrate.quad(
        func, 0.0, q_max, epsabs=0.0, epsrel=1e-13, limit=400, points=points,
        full_output=True,
    )[:3]
    return value, err, info


PROFILE_HEADER = ("q", "f", "residual")


def write_profile_csv(
    w: WaveForm, target: str | Path | IO[str], grid: Sequence[float] = STANDARD_GRID
) -> None:
    write_csv(target, PROFILE_HEADER, ((q, evaluate(w, q), residual(w, q)) for q in grid))
