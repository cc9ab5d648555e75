"""Radial eigenproblem of the rotating oscillator and its parameter conversions.

The working equation is

    -f''(q) + [l(l+1)/q^2 - a q + q^2] f(q) = W f(q),   q > 0,

obtained from the dimensionless radial equation in r~ = r / r_e by the
substitution q = r~ / sqrt(2 alpha).  The three energy conventions in use are

    W = 2 alpha E~ - 1/(2 alpha),   a = sqrt(2 / alpha),
    lambda = W/2 + a^2/8 - 1/2      (so that E~ = (lambda + 1/2) / alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rotosc.errors import DomainError


@dataclass(frozen=True)
class ModelParams:
    """Rotational quantum number ``l`` and coupling ``a`` (any real value)."""

    l: int
    a: float

    def __post_init__(self) -> None:
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a non-negative integer, got {self.l!r}")


@dataclass(frozen=True)
class ConversionContext:
    """Dimensionless interaction parameter alpha, optionally with its origin.

    ``m``, ``k``, ``r_e`` and ``hbar`` are only recorded when the context was
    built with :meth:`from_dimensional`.
    """

    alpha: float
    m: float | None = None
    k: float | None = None
    r_e: float | None = None
    hbar: float | None = None

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")

    @classmethod
    def from_dimensional(
        cls, m: float, k: float, r_e: float, hbar: float = 1.0
    ) -> ConversionContext:
        """Build from reduced mass, force constant and equilibrium distance."""
        for name, value in (("m", m), ("k", k), ("r_e", r_e), ("hbar", hbar)):
            if not value > 0:
                raise DomainError(f"{name} must be positive, got {value!r}")
        alpha = hbar / (2.0 * math.sqrt(m * k) * r_e**2)
        return cls(alpha=alpha, m=m, k=k, r_e=r_e, hbar=hbar)

    @classmethod
    def from_coupling(cls, a: float) -> ConversionContext:
        return cls(alpha=alpha_from_a(a))

    @property
    def a(self) -> float:
        return a_from_alpha(self.alpha)

    def energy_scale(self) -> float:
        """Factor E~ / E = 2 m r_e^2 / hbar^2 (needs dimensional inputs)."""
        if None in (self.m, self.r_e, self.hbar):
            raise DomainError("energy scale needs m, r_e and hbar")
        return 2.0 * self.m * self.r_e**2 / self.hbar**2


def potential_value(params: ModelParams, q: float) -> float:
    """Effective potential l(l+1)/q^2 - a q + q^2 for q > 0."""
    if not q > 0:
        raise DomainError(f"potential is singular at q={q!r}; need q > 0")
    l = params.l
    return l * (l + 1) / q**2 - params.a * q + q * q


def a_from_alpha(alpha: float) -> float:
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    return math.sqrt(2.0 / alpha)


def alpha_from_a(a: float) -> float:
    """Inverse of :func:`a_from_alpha`; only defined for the physical a > 0."""
    if not a > 0:
        raise DomainError(f"a must be positive to define alpha, got {a!r}")
    return 2.0 / (a * a)


def w_from_etilde(ctx: ConversionContext, etilde: float) -> float:
    return 2.0 * ctx.alpha * etilde - 1.0 / (2.0 * ctx.alpha)


def etilde_from_w(ctx: ConversionContext, w: float) -> float:
    return (w + 1.0 / (2.0 * ctx.alpha)) / (2.0 * ctx.alpha)


def lambda_from_w(w: float, a: float) -> float:
    """Energy in the lambda convention of the older literature."""
    return w / 2.0 + a * a / 8.0 - 0.5


def w_from_lambda(lam: float, a: float) -> float:
    return 2.0 * lam + 1.0 - a * a / 4.0


def etilde_from_dimensional(ctx: ConversionContext, energy: float) -> float:
    return ctx.energy_scale() * energy


def dimensional_from_etilde(ctx: ConversionContext, etilde: float) -> float:
    return etilde / ctx.energy_scale()
