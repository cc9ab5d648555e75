"""Eigencurve dataset: truncation points on top of Ritz curves W_nu(a) and W_nu(-a)."""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from rotosc.errors import ConditioningError
from rotosc.export import write_csv
from rotosc.model import lambda_from_w
from rotosc.ritz import DEFAULT_SIZE, reduced_pencil, ritz_expectation_q, ritz_spectrum
from rotosc.truncation import exact_roots, exact_solutions, truncation_energy

# Figure window: the n = 30 parabola peaks near W = 63 at a = 0.
FIGURE_DEFAULTS = dict(l=0, n_max=30, nu_max=12, a_min=-4.0, a_max=4.0, steps=161,
                       basis_size=DEFAULT_SIZE)


@dataclass(frozen=True)
class PointSummary:
    n: int
    i: int
    a: float
    W: float
    lam: float
    node_count: int | None


@dataclass
class SpectrumDataset:
    l: int
    n_max: int
    nu_max: int
    basis_size: int
    a_grid: np.ndarray
    curves: dict[int, np.ndarray]
    mirrored: dict[int, np.ndarray]
    points: list[PointSummary]
    parabolas: dict[int, np.ndarray] = field(default_factory=dict)


def _points_for(args: tuple[int, int]) -> list[PointSummary]:
    n, l = args
    return [PointSummary(s.n, s.i, s.a_root, s.W, s.lam, s.node_count)
            for s in exact_solutions(n, l)]


def truncation_points(l: int, n_max: int, jobs: int = 1) -> list[PointSummary]:
    """Scatter of (a, W) for n = 1..n_max, ordered by (n, i)."""
    tasks = [(n, l) for n in range(1, n_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_points_for, tasks))
    else:
        chunks = [_points_for(t) for t in tasks]
    return [p for chunk in chunks for p in chunk]


def build_dataset(
    l: int = 0,
    n_max: int = 30,
    nu_max: int = 12,
    a_min: float = -4.0,
    a_max: float = 4.0,
    steps: int = 161,
    basis_size: int = DEFAULT_SIZE,
    jobs: int = 1,
) -> SpectrumDataset:
    if n_max < 1 or steps < 2 or not a_min < a_max:
        raise ValueError(
            f"need n_max >= 1, steps >= 2 and a_min < a_max "
            f"(got n_max={n_max}, steps={steps}, a_min={a_min}, a_max={a_max})"
        )
    a_grid = np.linspace(a_min, a_max, steps)
    pencil = reduced_pencil(l, basis_size)
    if pencil.effective_size <= nu_max:
        raise ConditioningError(
            f"basis of {basis_size} keeps {pencil.effective_size} functions, "
            f"fewer than nu_max + 1 = {nu_max + 1}"
        )
    table = np.empty((nu_max + 1, steps))
    mirror = np.empty((nu_max + 1, steps))
    for k, a in enumerate(a_grid):
        try:
            table[:, k] = pencil.eigenvalues(a)[: nu_max + 1]
            mirror[:, k] = pencil.eigenvalues(-a)[: nu_max + 1]
        except np.linalg.LinAlgError as exc:
            raise ConditioningError(f"Ritz solve failed at a={a!r}: {exc}") from exc
    parabolas = {n: np.array([truncation_energy(n, l, a) for a in a_grid])
                 for n in sorted({1, n_max})}
    return SpectrumDataset(
        l=l, n_max=n_max, nu_max=nu_max, basis_size=basis_size, a_grid=a_grid,
        curves={nu: table[nu] for nu in range(nu_max + 1)},
        mirrored={nu: mirror[nu] for nu in range(nu_max + 1)},
        points=truncation_points(l, n_max, jobs),
        parabolas=parabolas,
    )


def figure_dataset(jobs: int = 1, **overrides) -> SpectrumDataset:
    return build_dataset(**{**FIGURE_DEFAULTS, **overrides}, jobs=jobs)


def cubic_interpolate(xs: np.ndarray, ys: np.ndarray, x: float) -> float:
    """Lagrange cubic through the four grid samples nearest to x."""
    k = bisect_left(xs.tolist(), x)
    lo = min(max(k - 2, 0), len(xs) - 4)
    idx = range(lo, lo + 4)
    total = 0.0
    for j in idx:
        term = ys[j]
        for m in idx:
            if m != j:
                term *= (x - xs[m]) / (xs[j] - xs[m])
        total += term
    return float(total)


@dataclass(frozen=True)
class Gap:
    n: int
    i: int
    a: float
    W: float
    nu: int
    curve_W: float

    @property
    def gap(self) -> float:
        return abs(self.curve_W - self.W)


@dataclass
class IntersectionReport:
    tol: float
    direct: list[Gap]
    mirrored: list[Gap]

    @property
    def failures(self) -> list[Gap]:
        return [g for g in self.direct + self.mirrored if not g.gap <= self.tol]

    @property
    def passed(self) -> bool:
        return bool(self.direct) and not self.failures

    def worst(self, mirrored: bool = False) -> Gap | None:
        gaps = self.mirrored if mirrored else self.direct
        return max(gaps, key=lambda g: g.gap, default=None)

    def summary(self) -> dict:
        def brief(g):
            return None if g is None else dict(n=g.n, i=g.i, a=g.a, nu=g.nu, gap=g.gap)
        return dict(
            passed=self.passed, tol=self.tol, points=len(self.direct),
            worst_direct=brief(self.worst()), worst_mirrored=brief(self.worst(True)),
            failures=[brief(g) for g in self.failures],
        )


def verify_intersections(
    ds: SpectrumDataset, tol: float = 1e-5, mode: str = "exact"
) -> IntersectionReport:
    """Check every point (a*, W*) against W_{i-1}(a*) and W_{n+1-i}(-a*).

    ``mode="exact"`` re-solves the Ritz problem at a*; ``"interpolate"``
    uses the cubic through the grid and falls back to an exact solve when
    the point lies off the grid or the interpolated gap exceeds tol / 10.
    """
    if mode not in ("exact", "interpolate"):
        raise ValueError(f"unknown mode {mode!r}")
    needed = max((p.i - 1 for p in ds.points), default=0)
    if ds.nu_max < needed:
        raise ValueError(f"dataset has curves up to nu={ds.nu_max}; points need nu={needed}")
    grid = ds.a_grid
    inside = lambda a: grid[0] <= a <= grid[-1]  # noqa: E731

    def curve_value(series: dict, nu: int, a: float, W: float, sign: float) -> float:
        if mode == "interpolate" and inside(a):
            v = cubic_interpolate(grid, series[nu], a)
            if abs(v - W) <= tol / 10:
                return v
        return ritz_spectrum(ds.l, sign * a, ds.basis_size)[nu]

    direct, mirrored = [], []
    for p in ds.points:
        nu = p.i - 1
        direct.append(Gap(p.n, p.i, p.a, p.W, nu, curve_value(ds.curves, nu, p.a, p.W, 1.0)))
        mu = p.n + 1 - p.i
        mirrored.append(Gap(p.n, p.i, p.a, p.W, mu,
                            curve_value(ds.mirrored, mu, p.a, p.W, -1.0)))
    return IntersectionReport(tol, direct, mirrored)


def on_truncation_set(l: int, a: float, lam: float, tol_int: float, tol_a: float) -> bool:
    """True if (a, lam) sits at a root of c_{n+1} with n = round(lam) - l - 1."""
    k = round(lam)
    if abs(lam - k) >= tol_int:
        return False
    n = k - l - 1
    if n < 0:
        return False
    return any(abs(a - float(r)) <= tol_a for r in exact_roots(n, l))


@dataclass
class LambdaReport:
    point_max_deviation: float
    point_worst: tuple | None
    samples_total: int
    samples_off_set: int
    near_integer: list[tuple[int, float, float]]
    point_tol: float
    int_tol: float

    @property
    def near_integer_fraction(self) -> float:
        return len(self.near_integer) / self.samples_off_set if self.samples_off_set else 0.0

    @property
    def passed(self) -> bool:
        return self.point_max_deviation <= self.point_tol and not self.near_integer

    def summary(self) -> dict:
        return dict(
            passed=self.passed, point_max_deviation=self.point_max_deviation,
            point_worst=self.point_worst, samples_total=self.samples_total,
            samples_off_set=self.samples_off_set,
            near_integer_fraction=self.near_integer_fraction,
            near_integer=self.near_integer[:20],
        )


def lambda_report(
    ds: SpectrumDataset, point_tol: float = 1e-10, int_tol: float = 1e-6, a_tol: float = 1e-6
) -> LambdaReport:
    """lambda = n+l+1 at every truncation point, generically non-integer elsewhere."""
    worst, worst_at = 0.0, None
    for p in ds.points:
        dev = abs(lambda_from_w(p.W, p.a) - (p.n + ds.l + 1))
        if dev > worst or worst_at is None:
            worst, worst_at = dev, (p.n, p.i, p.a)
    total = off = 0
    hits = []
    for nu, series in ds.curves.items():
        for a, W in zip(ds.a_grid, series):
            total += 1
            lam = lambda_from_w(float(W), float(a))
            if on_truncation_set(ds.l, float(a), lam, int_tol, a_tol):
                continue
            off += 1
            if abs(lam - round(lam)) < int_tol:
                hits.append((nu, float(a), lam))
    return LambdaReport(worst, worst_at, total, off, hits, point_tol, int_tol)


@dataclass(frozen=True)
class SlopeSample:
    nu: int
    a: float
    slope: float
    minus_q: float

    @property
    def gap(self) -> float:
        return abs(self.slope - self.minus_q)


def hellmann_feynman_samples(
    l: int = 0,
    count: int = 20,
    nu_max: int = 3,
    a_range: tuple[float, float] = (-3.0, 3.0),
    h: float = 1e-4,
    seed: int = 20240601,
    basis_size: int = DEFAULT_SIZE,
) -> list[SlopeSample]:
    """Central-difference slopes of W_nu(a) against -<q> at seeded random points."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nu = rng.randint(0, nu_max)
        a = rng.uniform(*a_range)
        up = ritz_spectrum(l, a + h, basis_size)[nu]
        down = ritz_spectrum(l, a - h, basis_size)[nu]
        out.append(SlopeSample(nu, a, (up - down) / (2 * h),
                               -ritz_expectation_q(l, a, nu, basis_size)))
    return out


def monotonicity_violations(ds: SpectrumDataset) -> list[tuple[int, float]]:
    """Grid points where a curve fails to decrease strictly."""
    bad = []
    for nu, series in ds.curves.items():
        for k in np.nonzero(np.diff(series) >= 0)[0]:
            bad.append((nu, float(ds.a_grid[k])))
    return bad


def write_dataset(ds: SpectrumDataset, outdir: str | Path) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)

    def series_rows(series):
        for nu in sorted(series):
            for a, W in zip(ds.a_grid, series[nu]):
                yield nu, float(a), float(W)

    files = {
        "curves.csv": (("nu", "a", "W"), series_rows(ds.curves)),
        "mirrored.csv": (("nu", "a", "W"), series_rows(ds.mirrored)),
        "points.csv": (
            ("n", "i", "a", "W", "lambda", "node_count"),
            ((p.n, p.i, p.a, p.W, p.lam, "" if p.node_count is None else p.node_count)
             for p in ds.points),
        ),
        "parabolas.csv": (
            ("n", "a", "W"),
            ((n, float(a), float(W)) for n in sorted(ds.parabolas)
             for a, W in zip(ds.a_grid, ds.parabolas[n])),
        ),
    }
    written = []
    for name, (header, rows) in files.items():
        write_csv(out / name, header, rows)
        written.append(out / name)
    return written


PLOT_SCRIPT = '''\
"""Redraw the eigencurve figure from the CSV files in this directory.

Usage: python plot_figure.py [output.png]
"""
import csv
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent


def read(name):
    with open(HERE / name, newline="") as fh:
        return list(csv.DictReader(fh))


def series(rows, key):
    out = defaultdict(lambda: ([], []))
    for r in rows:
        xs, ys = out[int(r[key])]
        xs.append(float(r["a"]))
        ys.append(float(r["W"]))
    return out


fig, ax = plt.subplots(figsize=(6, 6))
for xs, ys in series(read("curves.csv"), "nu").values():
    ax.plot(xs, ys, "b-", lw=1)
for xs, ys in series(read("mirrored.csv"), "nu").values():
    ax.plot(xs, ys, "g--", lw=1)
for xs, ys in series(read("parabolas.csv"), "n").values():
    ax.plot(xs, ys, "r--", lw=1)
pts = read("points.csv")
ax.plot([float(p["a"]) for p in pts], [float(p["W"]) for p in pts], "ro", mfc="none", ms=4)
ax.set_xlabel("a")
ax.set_ylabel("W")
a_vals = [float(r["a"]) for r in read("curves.csv")]
ax.set_xlim(min(a_vals), max(a_vals))
fig.tight_layout()
fig.savefig(sys.argv[1] if len(sys.argv) > 1 else HERE / "figure.png", dpi=150)
'''


def write_plot_script(outdir: str | Path) -> Path:
    path = Path(outdir) / "plot_figure.py"
    path.write_text(PLOT_SCRIPT)
    return path
