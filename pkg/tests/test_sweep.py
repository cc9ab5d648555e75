import math

import numpy as np
import pytest

from rotosc.sweep import (
    build_dataset,
    cubic_interpolate,
    hellmann_feynman_samples,
    lambda_report,
    monotonicity_violations,
    on_truncation_set,
    truncation_points,
    verify_intersections,
    write_dataset,
    write_plot_script,
)
from rotosc.truncation import truncation_energy
from rotosc.oracle import fd_spectrum


@pytest.fixture(scope="module")
def small():
    return build_dataset(0, n_max=4, nu_max=6, steps=41)


@pytest.fixture(scope="module")
def full_points():
    return truncation_points(0, 30)


def test_scatter_for_two_orders():
    ds = build_dataset(0, n_max=2, nu_max=3, steps=9)
    got = sorted((round(p.a, 12), round(p.W, 12)) for p in ds.points)
    r2, r6 = round(math.sqrt(2), 12), round(math.sqrt(6), 12)
    assert got == sorted([(-r2, 4.5), (r2, 4.5), (-r6, 5.5), (0.0, 7.0), (r6, 5.5)])


def test_full_scatter(full_points):
    assert len(full_points) == sum(n + 1 for n in range(1, 31)) == 495
    for p in full_points:
        if p.a == 0:
            assert p.W == 2 * p.n + 3
        lo, hi = truncation_energy(1, 0, p.a), truncation_energy(30, 0, p.a)
        assert lo - 1e-12 <= p.W <= hi + 1e-12
    pairs = {(p.n, round(p.a, 9), round(p.W, 9)) for p in full_points}
    assert pairs == {(n, round(-a, 9) + 0.0, W) for n, a, W in pairs}


def test_intersections(small):
    report = verify_intersections(small, 1e-5)
    assert report.passed, report.summary()
    first = next(g for g in report.direct if (g.n, g.i) == (1, 1))
    assert first.nu == 0 and first.curve_W == pytest.approx(4.5, abs=1e-5)
    mid = next(g for g in report.direct if (g.n, g.i) == (2, 2))
    assert mid.curve_W == pytest.approx(7.0, abs=1e-5)
    assert verify_intersections(small, 1e-5, mode="interpolate").passed


def test_intersection_needs_enough_curves():
    ds = build_dataset(0, n_max=4, nu_max=2, steps=9)
    with pytest.raises(ValueError):
        verify_intersections(ds)


def test_lambda_report(small):
    rep = lambda_report(small)
    assert rep.passed
    assert rep.point_max_deviation <= 1e-10
    assert rep.samples_off_set > 0 and rep.near_integer == []


def test_lambda_off_the_set_is_not_integer():
    W0 = fd_spectrum(0, 1.0, count=1)[0]
    lam = W0 / 2 + 1 / 8 - 1 / 2
    assert abs(lam - round(lam)) > 1e-3
    assert not on_truncation_set(0, 1.0, lam, 1e-6, 1e-6)
    assert on_truncation_set(0, math.sqrt(2), 2.0, 1e-6, 1e-6)


def test_monotone_curves(small):
    assert monotonicity_violations(small) == []


def test_slope_samples_reproducible():
    a = hellmann_feynman_samples(count=4, seed=3)
    b = hellmann_feynman_samples(count=4, seed=3)
    assert a == b
    assert all(s.gap <= 1e-5 and s.slope < 0 for s in a)


def test_cubic_interpolation_exact_on_cubics():
    xs = np.linspace(-2, 2, 9)
    ys = xs**3 - 2 * xs
    assert cubic_interpolate(xs, ys, 0.37) == pytest.approx(0.37**3 - 0.74, abs=1e-13)


def test_bad_arguments():
    with pytest.raises(ValueError):
        build_dataset(0, n_max=0)
    with pytest.raises(ValueError):
        build_dataset(0, n_max=2, a_min=1.0, a_max=-1.0)


def test_written_files_are_deterministic(tmp_path, small):
    first = write_dataset(small, tmp_path / "one")
    again = build_dataset(0, n_max=4, nu_max=6, steps=41, jobs=2)
    second = write_dataset(again, tmp_path / "two")
    assert [f.name for f in first] == [f.name for f in second]
    for f, g in zip(first, second):
        assert f.read_bytes() == g.read_bytes()
    header = (tmp_path / "one" / "points.csv").read_text().splitlines()[0]
    assert header == "n,i,a,W,lambda,node_count"
    script = write_plot_script(tmp_path / "one")
    compile(script.read_text(), str(script), "exec")
