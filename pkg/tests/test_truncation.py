import io
import math

import pytest
import sympy

from rotosc.recurrence import build_table
from rotosc.truncation import (
    exact_roots,
    exact_solutions,
    root_certificate,
    truncation_energy,
    truncation_roots,
    write_solutions_csv,
)

S6 = math.sqrt(6)


def test_truncation_energy_examples():
    assert truncation_energy(3, 2, 0.0) == 13
    assert truncation_energy(1, 0, math.sqrt(2)) == pytest.approx(4.5, abs=1e-15)
    assert truncation_energy(2, 0, S6) == pytest.approx(5.5, abs=1e-15)


@pytest.mark.parametrize("n, l, expected", [
    (1, 0, [-math.sqrt(2), math.sqrt(2)]),
    (2, 0, [-S6, 0.0, S6]),
    (1, 2, [-1.0, 1.0]),
])
def test_truncation_roots_examples(n, l, expected):
    assert truncation_roots(n, l) == pytest.approx(expected, abs=1e-14)


def test_exact_solution_coefficients():
    s = exact_solutions(1, 0)[0]
    assert s.coeffs == pytest.approx([1.0, 1 / math.sqrt(2)], abs=1e-15)
    low, mid, _ = exact_solutions(2, 0)
    assert mid.coeffs == pytest.approx([1.0, 0.0, -2 / 3], abs=1e-15)
    assert low.coeffs == pytest.approx([1.0, math.sqrt(1.5), 1 / 3], abs=1e-15)


@pytest.mark.parametrize("n, l", [(5, 0), (8, 1), (12, 3)])
def test_roots_match_sympy(n, l):
    p = build_table(n, l).truncation_poly
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                       for c in reversed(p.coefficients)], sympy.Symbol("a"))
    reference = sorted(float(r.evalf(30)) for r in sympy.real_roots(poly))
    assert truncation_roots(n, l) == pytest.approx(reference, abs=1e-13)


def test_root_invariants_all_orders():
    for l in range(6):
        for n in range(31):
            roots = truncation_roots(n, l)
            assert len(roots) == n + 1
            assert all(x < y for x, y in zip(roots, roots[1:]))
            for i in range(n + 1):
                assert abs(roots[i] + roots[n - i]) <= 1e-10
            if n % 2 == 0:
                assert exact_roots(n, l)[n // 2] == 0


@pytest.mark.parametrize("n", [0, 1, 7, 16, 30])
def test_root_certificate(n):
    cert = root_certificate(n, 0)
    assert cert["degree"] == n + 1
    assert cert["distinct_real_roots"] == n + 1
    assert cert["square_free"]
    assert cert["zero_is_root"] == (n % 2 == 0)


@pytest.mark.parametrize("l", range(4))
def test_points_lie_on_parabola(l):
    for n in range(1, 7):
        for s in exact_solutions(n, l):
            assert s.W == truncation_energy(n, l, s.a_root)
            assert s.lam == pytest.approx(n + l + 1, abs=1e-12)


def test_node_counts_follow_root_index():
    for l in range(3):
        for n in range(9):
            assert [s.node_count for s in exact_solutions(n, l)] == list(range(n + 1))


def test_node_counts_hold_at_high_order():
    # large |a| makes P cancel heavily; the adaptive precision must cope
    assert [s.node_count for s in exact_solutions(26, 0)] == list(range(27))


def test_solutions_csv():
    buf = io.StringIO()
    write_solutions_csv(exact_solutions(2, 0), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n,l,i,a,W,lambda,node_count,coefficients"
    assert len(lines) == 4
    assert lines[2].startswith("2,0,2,0,7,3,1,")
