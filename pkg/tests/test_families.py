import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from peakwalk.errors import BadParam
from peakwalk.families import (
    XN_BOUND_LIMIT,
    IntPolynomial,
    catalan,
    gn_facts,
    k2_binomial_sum,
    pascal_double_step,
    product_of_squares,
    xn_bound,
    xn_bound_closed_form,
    xn_bound_coefficient,
    xn_charpoly,
    xn_facts,
    xn_idempotent_coefficient,
    xn_idempotent_entry,
    xn_recursion_polys,
)
from peakwalk.graphs import adjacency_matrix, k2_family_graph, xn_graph
from peakwalk.peak import Verdict, check_peak_graph
from peakwalk.spectral import classify_support, decompose

X = IntPolynomial.x()


# --- polynomial arithmetic ---------------------------------------------------------


def test_polynomial_basics():
    p = IntPolynomial((1, 2, 0, 0))
    assert p.coefficients == (1, 2) and p.degree == 1
    assert (X * X - 1).coefficients == (-1, 0, 1)
    assert (X - X).is_zero() and str(X - X) == "0"
    assert str(X * X * X * X - 5 * X * X + 4) == "x^4 - 5x^2 + 4"
    assert (3 - X)(2) == 1


@given(st.lists(st.integers(-50, 50), max_size=6), st.lists(st.integers(-50, 50), max_size=6), st.integers(-5, 5))
def test_polynomial_ring_laws(a, b, x):
    p, q = IntPolynomial(a), IntPolynomial(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q) + q == p


# --- characteristic polynomial --------------------------------------------------------


def test_small_charpolys():
    assert xn_charpoly(1) == X * X - 1
    assert xn_charpoly(2).coefficients == (4, 0, -5, 0, 1)
    assert xn_charpoly(4) == product_of_squares(4)


@pytest.mark.parametrize("n", range(1, 33))
def test_charpoly_equals_product(n):
    assert (xn_charpoly(n) - product_of_squares(n)).is_zero()


@pytest.mark.parametrize("n", [3, 6])
def test_recursion_polys_are_leading_minors(n):
    A = adjacency_matrix(xn_graph(n))
    p, q = xn_recursion_polys(n)
    for size in range(1, 2 * n + 1):
        poly = p[size // 2] if size % 2 == 0 else q[size // 2]
        ref = np.poly(A[:size, :size])[::-1]
        assert np.allclose([float(c) for c in poly.coefficients], ref, atol=1e-6)


@pytest.mark.parametrize("n", range(2, 11))
def test_closing_identities(n):
    p, q = xn_recursion_polys(n)
    assert n * p[n - 1] == X * q[n - 1] - p[n]
    assert (n - 1) * q[n - 2] == X * p[n - 1] - q[n - 1]


@pytest.mark.parametrize("n", range(1, 11))
def test_step_identities(n):
    p, q = xn_recursion_polys(n)
    p1, q1 = xn_recursion_polys(n + 1)
    for k in range(1, n + 1):
        assert p1[k] == p[k] - k * k * p[k - 1]
    for k in range(1, n):
        assert q1[k] == q[k] - k * (k + 1) * q[k - 1]
    assert p1[n] == (n + 1) * p[n] - n * X * q[n - 1]
    if n >= 2:
        assert q1[n - 1] == (n + 1) * q[n - 1] - n * X * p[n - 1]
    assert p1[n + 1] == (X * X - (n + 1) ** 2) * p[n]


def test_charpoly_rejects_bad_n():
    for bad in (0, -1, 1.5, True):
        with pytest.raises(BadParam):
            xn_charpoly(bad)


# --- idempotent entries and the bound ---------------------------------------------------


def test_entry_examples():
    assert xn_idempotent_entry(1, 1) == pytest.approx(0.5)
    assert xn_idempotent_entry(2, 2) == pytest.approx(math.sqrt(2) / 6)
    assert xn_idempotent_entry(2, 1) == pytest.approx(-math.sqrt(2) / 6)
    with pytest.raises(BadParam):
        xn_idempotent_entry(3, 4)
    with pytest.raises(BadParam):
        xn_idempotent_entry(3, 0)


@pytest.mark.parametrize("n", range(2, 13))
def test_entries_match_engine_and_sign_law(n):
    g = xn_graph(n)
    u, v = g.pair
    dec = decompose(adjacency_matrix(g))
    for r, theta in enumerate(dec.thetas):
        k = round(abs(theta))
        numeric = dec.idempotents[r][v, u]
        assert numeric == pytest.approx(xn_idempotent_entry(n, k), abs=1e-9 * n)
        assert np.sign(numeric) == (-1) ** (n - k)


@pytest.mark.parametrize("n", range(1, 40))
def test_bound_three_ways(n):
    assert xn_bound(n) == pytest.approx(xn_bound_closed_form(n), rel=1e-12)
    assert xn_bound(n) == pytest.approx(float(xn_bound_coefficient(n)) * math.sqrt(n), rel=1e-12)
    f = xn_facts(n)
    assert sum(2 * abs(e) for e in f.idempotent_entries.values()) == pytest.approx(f.bound, rel=1e-12)


def test_bound_examples():
    assert xn_bound(1) == 1.0
    assert xn_bound(2) == pytest.approx(2 * math.sqrt(2) / 3)
    assert xn_bound(4) == pytest.approx(128 / 140)


def test_bound_decreases_to_limit():
    seq = [xn_bound(n) for n in range(1, 52)]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert all(b > XN_BOUND_LIMIT for b in seq)
    assert xn_bound(50) - XN_BOUND_LIMIT < 0.005
    # far out the sequence keeps closing in on the limit from above
    assert 0 < xn_bound(10_000) - XN_BOUND_LIMIT < 1e-4
    assert xn_bound(50) ** 2 == pytest.approx(math.pi / 4, abs=0.01)


def test_catalan():
    assert [catalan(n) for n in (0, 1, 2, 3, 4, 10)] == [1, 1, 2, 5, 14, 16796]


@given(st.integers(0, 30), st.integers(-30, 30))
def test_pascal_double_step(n, k):
    lhs, rhs = pascal_double_step(n, k)
    assert lhs == rhs


@pytest.mark.parametrize("n", range(1, 31))
def test_binomial_sum(n):
    assert k2_binomial_sum(n) == n * 4 ** (n - 1)


def test_exact_coefficients_are_rational():
    c = xn_idempotent_coefficient(3, 2)
    assert isinstance(c, Fraction) and c < 0


# --- facts and engine cross-checks ------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 13))
def test_xn_facts_agree_with_engine(n):
    f = xn_facts(n)
    res = check_peak_graph(xn_graph(n))
    assert res.verdict is Verdict.PEAK
    assert res.tau0 == pytest.approx(math.pi, abs=1e-12)
    assert res.bound == pytest.approx(f.bound, abs=1e-8)
    assert res.theta_s == pytest.approx(f.theta_s)
    assert res.phase == pytest.approx(f.phase, abs=1e-9)


def test_xn_phase_independent_of_reference_eigenvalue():
    # every eigenvalue in the positive support gives the same phase mod 2 pi
    for n in range(2, 9):
        dec = decompose(adjacency_matrix(xn_graph(n)))
        u, v = xn_graph(n).pair
        pos = classify_support(dec, u, v).pos
        rotations = [np.exp(1j * math.pi * dec.thetas[r]) for r in pos]
        assert np.allclose(rotations, rotations[0], atol=1e-9)


def test_xn_one_is_the_edge():
    res = check_peak_graph(xn_graph(1))
    assert res.bound == pytest.approx(xn_bound(1))
    assert res.tau0 == pytest.approx(math.pi / 2)


@pytest.mark.parametrize("n,bound,tau0,g,D", [
    (1, Fraction(2, 3), math.pi / math.sqrt(3), 1, 3),
    (4, Fraction(8, 9), math.pi / 3, 3, 1),
    (12, Fraction(24, 25), math.pi / 5, 5, 1),
])
def test_gn_examples(n, bound, tau0, g, D):
    f = gn_facts(n)
    assert f.bound == bound and f.tau0 == pytest.approx(tau0) and (f.g, f.D) == (g, D)


@pytest.mark.parametrize("n", range(1, 13))
def test_gn_agree_with_engine(n):
    f = gn_facts(n)
    dec = decompose(adjacency_matrix(k2_family_graph(n)))
    assert np.allclose(dec.thetas, f.spectrum, atol=1e-9)
    res = check_peak_graph(k2_family_graph(n))
    assert res.bound == pytest.approx(float(f.bound), abs=1e-9)
    assert res.tau0 == pytest.approx(f.tau0, abs=1e-9)
    assert (res.g, res.form.D) == (f.g, f.D)


def test_gn_rejects_bad_n():
    with pytest.raises(BadParam):
        gn_facts(0)


def test_json_shapes():
    assert xn_facts(3).to_json()["tau0_exact"] == "pi"
    assert gn_facts(1).to_json()["tau0_exact"] == "pi/sqrt(3)"
    assert gn_facts(4).to_json()["bound_exact"] == "8/9"
