import math

import numpy as np
import pytest
import sympy

from peakwalk.eligibility import charpoly_is_integral, charpoly_mp, has_integer_entries, is_eligible_matrix
from peakwalk.families import product_of_squares
from peakwalk.graphs import adjacency_matrix, petersen_graph, xn_graph


def test_integer_entries():
    assert has_integer_entries(adjacency_matrix(petersen_graph()))
    assert not has_integer_entries(adjacency_matrix(xn_graph(2)))


@pytest.mark.parametrize("n", [1, 2, 5, 12, 24])
def test_xn_charpoly_integral(n):
    M = adjacency_matrix(xn_graph(n))
    assert charpoly_is_integral(M)
    coeffs = [int(round(float(c))) for c in charpoly_mp(M)] if n <= 12 else None
    if coeffs is not None:
        assert coeffs[::-1] == list(product_of_squares(n).coefficients)


def test_irrational_weights_not_integral():
    r = math.sqrt(2)
    M = np.array([[0, r, 0], [r, 0, 1], [0, 1, 0]])
    # x^3 - 3x: integral, even though an entry is irrational
    assert charpoly_is_integral(M)
    T = np.array([[0, r, r], [r, 0, r], [r, r, 0]])
    assert not charpoly_is_integral(T)
    assert not is_eligible_matrix(T)


def test_charpoly_against_sympy():
    rng = np.random.default_rng(3)
    X = rng.integers(-2, 3, size=(6, 6))
    M = (X + X.T).astype(float)
    ours = [int(round(float(c))) for c in charpoly_mp(M)]
    ref = sympy.Matrix(M.astype(int)).charpoly().all_coeffs()
    assert ours == [int(c) for c in ref]
