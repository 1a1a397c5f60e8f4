from fractions import Fraction

import numpy as np
import pytest

from liefield import linalg
from liefield.coeffring import GaussianRational


def test_charpoly_and_roots():
    M = [[2, 1, 0], [0, 2, 0], [1, 1, -1]]
    M = [[Fraction(x) for x in r] for r in M]
    cp = linalg.charpoly(M)
    assert cp == [4, 0, -3, 1]
    assert linalg.rational_roots(cp) == {Fraction(-1): 1, Fraction(2): 2}


def test_charpoly_matches_numpy():
    rng = np.random.default_rng(3)
    for n in range(1, 7):
        A = rng.integers(-3, 4, size=(n, n))
        exact = linalg.charpoly([[Fraction(int(x)) for x in r] for r in A])
        approx = np.poly(A)[::-1]  # numpy: highest degree first
        assert np.allclose([float(c) for c in exact], approx, atol=1e-6)


def test_irrational_roots_reported():
    with pytest.raises(linalg.NonRationalEigenvalueError):
        linalg.rational_roots([Fraction(-2), Fraction(0), Fraction(1)])


def test_non_real_coefficients_reported():
    with pytest.raises(linalg.NonRationalEigenvalueError):
        linalg.rational_roots([GaussianRational(1, 1), Fraction(1)])


def test_det_and_rank():
    M = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert linalg.det(M) == 0
    assert linalg.rank(M) == 1
    assert linalg.det([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]) == -1


def test_nullspace():
    M = [[Fraction(1), Fraction(1), Fraction(0)]]
    ker = linalg.nullspace(M, 3)
    assert len(ker) == 2
    for v in ker:
        assert sum(a * b for a, b in zip(M[0], v)) == 0


def test_echelon_span_coordinates():
    S = linalg.EchelonSpan()
    assert S.add({"a": Fraction(1), "b": Fraction(1)}, 0)
    assert S.add({"b": Fraction(1)}, 1)
    assert not S.add({"a": Fraction(2)}, 2)
    coords = S.coordinates({"a": Fraction(3), "b": Fraction(5)})
    assert coords == {0: 3, 1: 2}
    assert S.coordinates({"c": Fraction(1)}) is None
