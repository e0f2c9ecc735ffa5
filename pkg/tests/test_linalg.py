import json
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from graphqcc.linalg import (GAUSSIAN, AlgebraicNumber, EqualizerBasis, ExactMatrix,
                             NumberField, NumericMatrix, as_fraction, bareiss_det, charpoly,
                             exact_det, exact_nullspace, exact_rank, factor_rational_poly,
                             format_scalar, gaussian, nullspace, nullspace_numeric,
                             numeric_kernel, parse_scalar, rref)


def rand_int_matrix(rng, n, m, lo=-4, hi=4):
    return [[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)]


def test_as_fraction():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(5) == Fraction(5)
    with pytest.raises(TypeError):
        as_fraction(0.5)


@pytest.mark.parametrize("x, s", [(Fraction(3, 4), "3/4"), (Fraction(-2), "-2"),
                                  (1.5 + 2j, "1.5,2.0")])
def test_scalar_format_round_trip(x, s):
    assert format_scalar(x) == s
    assert parse_scalar(s) == x


def test_gaussian_arithmetic():
    i = gaussian(0, 1)
    assert i * i == gaussian(-1)
    z = gaussian(Fraction(1, 2), 3)
    assert z * z.inverse() == 1
    assert complex(z) == 0.5 + 3j
    assert format_scalar(z) == "1/2,3"
    assert (z - z).coeffs == (0, 0) or not (z - z)


def test_number_field_inverse_matches_sympy():
    # Q(a) with a^3 = a + 1
    field = NumberField([-1, -1, 0, 1])
    x = field([2, Fraction(1, 3), -1])
    inv = x.inverse()
    assert x * inv == 1
    a = sympy.Symbol("a")
    expr = sympy.rem(sympy.expand((2 + a / 3 - a**2) * sum(
        sympy.Rational(c.numerator, c.denominator) * a**k for k, c in enumerate(inv.coeffs))),
        a**3 - a - 1, a)
    assert sympy.simplify(expr - 1) == 0


def test_nullspace_spec_examples():
    zero = ExactMatrix.zeros(3, 3)
    assert nullspace(zero).dimension == 3
    assert nullspace(ExactMatrix.identity(4)).dimension == 0
    tri = ExactMatrix.from_rows([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    basis = nullspace(tri)
    assert basis.dimension == 1
    assert basis.vectors[0] == [1, 1, 1]


def test_numeric_nullspace_examples():
    rng = np.random.default_rng(7)
    full = NumericMatrix(rng.standard_normal((6, 6)))
    assert nullspace_numeric(full).dimension == 0
    tri = ExactMatrix.from_rows([[-2, 1, 1], [1, -2, 1], [1, 1, -2]]).to_numeric()
    k = nullspace_numeric(tri)
    assert k.dimension == 1
    v = np.asarray(k.vectors[0])
    assert np.allclose(v / v[0], 1)


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        NumericMatrix(np.eye(2), tol=0.0)


@pytest.mark.parametrize("seed", range(12))
def test_rref_rank_nullspace_against_sympy(seed):
    rng = random.Random(seed)
    n, m, r = rng.randint(2, 6), rng.randint(2, 7), rng.randint(0, 4)
    a = np.array(rand_int_matrix(rng, n, r), dtype=object)
    b = np.array(rand_int_matrix(rng, r, m), dtype=object)
    rows = (a.dot(b) if r else np.zeros((n, m), dtype=int)).tolist()
    ref = sympy.Matrix(rows)
    assert exact_rank(rows) == ref.rank()
    ker = exact_nullspace(rows, m)
    assert len(ker) == len(ref.nullspace())
    for v in ker:
        assert all(x == 0 for x in ExactMatrix.from_rows(rows) @ v)
    red, piv = rref(rows)
    ref_red, ref_piv = ref.rref()
    assert tuple(piv) == ref_piv
    assert [[sympy.Rational(v.numerator, v.denominator) for v in r] for r in red] == \
        ref_red[:len(red), :].tolist()


@pytest.mark.parametrize("seed", range(10))
def test_determinants_against_sympy(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 7)
    rows = rand_int_matrix(rng, n, n, -6, 6)
    ref = sympy.Matrix(rows).det()
    assert bareiss_det(rows) == ref
    frac = [[Fraction(v, rng.randint(1, 5)) for v in r] for r in rows]
    assert exact_det(frac) == sympy.Matrix(
        [[sympy.Rational(v.numerator, v.denominator) for v in r] for r in frac]).det()


@pytest.mark.parametrize("seed", range(10))
def test_charpoly_against_sympy(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 8)
    rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)]
    x = sympy.Symbol("x")
    sm = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])
    ref = sympy.Poly(sm.charpoly(x).as_expr(), x).all_coeffs()
    assert charpoly(rows) == [Fraction(int(c.p), int(c.q)) for c in ref]


def test_factor_rational_poly():
    # (x-1)^2 (x^2+x+2)
    coeffs = [1, -1, 1, -3, 2]
    facs = factor_rational_poly(coeffs)
    assert sorted((tuple(c), k) for c, k in facs) == [((1, -1), 2), ((1, 1, 2), 1)]


def test_exact_matrix_ops():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert a.T == ExactMatrix.from_rows([[1, 3], [2, 4]])
    assert a @ [1, 1] == [3, 7]
    assert (a - a) == ExactMatrix.zeros(2, 2)
    assert a.shift(1) == ExactMatrix.from_rows([[0, 2], [3, 3]])
    assert a.det() == -2
    assert a.charpoly() == [1, -5, -2]
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])


def test_matrix_json_round_trip():
    a = ExactMatrix.from_rows([[Fraction(1, 3), -2], [0, Fraction(7, 5)]])
    doc = json.loads(json.dumps(a.to_json()))
    assert doc == {"rows": 2, "cols": 2, "mode": "exact", "entries": ["1/3", "-2", "0", "7/5"]}
    assert ExactMatrix.from_json(doc) == a
    g = ExactMatrix.from_rows([[gaussian(1, 2), 0], [gaussian(0, Fraction(-1, 2)), 1]])
    assert ExactMatrix.from_json(g.to_json()) == g
    n = NumericMatrix(np.array([[1 + 2j, 0.5], [0, -1]]))
    back = NumericMatrix.from_json(json.loads(json.dumps(n.to_json())))
    assert np.array_equal(back.data, n.data)
    assert n.to_json()["mode"] == "numeric"


def test_gaussian_nullspace_exact():
    # [[1, i], [i, -1]] has kernel spanned by (-i, 1)
    i = gaussian(0, 1)
    m = ExactMatrix.from_rows([[gaussian(1), i], [i, gaussian(-1)]])
    ker = nullspace(m)
    assert ker.dimension == 1
    v = ker.vectors[0]
    assert all(x == 0 for x in m @ v)
    assert v[0] == -i and v[1] == 1


def test_numeric_kernel_relative_tolerance():
    a = np.diag([1e6, 1.0, 1e-3])
    assert len(numeric_kernel(a, 1e-10)) == 0
    assert len(numeric_kernel(a, 1e-8)) == 1
    assert len(numeric_kernel(a, 1e-5)) == 2
    assert len(numeric_kernel(np.zeros((2, 3)))) == 3
    assert len(numeric_kernel(np.ones((1, 3)))) == 2
