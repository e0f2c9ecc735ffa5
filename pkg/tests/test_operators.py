import cmath
import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
import sympy

from graphqcc.graph import complete_graph, cycle_graph, petersen_graph, complete_bipartite_graph
from graphqcc.linalg import ExactMatrix, NumericMatrix, gaussian, nullspace, nullspace_numeric
from graphqcc.operators import (ZeroParameter, adjacency_matrix, branching_convention_diagnostic,
                                edge_equalizer, edge_laplacian_array, edge_laplacian_matrix,
                                edge_spectral_factors, edge_spectrum, multiplier,
                                vertex_equalizer, vertex_equalizer_matrix,
                                vertex_laplacian_matrix, vertex_zeta_side, zeta_determinant)


def to_sympy(m: ExactMatrix):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r]
                         for r in m.entries])


def multiset_close(a, b, tol=1e-6):
    """Greedy matching of two multisets of complex numbers."""
    b = list(b)
    if len(a) != len(b):
        return False
    for x in a:
        k = min(range(len(b)), key=lambda i: abs(b[i] - x))
        if abs(b[k] - x) > tol:
            return False
        b.pop(k)
    return True


def test_adjacency_examples(triangle, k33):
    assert adjacency_matrix(triangle) == ExactMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    c4 = adjacency_matrix(cycle_graph(4))
    for i in range(4):
        assert [c4[i, (i + j) % 4] for j in range(4)] == [0, 1, 0, 1]
    a = adjacency_matrix(k33)
    idx = [k33.vertex(str(i)) for i in range(6)]  # order by label
    block = [[a[i, j] for j in idx] for i in idx]
    assert block == [[0] * 3 + [1] * 3] * 3 + [[1] * 3 + [0] * 3] * 3


def test_vertex_equalizer_examples(triangle, k4):
    m = vertex_equalizer_matrix(triangle, 1)
    assert [m[i, i] for i in range(3)] == [-2] * 3
    assert m[0, 1] == m[1, 2] == 1
    basis = nullspace(m)
    assert basis.dimension == 1 and basis.vectors[0] == [1, 1, 1]
    m2 = vertex_equalizer_matrix(k4, 2)
    assert m2[0, 0] == -3
    assert nullspace(m2).vectors == [[1, 1, 1, 1]]
    assert nullspace(vertex_equalizer_matrix(k4, 3)).dimension == 0
    with pytest.raises(ZeroParameter):
        vertex_equalizer_matrix(k4, 0)


def test_numeric_equalizer_matches_exact(k4):
    m = vertex_equalizer_matrix(k4, 2.0)
    assert isinstance(m, NumericMatrix)
    assert nullspace_numeric(m).dimension == 1
    assert vertex_equalizer(k4, 2.0).mode == "numeric"


def test_equalizer_is_laplacian_equals_multiplier(petersen):
    # ker M_z is exactly {f : Delta f = delta_z f}
    z = Fraction(3, 2)
    lap = to_sympy(vertex_laplacian_matrix(petersen))
    delta = sympy.diag(*[sympy.Rational(d.numerator, d.denominator)
                         for d in multiplier(petersen, z)])
    ref = (lap - delta).nullspace()
    assert len(ref) == vertex_equalizer(petersen, z).dimension
    z = Fraction(2)
    ref = (to_sympy(vertex_laplacian_matrix(petersen)) - sympy.diag(
        *[sympy.Rational(d.numerator, d.denominator) for d in multiplier(petersen, z)])).nullspace()
    assert len(ref) == vertex_equalizer(petersen, z).dimension == 1


def brute_successor(g, e, f):
    a, b = g.edges[e].initial, g.edges[e].terminal
    c, d = g.edges[f].initial, g.edges[f].terminal
    return int(c == b and d != a)


@pytest.mark.parametrize("g", [cycle_graph(5), complete_graph(4), petersen_graph()])
def test_edge_laplacian_definition(g):
    b = edge_laplacian_matrix(g)
    for e in range(g.n_directed):
        assert [b[e, f] for f in range(g.n_directed)] == \
            [brute_successor(g, e, f) for f in range(g.n_directed)]
        assert sum(b.entries[e]) == g.degree(g.edges[e].terminal) - 1
    assert np.array_equal(edge_laplacian_array(g), np.array(b.entries, dtype=float))


@pytest.mark.parametrize("n", [3, 4, 7])
def test_cycle_edge_laplacian_is_two_cycles(n):
    g = cycle_graph(n)
    b = edge_laplacian_matrix(g)
    succ = {e: next(f for f in range(2 * n) if b[e, f]) for e in range(2 * n)}
    assert sorted(succ.values()) == list(range(2 * n))
    cycles, seen = [], set()
    for e in range(2 * n):
        if e in seen:
            continue
        k, cur = 0, e
        while cur not in seen:
            seen.add(cur)
            cur = succ[cur]
            k += 1
        cycles.append(k)
    assert cycles == [n, n]


def test_row_sums(triangle, k4):
    assert {sum(r) for r in edge_laplacian_matrix(triangle).entries} == {1}
    assert {sum(r) for r in edge_laplacian_matrix(k4).entries} == {2}


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_cycle_spectrum(n):
    spec = edge_spectrum(cycle_graph(n))
    roots = [cmath.exp(2j * cmath.pi * k / n) for k in range(n)] * 2
    assert multiset_close(spec, roots)


def test_k4_spectrum(k4):
    factors = {tuple(f.coeffs): f.multiplicity for f in edge_spectral_factors(k4)}
    assert factors == {(1, -2): 1, (1, -1): 3, (1, 1): 2, (1, 1, 2): 3}
    spec = edge_spectrum(k4)
    assert len(spec) == 12
    nonreal = [z for z in spec if abs(z.imag) > 1e-9]
    assert len(nonreal) == 6
    for z in nonreal:
        assert abs(z * z + z + 2) < 1e-9


def test_petersen_exceptional_multiplicities(petersen):
    spec = Counter(f.rational_root for f in edge_spectral_factors(petersen)
                   for _ in range(f.multiplicity) if f.rational_root is not None)
    assert spec[1] == 6 and spec[-1] == 5
    assert edge_equalizer(petersen, 1).dimension == 6
    assert edge_equalizer(petersen, -1).dimension == 5


@pytest.mark.parametrize("g", [complete_graph(5), complete_bipartite_graph(3, 3),
                               petersen_graph(), cycle_graph(7)])
def test_spectrum_against_numpy(g):
    spec = edge_spectrum(g)
    ref = np.linalg.eigvals(edge_laplacian_array(g))
    assert len(spec) == g.n_directed
    # defective eigenvalues make numpy's values inaccurate; compare loosely
    assert multiset_close(spec, ref, tol=1e-4)
    assert abs(sum(spec)) < 1e-8
    assert multiset_close(spec, [z.conjugate() for z in spec])


def test_large_graph_uses_numeric_path():
    g = complete_graph(9)  # 72 directed edges, above the exact charpoly limit
    factors = edge_spectral_factors(g)
    ints = {f.rational_root: f.multiplicity for f in factors if f.rational_root is not None}
    # K9: c = 36 - 9 + 1 = 28, not bipartite
    assert ints[1] == 28 and ints[-1] == 27 and ints[7] == 1
    assert sum(f.multiplicity * len(f.roots) for f in factors) == 72
    assert multiset_close(edge_spectrum(g), np.linalg.eigvals(edge_laplacian_array(g)), 1e-4)


def test_zeta_examples(triangle, k4):
    assert zeta_determinant(triangle, 0) == 1
    assert zeta_determinant(triangle, 1) == 0
    u = Fraction(1, 3)
    su = sympy.Rational(1, 3)
    a = to_sympy(adjacency_matrix(k4))
    rhs = (1 - su**2) ** 2 * (sympy.eye(4) - su * a + 2 * su**2 * sympy.eye(4)).det()
    assert zeta_determinant(k4, u) == Fraction(int(rhs.p), int(rhs.q))
    assert vertex_zeta_side(k4, u) == zeta_determinant(k4, u)


def test_zeta_identity_random_u(petersen):
    rng = random.Random(5)
    b = to_sympy(edge_laplacian_matrix(petersen))
    for _ in range(3):
        u = Fraction(rng.randint(-7, 7), rng.randint(1, 7))
        ref = (sympy.eye(30) - sympy.Rational(u.numerator, u.denominator) * b).det()
        assert zeta_determinant(petersen, u) == Fraction(int(ref.p), int(ref.q))
        assert vertex_zeta_side(petersen, u) == zeta_determinant(petersen, u)


def test_branching_convention(triangle, k4):
    assert branching_convention_diagnostic(triangle) == {"degree-1": True, "degree": False}
    assert branching_convention_diagnostic(k4) == {"degree-1": True, "degree": False}


@pytest.mark.parametrize("g, q", [(complete_graph(4), 2), (petersen_graph(), 2),
                                  (complete_bipartite_graph(3, 3), 2), (complete_graph(5), 3)])
def test_regular_graph_equalizer_is_adjacency_eigenspace(g, q):
    a = to_sympy(adjacency_matrix(g))
    for z in (Fraction(2), Fraction(-2), Fraction(q), Fraction(-1, 2), Fraction(3)):
        lam = z + Fraction(q) / z
        ref = (a - sympy.Rational(lam.numerator, lam.denominator) * sympy.eye(g.n_vertices))
        ker = vertex_equalizer(g, z).vectors
        assert len(ker) == len(ref.nullspace())
        for v in ker:
            assert ref * sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in v]) \
                == sympy.zeros(g.n_vertices, 1)


def test_gaussian_parameter_exact(k4):
    # z = -1/2 + i sqrt(7)/2 solves z^2 + z + 2 = 0; use an exact Gaussian instead:
    # 1 + i gives z + 2/z = 2, not an adjacency eigenvalue of K4
    z = gaussian(1, 1)
    assert vertex_equalizer(k4, z).dimension == 0
    # z = i: z + 2/z = -i, not an eigenvalue either, but the edge side is defined
    assert edge_equalizer(k4, gaussian(0, 1)).dimension == 0
