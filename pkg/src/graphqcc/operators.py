"""Graph operators as matrices, their equalizers and spectra.

Conventions
-----------
Directed edges are indexed as in :class:`graphqcc.graph.Graph`.  The
branching number at ``x`` is ``q_x = degree(x) - 1``.  The vertex equalizer
``{Delta = delta_z}`` is the kernel of

    M_z[x, y] = 1  for y ~ x,      M_z[x, x] = -(z + q_x / z),

obtained from ``Delta f = delta_z f`` after multiplying row ``x`` by
``1 + q_x``.
"""
from __future__ import annotations

import numpy as np
from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph
from .linalg import (DEFAULT_TOL, AlgebraicNumber, EqualizerBasis, ExactMatrix,
                     NumericMatrix, as_fraction, charpoly, factor_rational_poly,
                     is_exact_scalar, nullspace, nullspace_numeric)

# characteristic polynomial is computed exactly up to this size
CHARPOLY_EXACT_MAX = 60


class ZeroParameter(ValueError):
    def __init__(self):
        super().__init__("spectral parameter must be nonzero")


def _exact_z(z):
    if isinstance(z, AlgebraicNumber):
        return z
    return as_fraction(z)


def adjacency_matrix(g: Graph) -> ExactMatrix:
    n = g.n_vertices
    rows = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in g.neighbors[x]:
            rows[x][y] = 1
    return ExactMatrix.from_rows(rows)


def branching_matrix(g: Graph) -> ExactMatrix:
    """Diagonal matrix of the branching numbers q_x."""
    n = g.n_vertices
    return ExactMatrix.from_rows([[g.degree(x) - 1 if x == y else 0 for y in range(n)]
                                 for x in range(n)])


def vertex_equalizer_matrix(g: Graph, z):
    """The matrix M_z whose kernel is the vertex equalizer at ``z``.

    Exact scalars give an :class:`ExactMatrix`, anything else (complex
    floats) a :class:`NumericMatrix`.
    """
    if z == 0:
        raise ZeroParameter()
    n = g.n_vertices
    if is_exact_scalar(z) or isinstance(z, str):
        z = _exact_z(z)
        rows = []
        for x in range(n):
            row = [Fraction(0)] * n
            for y in g.neighbors[x]:
                row[y] = Fraction(1)
            row[x] = -(z + Fraction(g.degree(x) - 1) / z)
            rows.append(row)
        return ExactMatrix.from_rows(rows)
    z = complex(z)
    m = np.zeros((n, n), dtype=complex)
    for x in range(n):
        for y in g.neighbors[x]:
            m[x, y] = 1.0
        m[x, x] = -(z + (g.degree(x) - 1) / z)
    return NumericMatrix(m)


def vertex_laplacian_matrix(g: Graph) -> ExactMatrix:
    """Degree-normalized neighbor average, ``(1/(1+q_x)) sum_{y~x} f(y)``."""
    n = g.n_vertices
    rows = [[Fraction(0)] * n for _ in range(n)]
    for x in range(n):
        w = Fraction(1, g.degree(x))
        for y in g.neighbors[x]:
            rows[x][y] = w
    return ExactMatrix.from_rows(rows)


def multiplier(g: Graph, z) -> list:
    """Values of delta_z, ``(z + q_x/z) / (1 + q_x)`` at every vertex."""
    if z == 0:
        raise ZeroParameter()
    if is_exact_scalar(z) or isinstance(z, str):
        z = _exact_z(z)
        return [(z + Fraction(d - 1) / z) / d for d in g.degrees()]
    z = complex(z)
    return [(z + (d - 1) / z) / d for d in g.degrees()]


def edge_laplacian_matrix(g: Graph) -> ExactMatrix:
    """Non-backtracking (Hashimoto) matrix: B[e, e'] = 1 iff e' follows e."""
    m = g.n_directed
    rows = [[0] * m for _ in range(m)]
    for e in range(m):
        for f in g.successors(e):
            rows[e][f] = 1
    return ExactMatrix.from_rows(rows)


def edge_laplacian_array(g: Graph) -> np.ndarray:
    m = g.n_directed
    b = np.zeros((m, m))
    for e in range(m):
        for f in g.successors(e):
            b[e, f] = 1.0
    return b


def vertex_equalizer(g: Graph, z, tol: float = DEFAULT_TOL) -> EqualizerBasis:
    m = vertex_equalizer_matrix(g, z)
    if isinstance(m, ExactMatrix):
        return nullspace(m, "vertex", z)
    return nullspace_numeric(NumericMatrix(m.data, tol), "vertex", z)


def edge_equalizer(g: Graph, z, tol: float = DEFAULT_TOL) -> EqualizerBasis:
    """Kernel of ``Delta_E - z``."""
    if z == 0:
        raise ZeroParameter()
    if is_exact_scalar(z) or isinstance(z, str):
        z = _exact_z(z)
        return nullspace(edge_laplacian_matrix(g).shift(z), "edge", z)
    z = complex(z)
    b = edge_laplacian_array(g) - z * np.eye(g.n_directed)
    return nullspace_numeric(NumericMatrix(b, tol), "edge", z)


# ----------------------------------------------------------------------
# spectrum

@dataclass(frozen=True)
class SpectralFactor:
    """One irreducible rational factor of the characteristic polynomial.

    ``coeffs`` is monic, highest degree first.  ``roots`` are the complex
    roots of the factor (each of algebraic multiplicity ``multiplicity``
    in the full spectrum).  For linear factors ``rational_root`` holds the
    exact eigenvalue.
    """

    coeffs: tuple[Fraction, ...]
    multiplicity: int
    roots: tuple[complex, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def rational_root(self) -> Fraction | None:
        return -self.coeffs[1] if self.degree == 1 else None


def _polished_roots(coeffs) -> np.ndarray:
    c = np.array([float(x) for x in coeffs])
    roots = np.roots(c)
    d = np.polyder(c)
    for _ in range(3):
        val = np.polyval(c, roots)
        der = np.polyval(d, roots)
        ok = der != 0
        roots = np.where(ok, roots - np.where(ok, val / np.where(ok, der, 1), 0), roots)
    return np.sort_complex(roots.astype(complex))


def edge_charpoly(g: Graph) -> list[Fraction]:
    """det(x I - Delta_E), highest degree first (exact)."""
    return charpoly(edge_laplacian_matrix(g).entries)


def edge_spectral_factors(g: Graph) -> list[SpectralFactor]:
    """Spectrum of the edge Laplacian grouped by irreducible rational factor.

    Up to ``CHARPOLY_EXACT_MAX`` directed edges the characteristic
    polynomial is exact; larger graphs go through numpy's eigensolver and
    only the integer eigenvalues are certified exactly (by kernel ranks).
    """
    if g.n_directed <= CHARPOLY_EXACT_MAX:
        factors = []
        for coeffs, mult in factor_rational_poly(edge_charpoly(g)):
            roots = tuple(complex(r) for r in _polished_roots(coeffs))
            factors.append(SpectralFactor(tuple(coeffs), mult, roots))
        return factors
    return _large_spectral_factors(g)


def _large_spectral_factors(g: Graph) -> list[SpectralFactor]:
    b = edge_laplacian_matrix(g)
    ev = np.linalg.eigvals(edge_laplacian_array(g))
    factors = []
    rest = list(ev)
    for k in sorted({int(round(v.real)) for v in ev if abs(v - round(v.real)) < 0.05}):
        mult = _algebraic_multiplicity(b, Fraction(k))
        if mult:
            factors.append(SpectralFactor((Fraction(1), Fraction(-k)), mult, (complex(k),)))
            rest.sort(key=lambda v: abs(v - k))
            rest = rest[mult:]
    for v in sorted(rest, key=lambda v: (round(v.real, 9), round(v.imag, 9))):
        factors.append(SpectralFactor((), 1, (complex(v),)))
    return factors


def _algebraic_multiplicity(b: ExactMatrix, k) -> int:
    shifted = b.shift(k)
    power = shifted
    prev = -1
    nullity = b.cols - power.rank()
    while nullity != prev:
        prev = nullity
        power = power @ shifted
        nullity = b.cols - power.rank()
    return nullity


def edge_spectrum(g: Graph) -> list[complex]:
    """Eigenvalues of the edge Laplacian with algebraic multiplicity."""
    out = []
    for fac in edge_spectral_factors(g):
        for r in fac.roots:
            out.extend([r] * fac.multiplicity)
    return sorted(out, key=lambda v: (round(v.real, 9), round(v.imag, 9)))


# ----------------------------------------------------------------------
# zeta determinant

def zeta_determinant(g: Graph, u) -> Fraction:
    """det(I - u Delta_E), exactly."""
    u = as_fraction(u)
    b = edge_laplacian_matrix(g)
    return (ExactMatrix.identity(b.rows) - b.scale(u)).det()


def vertex_zeta_side(g: Graph, u, branching_offset: int = 1) -> Fraction:
    """Right-hand side ``(1-u^2)^(|E|-|V|) det(I - uA + u^2 Q)``.

    ``Q`` is the diagonal of ``degree - branching_offset``; offset 1 is the
    library's convention q_x = degree - 1, offset 0 the literal reading
    "q_x = number of neighbours".
    """
    u = as_fraction(u)
    n = g.n_vertices
    a = adjacency_matrix(g)
    rows = []
    for x in range(n):
        q = g.degree(x) - branching_offset
        rows.append([(1 if x == y else 0) - u * a[x, y] + (u * u * q if x == y else 0)
                     for y in range(n)])
    return (1 - u * u) ** (g.n_edges - n) * ExactMatrix.from_rows(rows).det()


def branching_convention_diagnostic(g: Graph, samples=(Fraction(1, 3), Fraction(-2, 7),
                                                       Fraction(1, 5))) -> dict:
    """How each reading of q_x fares against the zeta determinant identity.

    Returns ``{"degree-1": bool, "degree": bool}``: whether
    det(I - u Delta_E) equals the vertex-side determinant at every sample
    ``u`` when q_x is taken as degree-1, respectively as the degree.
    """
    lhs = {u: zeta_determinant(g, u) for u in samples}
    return {
        "degree-1": all(lhs[u] == vertex_zeta_side(g, u, 1) for u in samples),
        "degree": all(lhs[u] == vertex_zeta_side(g, u, 0) for u in samples),
    }
