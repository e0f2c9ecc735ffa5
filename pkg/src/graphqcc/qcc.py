"""Checks of the graph quantum-classical correspondences.

Three spaces are compared at a spectral parameter ``z``:

* transfer side: eigenfunctions of the transfer operator on locally
  constant functions, computed at depth 1 (and cross-checked at depth 2);
* edge side: eigenfunctions of the edge Laplacian;
* vertex side: the equalizer ``{Delta = delta_z}``, i.e. the kernel of M_z.

For ``z`` outside ``{0, 1, -1}`` the edge and vertex sides are linked by

    S(x) = sum_{iota(e) = x} f(e)                (edge -> vertex)
    f(e) = (z g(tau e) - g(iota e)) / (z^2 - 1)   (vertex -> edge)

and the transfer and edge sides by precomposition with edge reversal,
which conjugates the edge Laplacian into its transpose.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .graph import Graph, cyclomatic_number, is_bipartite
from .linalg import (DEFAULT_TOL, AlgebraicNumber, EqualizerBasis, ExactMatrix,
                     NumberField, NumericMatrix, as_fraction, format_scalar,
                     is_exact_scalar, nullspace, nullspace_numeric)
from .operators import (ZeroParameter, edge_laplacian_array, edge_laplacian_matrix,
                        edge_spectral_factors, vertex_equalizer_matrix)
from .paths import (DEFAULT_DEPTH_CAP, depth_of, enumerate_paths, transfer_array,
                    transfer_matrix)

# irreducible factors up to this degree get an exact check in Q[x]/(p)
ALGEBRAIC_EXACT_MAX_DEGREE = 4


class ExceptionalParameter(ValueError):
    def __init__(self, z):
        super().__init__(f"z = {z} is exceptional (z^2 = 1)")


class CorrespondenceError(AssertionError):
    pass


@dataclass
class Check:
    """One assertion: what was compared and whether it held."""

    name: str
    observed: Any
    expected: Any
    passed: bool
    mode: str = "exact"
    inputs: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "inputs": _jsonable(self.inputs), "mode": self.mode,
                "observed": _jsonable(self.observed), "expected": _jsonable(self.expected),
                "pass": bool(self.passed)}


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return format_scalar(v)


@dataclass
class CorrespondenceReport:
    graph: str
    z: Any
    mode: str
    dimensions: dict
    isomorphism: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"graph": self.graph, "z": _jsonable(self.z), "mode": self.mode,
                "dimensions": self.dimensions, "isomorphism": self.isomorphism,
                "pass": self.passed, "checks": [c.to_json() for c in self.checks]}


# ----------------------------------------------------------------------
# helpers

def _mode(z) -> str:
    return "exact" if is_exact_scalar(z) or isinstance(z, str) else "numeric"


def _normalize_z(z):
    if isinstance(z, AlgebraicNumber):
        return z
    if is_exact_scalar(z) or isinstance(z, str):
        return as_fraction(z)
    return complex(z)


def _check_nonzero(z):
    if z == 0:
        raise ZeroParameter()


def _is_exceptional(z) -> bool:
    return z * z == 1 if _mode(z) == "exact" else abs(complex(z) ** 2 - 1) < 1e-12


def _kernel(matrix, z, name, tol):
    if isinstance(matrix, ExactMatrix):
        return nullspace(matrix, name, z)
    return nullspace_numeric(NumericMatrix(matrix, tol), name, z)


def _residual(vec_a, vec_b) -> float:
    a = np.asarray(vec_a, dtype=complex)
    b = np.asarray(vec_b, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a), initial=0)), float(np.max(np.abs(b), initial=0)))
    return float(np.max(np.abs(a - b), initial=0)) / scale


def _vec_equal(a, b, tol=None) -> bool:
    if tol is None:
        return all(x == y for x, y in zip(a, b)) and len(a) == len(b)
    return _residual(a, b) <= tol


def _apply(matrix, vec):
    if isinstance(matrix, ExactMatrix):
        return matrix @ list(vec)
    return matrix @ np.asarray(vec, dtype=complex)


def _zero_like(vec, mode):
    return [0 * v for v in vec] if mode == "exact" else np.zeros(len(vec), dtype=complex)


def transfer_side(g: Graph, z, depth: int = 1, tol: float = DEFAULT_TOL) -> EqualizerBasis:
    """Eigenspace ``{L = z}`` on the depth-``depth`` locally constant space."""
    z = _normalize_z(z)
    _check_nonzero(z)
    if _mode(z) == "exact":
        return nullspace(transfer_matrix(g, depth).shift(z), f"transfer[{depth}]", z)
    t = transfer_array(g, depth)
    return nullspace_numeric(NumericMatrix(t - z * np.eye(t.shape[0]), tol),
                             f"transfer[{depth}]", z)


def edge_side(g: Graph, z, tol: float = DEFAULT_TOL) -> EqualizerBasis:
    z = _normalize_z(z)
    _check_nonzero(z)
    if _mode(z) == "exact":
        return nullspace(edge_laplacian_matrix(g).shift(z), "edge", z)
    b = edge_laplacian_array(g)
    return nullspace_numeric(NumericMatrix(b - z * np.eye(b.shape[0]), tol), "edge", z)


def vertex_side(g: Graph, z, tol: float = DEFAULT_TOL) -> EqualizerBasis:
    z = _normalize_z(z)
    m = vertex_equalizer_matrix(g, z)
    if isinstance(m, ExactMatrix):
        return nullspace(m, "vertex", z)
    return nullspace_numeric(NumericMatrix(m.data, tol), "vertex", z)


# ----------------------------------------------------------------------
# explicit maps

def _edge_op(g, z):
    z = _normalize_z(z)
    if _mode(z) == "exact":
        return edge_laplacian_matrix(g).shift(z)
    return edge_laplacian_array(g) - z * np.eye(g.n_directed)


def _vertex_op(g, z):
    m = vertex_equalizer_matrix(g, _normalize_z(z))
    return m if isinstance(m, ExactMatrix) else m.data


def map_edge_to_vertex(g: Graph, z, f: Sequence, verify: bool = True,
                       tol: float = DEFAULT_TOL) -> list:
    """Sum an edge eigenfunction over outgoing edges: S(x) = sum f(e), iota(e) = x."""
    z = _normalize_z(z)
    _check_nonzero(z)
    if _is_exceptional(z):
        raise ExceptionalParameter(z)
    mode = _mode(z)
    t = None if mode == "exact" else tol
    if verify and not _vec_equal(_apply(_edge_op(g, z), f), _zero_like(f, mode), t):
        raise ValueError("input is not in the edge equalizer at z")
    s = []
    for x in range(g.n_vertices):
        acc = 0 * f[0] if len(f) else 0
        for e in g.out_edges[x]:
            acc = acc + f[e]
        s.append(acc)
    if verify and not _vec_equal(_apply(_vertex_op(g, z), s), _zero_like(s, mode), t):
        raise CorrespondenceError("image is not in the vertex equalizer")
    return s if mode == "exact" else list(np.asarray(s, dtype=complex))


def map_vertex_to_edge(g: Graph, z, gfun: Sequence, verify: bool = True,
                       tol: float = DEFAULT_TOL) -> list:
    """Inverse map: f(e) = (z g(tau e) - g(iota e)) / (z^2 - 1)."""
    z = _normalize_z(z)
    _check_nonzero(z)
    if _is_exceptional(z):
        raise ExceptionalParameter(z)
    mode = _mode(z)
    t = None if mode == "exact" else tol
    if verify and not _vec_equal(_apply(_vertex_op(g, z), gfun), _zero_like(gfun, mode), t):
        raise ValueError("input is not in the vertex equalizer at z")
    den = z * z - 1
    f = [(z * gfun[e.terminal] - gfun[e.initial]) / den for e in g.edges]
    if verify:
        if not _vec_equal(_apply(_edge_op(g, z), f), _zero_like(f, mode), t):
            raise CorrespondenceError("image is not in the edge equalizer")
        back = map_edge_to_vertex(g, z, f, verify=False)
        if not _vec_equal(back, list(gfun), t):
            raise CorrespondenceError("edge -> vertex does not invert vertex -> edge")
    return f if mode == "exact" else list(np.asarray(f, dtype=complex))


def map_edge_to_transfer(g: Graph, f: Sequence) -> list:
    """Precompose with edge reversal; sends {Delta_E = z} onto {L = z} at depth 1."""
    return [f[e.reversal] for e in g.edges]


# ----------------------------------------------------------------------
# theorem checks

def _span_rank(vectors, mode, tol):
    if not vectors:
        return 0
    if mode == "exact":
        return ExactMatrix.from_rows(vectors).rank()
    return NumericMatrix(np.array(vectors, dtype=complex), tol).rank()


def _members(op, vectors, mode, tol) -> bool:
    t = None if mode == "exact" else tol
    return all(_vec_equal(_apply(op, v), _zero_like(v, mode), t) for v in vectors)


def check_generic(g: Graph, z, tol: float = DEFAULT_TOL) -> CorrespondenceReport:
    """Dimensions of the three sides agree and the explicit maps are inverse."""
    z = _normalize_z(z)
    _check_nonzero(z)
    if _is_exceptional(z):
        raise ExceptionalParameter(z)
    mode = _mode(z)
    t = None if mode == "exact" else tol
    tr, ed, vx = transfer_side(g, z, 1, tol), edge_side(g, z, tol), vertex_side(g, z, tol)
    dims = {"transfer": tr.dimension, "edge": ed.dimension, "vertex": vx.dimension}
    inputs = {"z": z}
    checks = [
        Check("dim transfer == dim edge", tr.dimension, ed.dimension,
              tr.dimension == ed.dimension, mode, inputs),
        Check("dim edge == dim vertex", ed.dimension, vx.dimension,
              ed.dimension == vx.dimension, mode, inputs),
    ]
    e_op, v_op = _edge_op(g, z), _vertex_op(g, z)
    to_vertex = [map_edge_to_vertex(g, z, f, verify=False) for f in ed.vectors]
    to_edge = [map_vertex_to_edge(g, z, v, verify=False) for v in vx.vectors]
    checks.append(Check("edge->vertex lands in vertex equalizer",
                        _members(v_op, to_vertex, mode, tol), True,
                        _members(v_op, to_vertex, mode, tol), mode, inputs))
    checks.append(Check("vertex->edge lands in edge equalizer",
                        _members(e_op, to_edge, mode, tol), True,
                        _members(e_op, to_edge, mode, tol), mode, inputs))
    rt_v = all(_vec_equal(map_edge_to_vertex(g, z, f, verify=False), list(v), t)
               for f, v in zip(to_edge, vx.vectors))
    rt_e = all(_vec_equal(map_vertex_to_edge(g, z, s, verify=False), list(f), t)
               for s, f in zip(to_vertex, ed.vectors))
    checks.append(Check("edge->vertex o vertex->edge = id", rt_v, True, rt_v, mode, inputs))
    checks.append(Check("vertex->edge o edge->vertex = id", rt_e, True, rt_e, mode, inputs))
    rank_img = _span_rank(to_vertex, mode, tol)
    checks.append(Check("edge->vertex injective", rank_img, ed.dimension,
                        rank_img == ed.dimension, mode, inputs))
    rev = [map_edge_to_transfer(g, f) for f in ed.vectors]
    t_op = _transfer_op(g, z)
    ok = _members(t_op, rev, mode, tol)
    checks.append(Check("edge reversal lands in transfer eigenspace", ok, True, ok, mode,
                        inputs))
    iso = "verified" if all(c.passed for c in checks) else "failed"
    return CorrespondenceReport(g.name, z, mode, dims, iso, checks)


def _transfer_op(g, z):
    if _mode(z) == "exact":
        return transfer_matrix(g, 1).shift(z)
    t = transfer_array(g, 1)
    return t - z * np.eye(t.shape[0])


def depth_collapse_check(g: Graph, z, depth: int = 2, tol: float = DEFAULT_TOL) -> list[Check]:
    """Depth-``depth`` eigenvectors at z != 0 have depth <= 1, same dimension as depth 1."""
    z = _normalize_z(z)
    _check_nonzero(z)
    mode = _mode(z)
    shallow = transfer_side(g, z, 1, tol)
    deep = transfer_side(g, z, depth, tol)
    space = enumerate_paths(g, depth, max(depth, DEFAULT_DEPTH_CAP))
    if mode == "exact":
        depths = [depth_of(v, space) for v in deep.vectors]
    else:
        depths = [depth_of(v, space, tol=1e3 * tol) for v in deep.vectors]
    inputs = {"z": z, "depth": depth}
    return [
        Check(f"dim transfer[{depth}] == dim transfer[1]", deep.dimension, shallow.dimension,
              deep.dimension == shallow.dimension, mode, inputs),
        Check(f"transfer[{depth}] eigenvectors have depth <= 1", max(depths, default=0), 1,
              all(d <= 1 for d in depths), mode, inputs),
    ]


def check_exceptional(g: Graph, z, tol: float = DEFAULT_TOL,
                      collapse_depth: int = 2) -> CorrespondenceReport:
    """Transfer and edge eigenspaces agree for every z != 0 (including +-1)."""
    z = _normalize_z(z)
    _check_nonzero(z)
    mode = _mode(z)
    tr, ed = transfer_side(g, z, 1, tol), edge_side(g, z, tol)
    inputs = {"z": z}
    transposed = transfer_matrix(g, 1) == edge_laplacian_matrix(g).T
    checks = [
        Check("dim transfer == dim edge", tr.dimension, ed.dimension,
              tr.dimension == ed.dimension, mode, inputs),
        Check("transfer[1] == edge Laplacian transposed", transposed, True, transposed,
              "exact", {}),
    ]
    rev = [map_edge_to_transfer(g, f) for f in ed.vectors]
    ok = _members(_transfer_op(g, z), rev, mode, tol)
    rank = _span_rank(rev, mode, tol)
    checks.append(Check("edge reversal maps edge eigenspace into transfer eigenspace",
                        ok, True, ok, mode, inputs))
    checks.append(Check("edge reversal image spans transfer eigenspace", rank,
                        tr.dimension, rank == tr.dimension, mode, inputs))
    if collapse_depth >= 2:
        checks.extend(depth_collapse_check(g, z, collapse_depth, tol))
    dims = {"transfer": tr.dimension, "edge": ed.dimension}
    iso = "verified" if all(c.passed for c in checks) else "failed"
    return CorrespondenceReport(g.name, z, mode, dims, iso, checks)


# ----------------------------------------------------------------------
# topology at z = +-1

def expected_exceptional_dimensions(c: int, bipartite: bool) -> tuple[int, int]:
    """(dim{Delta_E = 1}, dim{Delta_E = -1}) predicted from c and bipartiteness."""
    plus = c + 1 if c == 1 else c
    if c == 1 and bipartite:
        minus = 2
    else:
        minus = c if bipartite else c - 1
    return plus, minus


def check_dimension_formulas(g: Graph) -> list[Check]:
    c = cyclomatic_number(g)
    b = is_bipartite(g)
    d_plus = edge_side(g, 1).dimension
    d_minus = edge_side(g, -1).dimension
    e_plus, e_minus = expected_exceptional_dimensions(c, b)
    inputs = {"cyclomatic": c, "bipartite": b}
    return [
        Check("dim{Delta_E = 1}", d_plus, e_plus, d_plus == e_plus, "exact", inputs),
        Check("dim{Delta_E = -1}", d_minus, e_minus, d_minus == e_minus, "exact", inputs),
        Check("cyclomatic number", c, g.n_edges - g.n_vertices + 1, True, "exact", inputs),
    ]


# ----------------------------------------------------------------------
# sweep over the edge spectrum

def algebraic_parameter(coeffs: Sequence, root: complex) -> AlgebraicNumber:
    """The root of ``coeffs`` (monic, highest first) as an exact field element."""
    field_ = NumberField(list(reversed([Fraction(c) for c in coeffs])), embedding=root)
    return field_.generator


def check_all_eigenvalues(g: Graph, tol: float = DEFAULT_TOL,
                          exact_degree: int = ALGEBRAIC_EXACT_MAX_DEGREE
                          ) -> list[CorrespondenceReport]:
    """check_generic at every edge-Laplacian eigenvalue other than 0, +1, -1.

    Rational eigenvalues are handled exactly.  Irrational ones are checked
    numerically at every root; if the minimal polynomial has degree at most
    ``exact_degree`` the check is repeated exactly in Q[x]/(p).
    """
    reports = []
    for fac in edge_spectral_factors(g):
        r = fac.rational_root
        if r is not None:
            if r != 0 and r * r != 1:
                reports.append(check_generic(g, r, tol))
            continue
        for root in fac.roots:
            if abs(root) < 1e-12:
                continue
            rep = check_generic(g, complex(root), tol)
            rep.checks.append(Check("numeric dims agree with algebraic multiplicity bound",
                                    rep.dimensions["edge"], fac.multiplicity,
                                    rep.dimensions["edge"] <= fac.multiplicity,
                                    "numeric", {"z": complex(root)}))
            reports.append(rep)
        if 2 <= fac.degree <= exact_degree:
            alpha = algebraic_parameter(fac.coeffs, fac.roots[0])
            rep = check_generic(g, alpha, tol)
            numeric_dims = [x for x in reports if x.mode == "numeric"
                            and abs(complex(x.z) - fac.roots[0]) < 1e-9]
            if numeric_dims:
                nd = numeric_dims[0].dimensions
                rep.checks.append(Check("exact dims == numeric dims", rep.dimensions, nd,
                                        rep.dimensions == nd, "exact",
                                        {"minpoly": list(fac.coeffs)}))
            reports.append(rep)
    return reports
