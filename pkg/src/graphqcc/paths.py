"""Non-backtracking paths and the transfer operator on locally constant data.

A function on geodesic rays that only depends on the first ``n`` edges is a
vector indexed by the non-backtracking paths of length ``n``.  The transfer
operator

    (L f)(e1, e2, ...) = sum over e0 with e0 -> e1 non-backtracking of f(e0, e1, ...)

lowers that depth by one (and keeps depth <= 1 at depth 1), so the depth-n
space is invariant under L and L can be written as a finite 0/1 matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph
from .linalg import ExactMatrix

DEFAULT_DEPTH_CAP = 6

Path = tuple[int, ...]


class DepthCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class DepthSpace:
    """Basis of depth-``depth`` locally constant functions.

    ``basis[k]`` is the path (tuple of directed edge ids) of the k-th
    coordinate.  Depth 0 has the single empty path standing for constants.
    """

    depth: int
    basis: tuple[Path, ...]
    index: dict = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)


def is_non_backtracking(g: Graph, path: Sequence[int]) -> bool:
    for a, b in zip(path, path[1:]):
        ea, eb = g.edges[a], g.edges[b]
        if ea.terminal != eb.initial or ea.initial == eb.terminal:
            return False
    return True


def enumerate_paths(g: Graph, n: int, cap: int = DEFAULT_DEPTH_CAP) -> DepthSpace:
    """All non-backtracking paths of ``n`` edges in lexicographic order."""
    if n < 0:
        raise ValueError("depth must be nonnegative")
    if n > cap:
        raise DepthCapExceeded(f"depth {n} exceeds cap {cap}")
    paths: list[Path] = [()]
    if n >= 1:
        paths = [(e,) for e in range(g.n_directed)]
    for _ in range(n - 1):
        paths = [p + (f,) for p in paths for f in g.successors(p[-1])]
    return DepthSpace(n, tuple(paths), {p: k for k, p in enumerate(paths)})


def transfer_matrix(g: Graph, n: int, cap: int = DEFAULT_DEPTH_CAP) -> ExactMatrix:
    """Matrix of L on the depth-n space, n >= 1.

    Row ``(e1..en)`` has a 1 in column ``(e0, e1..e_{n-1})`` for every
    non-backtracking predecessor ``e0`` of ``e1``.
    """
    if n < 1:
        raise ValueError("transfer matrix needs depth >= 1")
    space = enumerate_paths(g, n, cap)
    size = space.dimension
    rows = []
    for p in space.basis:
        row = [0] * size
        for e0 in g.predecessors(p[0]):
            row[space.index[(e0,) + p[:-1]]] = 1
        rows.append(row)
    return ExactMatrix.from_rows(rows)


def transfer_array(g: Graph, n: int, cap: int = DEFAULT_DEPTH_CAP) -> np.ndarray:
    """Float version of :func:`transfer_matrix`."""
    space = enumerate_paths(g, n, cap)
    t = np.zeros((space.dimension, space.dimension))
    for i, p in enumerate(space.basis):
        for e0 in g.predecessors(p[0]):
            t[i, space.index[(e0,) + p[:-1]]] = 1.0
    return t


def apply_transfer(g: Graph, space: DepthSpace, f: Sequence) -> list:
    """Evaluate L f on the basis of ``space`` (f given in the same basis).

    Works for any depth including 0, where ``L 1 (e1) = q_{iota(e1)}`` is a
    depth-1 function; the result is then returned in the depth-1 basis.
    """
    if space.depth == 0:
        c = f[0]
        return [c * len(g.predecessors(e)) for e in range(g.n_directed)]
    out = []
    for p in space.basis:
        acc = 0
        for e0 in g.predecessors(p[0]):
            acc = acc + f[space.index[(e0,) + p[:-1]]]
        out.append(acc)
    return out


def extend(f: Sequence, source: DepthSpace, target: DepthSpace) -> list:
    """Regard a depth-m function as a function of depth n >= m."""
    if target.depth < source.depth:
        raise ValueError("cannot extend to a smaller depth")
    m = source.depth
    return [f[source.index[p[:m]]] for p in target.basis]


def depth_of(f: Sequence, space: DepthSpace, tol: float | None = None) -> int:
    """Least m such that f only depends on the first m edges.

    Exact comparison by default; with ``tol`` values within ``tol`` times
    the largest magnitude of ``f`` count as equal.
    """
    if tol is not None:
        arr = np.asarray(f, dtype=complex)
        scale = float(np.max(np.abs(arr))) if arr.size else 0.0
        thresh = tol * max(scale, 1e-300)

        def same(a, b):
            return abs(a - b) <= thresh
    else:
        def same(a, b):
            return a == b

    for m in range(space.depth + 1):
        first: dict[Path, object] = {}
        ok = True
        for p, v in zip(space.basis, f):
            key = p[:m]
            if key in first:
                if not same(first[key], v):
                    ok = False
                    break
            else:
                first[key] = v
        if ok:
            return m
    return space.depth


def restrict(f: Sequence, space: DepthSpace, m: int, g: Graph) -> list:
    """Coefficients of a depth-<=m function ``f`` in the depth-m basis."""
    coarse = enumerate_paths(g, m, cap=max(m, DEFAULT_DEPTH_CAP))
    vals = {}
    for p, v in zip(space.basis, f):
        vals.setdefault(p[:m], v)
    return [vals[p] for p in coarse.basis]


def indicator(space: DepthSpace, prefix: Path) -> list[Fraction]:
    """Indicator of all basis paths starting with ``prefix``."""
    k = len(prefix)
    return [Fraction(int(p[:k] == tuple(prefix))) for p in space.basis]
