"""Truncated universal covering trees and Poisson transforms on them.

The universal cover of a graph, seen from a base vertex ``o``, has one node
for every non-backtracking path starting at ``o``; the node of a path is
joined to the nodes of its one-edge extensions.  A :class:`TreeBall` keeps
the paths of length <= R.  Boundary points are represented by the depth-R
nodes: the cylinder of all rays through a given depth-R node.

A finitely additive measure on the boundary, truncated at depth R, is a
vector of cylinder masses (:class:`CylinderMeasure`).  For nodes of depth
<= R the horocycle bracket is constant on every depth-R cylinder, so the
Poisson integrals below are finite sums and exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import Graph
from .linalg import AlgebraicNumber, as_fraction, is_exact_scalar
from .operators import ZeroParameter

DEFAULT_BALL_CAP = 10 ** 5

Path = tuple[int, ...]


class BallCapExceeded(ValueError):
    pass


class IndeterminateWithinRadius(ValueError):
    pass


@dataclass(eq=False)
class TreeBall:
    graph: Graph
    base: int
    radius: int
    nodes: tuple[Path, ...]
    index: dict = field(repr=False)
    parent: tuple[int, ...] = field(repr=False)
    children: tuple[tuple[int, ...], ...] = field(repr=False)
    projection: tuple[int, ...] = field(repr=False)
    boundary: tuple[int, ...] = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __repr__(self):
        return (f"TreeBall(graph={self.graph.name or '?'}, base={self.graph.labels[self.base]},"
                f" radius={self.radius}, nodes={len(self.nodes)})")

    def depth(self, i: int) -> int:
        return len(self.nodes[i])

    def node(self, x) -> int:
        """Node index of ``x`` given as an index or as a path tuple."""
        if isinstance(x, int):
            if 0 <= x < len(self.nodes):
                return x
            raise KeyError(x)
        return self.index[tuple(x)]

    def neighbors(self, i: int) -> tuple[int, ...]:
        p = self.parent[i]
        return ((p,) if p >= 0 else ()) + self.children[i]

    def nodes_at_depth(self, d: int) -> list[int]:
        return [i for i, p in enumerate(self.nodes) if len(p) == d]

    def branching(self, i: int) -> int:
        """q at the projected vertex (equal to the tree branching)."""
        return self.graph.degree(self.projection[i]) - 1

    def tree_edges(self, max_depth: int | None = None) -> list[tuple[int, int]]:
        """Directed tree edges with both endpoints at depth <= max_depth."""
        if max_depth is None:
            max_depth = self.radius
        out = []
        for i, p in enumerate(self.nodes):
            if len(p) > max_depth:
                continue
            for j in self.neighbors(i):
                if len(self.nodes[j]) <= max_depth:
                    out.append((i, j))
        return out

    def edge_successors(self, edge: tuple[int, int]) -> list[tuple[int, int]]:
        a, b = edge
        return [(b, c) for c in self.neighbors(b) if c != a]

    def edge_projection(self, edge: tuple[int, int]) -> int:
        """Directed quotient edge covered by a tree edge."""
        a, b = edge
        pa, pb = self.nodes[a], self.nodes[b]
        if len(pb) == len(pa) + 1:
            return pb[-1]
        return self.graph.edges[pa[-1]].reversal

    def cylinder(self, i: int) -> list[int]:
        """Boundary positions of the depth-R cylinders below node ``i``."""
        p = self.nodes[i]
        k = len(p)
        return [pos for pos, w in enumerate(self.boundary) if self.nodes[w][:k] == p]


def build_tree_ball(g: Graph, base, radius: int, cap: int = DEFAULT_BALL_CAP) -> TreeBall:
    if radius < 2:
        raise ValueError("radius must be at least 2")
    o = g.vertex(base)
    level: list[Path] = [()]
    nodes: list[Path] = [()]
    for d in range(1, radius + 1):
        if d == 1:
            level = [(e,) for e in g.out_edges[o]]
        else:
            level = [p + (f,) for p in level for f in g.successors(p[-1])]
        nodes.extend(level)
        if len(nodes) > cap:
            raise BallCapExceeded(f"ball of radius {radius} exceeds {cap} nodes")
    index = {p: i for i, p in enumerate(nodes)}
    parent = tuple(index[p[:-1]] if p else -1 for p in nodes)
    kids: list[list[int]] = [[] for _ in nodes]
    for i, par in enumerate(parent):
        if par >= 0:
            kids[par].append(i)
    proj = tuple(g.edges[p[-1]].terminal if p else o for p in nodes)
    boundary = tuple(i for i, p in enumerate(nodes) if len(p) == radius)
    return TreeBall(g, o, radius, tuple(nodes), index, parent,
                    tuple(tuple(k) for k in kids), proj, boundary)


def horocycle_bracket(ball: TreeBall, x, omega) -> int:
    """Horocycle bracket of node ``x`` and the boundary cylinder ``omega``.

    ``x`` may be a ball node (index or path) or any longer non-backtracking
    path from the base; ``omega`` is a depth-R node.  The meeting point of
    the rays toward ``omega`` from the base and from ``x`` is their longest
    common prefix.
    """
    xp = ball.nodes[x] if isinstance(x, int) else tuple(x)
    wp = ball.nodes[omega] if isinstance(omega, int) else tuple(omega)
    if len(wp) != ball.radius:
        raise ValueError("omega must be a depth-R node")
    k = 0
    while k < len(xp) and k < len(wp) and xp[k] == wp[k]:
        k += 1
    if k == ball.radius and len(xp) > ball.radius:
        raise IndeterminateWithinRadius(
            f"node at depth {len(xp)} lies inside the cylinder; meeting point beyond radius")
    return 2 * k - len(xp)


# ----------------------------------------------------------------------
# measures

@dataclass(frozen=True)
class CylinderMeasure:
    """Masses of the depth-R cylinders, in the order of ``ball.boundary``."""

    masses: tuple

    def __len__(self):
        return len(self.masses)

    def total(self):
        return sum(self.masses, Fraction(0))

    def mass_of(self, ball: TreeBall, node: int):
        """Mass of the coarser cylinder below ``node`` (finite additivity)."""
        return sum((self.masses[pos] for pos in ball.cylinder(node)), Fraction(0))


def uniform_measure(ball: TreeBall) -> CylinderMeasure:
    n = len(ball.boundary)
    return CylinderMeasure(tuple(Fraction(1, n) for _ in range(n)))


def single_measure(ball: TreeBall, cylinder: int, mass=1) -> CylinderMeasure:
    n = len(ball.boundary)
    if not 0 <= cylinder < n:
        raise ValueError(f"cylinder id must be in [0, {n})")
    return CylinderMeasure(tuple(as_fraction(mass) if k == cylinder else Fraction(0)
                                 for k in range(n)))


def zero_measure(ball: TreeBall) -> CylinderMeasure:
    return CylinderMeasure((Fraction(0),) * len(ball.boundary))


def random_measure(ball: TreeBall, seed: int, max_num: int = 9,
                   max_den: int = 7) -> CylinderMeasure:
    """Seeded random signed rational masses."""
    rng = random.Random(seed)
    return CylinderMeasure(tuple(Fraction(rng.randint(-max_num, max_num),
                                          rng.randint(1, max_den))
                                 for _ in ball.boundary))


def parse_measure(ball: TreeBall, spec: str) -> CylinderMeasure:
    """``uniform``, ``single:<cylinder-id>`` or ``random:<seed>``."""
    kind, _, arg = spec.partition(":")
    if kind == "uniform":
        return uniform_measure(ball)
    if kind == "single":
        return single_measure(ball, int(arg))
    if kind == "random":
        return random_measure(ball, int(arg))
    raise ValueError(f"unknown measure {spec!r}")


# ----------------------------------------------------------------------
# Poisson transforms

def _check_z(z):
    if z == 0:
        raise ZeroParameter()
    if isinstance(z, AlgebraicNumber):
        return z
    if is_exact_scalar(z) or isinstance(z, str):
        return as_fraction(z)
    return complex(z)


def _kernel_weights(z, mu: CylinderMeasure, r: int):
    """Kernel powers ``z^k`` (|k| <= r), masses, and a common divisor.

    For rational ``z`` and rational masses everything is scaled to Python
    ints (masses by their common denominator, ``z^k`` by ``(pq)^r`` for
    ``z = p/q``) so sums stay in integer arithmetic; the true value is the
    integer sum divided by the returned divisor.
    """
    if isinstance(z, Fraction) and all(isinstance(m, Fraction) for m in mu.masses):
        den = 1
        for m in mu.masses:
            den = _lcm(den, m.denominator)
        masses = [m.numerator * (den // m.denominator) for m in mu.masses]
        p, q = z.numerator, z.denominator
        weights = {k: p ** (k + r) * q ** (r - k) for k in range(-r, r + 1)}
        return weights, masses, Fraction(den * (p * q) ** r)
    weights = {k: z ** k for k in range(-r, r + 1)}
    return weights, list(mu.masses), 1


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def _finish(total, divisor):
    if divisor == 1:
        return total
    return Fraction(total) / divisor


def _bracket_table(ball: TreeBall) -> dict[int, tuple[int, ...]]:
    """Brackets of every node of depth <= R-1 against every cylinder."""
    if "brackets" not in ball._cache:
        table = {}
        for i, p in enumerate(ball.nodes):
            if len(p) < ball.radius:
                table[i] = tuple(horocycle_bracket(ball, i, w) for w in ball.boundary)
        ball._cache["brackets"] = table
    return ball._cache["brackets"]


def _kernel_sum(weights, masses, brackets, positions):
    grouped: dict[int, object] = {}
    for pos in positions:
        m = masses[pos]
        if m:
            k = brackets[pos]
            grouped[k] = grouped.get(k, 0) + m
    total = 0
    for k in sorted(grouped):
        total = total + weights[k] * grouped[k]
    return total


def poisson_transform(ball: TreeBall, z, mu: CylinderMeasure, nodes=None) -> dict[int, object]:
    """Scalar Poisson transform, ``x -> sum_w z^<x,w> mu(w)``.

    Evaluated at ``nodes`` (default: every node of depth <= R-1).
    """
    z = _check_z(z)
    table = _bracket_table(ball)
    if nodes is None:
        nodes = sorted(table)
    weights, masses, div = _kernel_weights(z, mu, ball.radius)
    everything = range(len(masses))
    out = {}
    for x in nodes:
        if x not in table:
            raise IndeterminateWithinRadius(f"node {x} has depth > R-1")
        out[x] = _finish(_kernel_sum(weights, masses, table[x], everything), div)
    return out


def _forward_positions(ball: TreeBall, edge) -> list[int]:
    """Cylinders reached by rays whose first step is ``edge``."""
    cache = ball._cache.setdefault("forward", {})
    if edge not in cache:
        a, b = edge
        if ball.parent[b] == a:
            cache[edge] = ball.cylinder(b)
        else:
            below = set(ball.cylinder(a))
            cache[edge] = [pos for pos in range(len(ball.boundary)) if pos not in below]
    return cache[edge]


def edge_poisson_transform(ball: TreeBall, z, mu: CylinderMeasure,
                           edges=None) -> dict[tuple[int, int], object]:
    """Edge Poisson transform, ``e -> sum_{w in forward(e)} z^<iota(e),w> mu(w)``.

    Evaluated on ``edges`` (default: tree edges with both ends at depth <= R-1).
    """
    z = _check_z(z)
    table = _bracket_table(ball)
    if edges is None:
        edges = ball.tree_edges(ball.radius - 1)
    weights, masses, div = _kernel_weights(z, mu, ball.radius)
    out = {}
    for e in edges:
        a, b = e
        if a not in table or b not in table:
            raise IndeterminateWithinRadius(f"edge {e} leaves the depth R-1 region")
        out[e] = _finish(_kernel_sum(weights, masses, table[a], _forward_positions(ball, e)),
                         div)
    return out


def interior_nodes(ball: TreeBall) -> list[int]:
    return [i for i, p in enumerate(ball.nodes) if len(p) <= ball.radius - 2]


def interior_edges(ball: TreeBall) -> list[tuple[int, int]]:
    """Edges in the depth <= R-1 region whose successors are there too."""
    lim = ball.radius - 1
    det = set(ball.tree_edges(lim))
    return [e for e in sorted(det) if all(s in det for s in ball.edge_successors(e))]


def vertex_equation_failures(ball: TreeBall, z, values: dict, nodes=None) -> list[int]:
    """Nodes where ``sum_{y~x} F(y) != (z + q_x/z) F(x)``."""
    z = _check_z(z)
    if nodes is None:
        nodes = interior_nodes(ball)
    bad = []
    for x in nodes:
        lhs = sum((values[y] for y in ball.neighbors(x)), Fraction(0))
        rhs = (z + Fraction(ball.branching(x)) / z) * values[x]
        if not _close(lhs, rhs):
            bad.append(x)
    return bad


def edge_equation_failures(ball: TreeBall, z, values: dict, edges=None) -> list:
    """Edges where the successor sum differs from ``z`` times the value."""
    z = _check_z(z)
    if edges is None:
        edges = interior_edges(ball)
    bad = []
    for e in edges:
        lhs = sum((values[s] for s in ball.edge_successors(e)), Fraction(0))
        if not _close(lhs, z * values[e]):
            bad.append(e)
    return bad


def _close(a, b, tol=1e-9):
    if isinstance(a, complex) or isinstance(b, complex):
        return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
    return a == b


# ----------------------------------------------------------------------
# factorization through ray space

def _rays(ball: TreeBall) -> dict[int, list[tuple[int, int, int]]]:
    """Truncated geodesic rays from every node of depth <= R-1.

    For each start node: ``(first step, cylinder position, bracket)``, where
    the bracket is read off the ray itself: d(o, y) - d(x, y) with y the
    shallowest node on the ray (where the ray turns from ascending to
    descending).
    """
    if "rays" in ball._cache:
        return ball._cache["rays"]
    pos_of = {w: k for k, w in enumerate(ball.boundary)}
    rays: dict[int, list[tuple[int, int, int]]] = {}
    for x, p in enumerate(ball.nodes):
        if len(p) >= ball.radius:
            continue
        found = []
        stack = [(x, -1, 0, x, ball.depth(x), 0)]
        while stack:
            cur, prev, steps, first, top_depth, top_steps = stack.pop()
            if ball.depth(cur) == ball.radius:
                found.append((first, pos_of[cur], top_depth - top_steps))
                continue
            for nxt in ball.neighbors(cur):
                if nxt == prev:
                    continue
                d = ball.depth(nxt)
                td, ts = (d, steps + 1) if d < top_depth else (top_depth, top_steps)
                stack.append((nxt, cur, steps + 1, nxt if steps == 0 else first, td, ts))
        rays[x] = sorted(found)
    ball._cache["rays"] = rays
    return rays


@dataclass
class FactorizationReport:
    z: object
    vertex_checked: int
    edge_checked: int
    vertex_mismatches: list
    edge_mismatches: list

    @property
    def passed(self) -> bool:
        return not self.vertex_mismatches and not self.edge_mismatches


def factorized_transforms(ball: TreeBall, z, mu: CylinderMeasure):
    """Both transforms via pull-back to rays, kernel weight, push-forward.

    Each ray from ``x`` ending in cylinder ``w`` receives ``mu(w)`` (pull
    back along the endpoint map) times ``z^bracket`` (kernel as a function
    on rays); summing over rays with initial vertex ``x`` gives the vertex
    transform, summing over rays with first edge ``e`` the edge transform.
    """
    z = _check_z(z)
    weights, masses, div = _kernel_weights(z, mu, ball.radius)
    vert: dict[int, object] = {}
    edge: dict[tuple[int, int], object] = {}
    for x, rs in _rays(ball).items():
        total = 0
        for first, pos, k in rs:
            m = masses[pos]
            if not m:
                continue
            w = weights[k] * m
            total = total + w
            key = (x, first)
            edge[key] = edge.get(key, 0) + w
        vert[x] = _finish(total, div)
    return vert, {e: _finish(v, div) for e, v in edge.items()}


def factorization_check(ball: TreeBall, z, mu: CylinderMeasure) -> FactorizationReport:
    direct_v = poisson_transform(ball, z, mu)
    direct_e = edge_poisson_transform(ball, z, mu)
    fact_v, fact_e = factorized_transforms(ball, z, mu)
    vbad = [x for x, v in direct_v.items() if not _close(v, fact_v[x])]
    ebad = [e for e, v in direct_e.items() if not _close(v, fact_e.get(e, Fraction(0)))]
    return FactorizationReport(z, len(direct_v), len(direct_e), vbad, ebad)


# ----------------------------------------------------------------------
# lifts of quotient data

def lift_vertex_function(ball: TreeBall, values: Sequence) -> dict[int, object]:
    return {i: values[ball.projection[i]] for i in range(len(ball.nodes))}


def lift_edge_function(ball: TreeBall, values: Sequence) -> dict[tuple[int, int], object]:
    return {e: values[ball.edge_projection(e)] for e in ball.tree_edges()}
