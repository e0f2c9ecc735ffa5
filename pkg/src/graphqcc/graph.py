"""Finite symmetric graphs without loops or dead ends.

A :class:`Graph` stores the undirected edge set together with the derived
directed edges.  Directed edges carry dense integer ids in lexicographic
order of their (initial, terminal) vertex indices, so every construction
downstream (path bases, matrices, reports) is deterministic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable


class GraphError(Exception):
    """Base class for graph construction problems."""


class ParseError(GraphError):
    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        self.reason = reason
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class ValidationError(GraphError):
    """Raised when a graph violates one of the standing axioms.

    ``axiom`` is one of ``"Loop"``, ``"DeadEnd"``, ``"Disconnected"``,
    ``"Empty"``.
    """

    def __init__(self, axiom: str, detail: str):
        self.axiom = axiom
        self.detail = detail
        super().__init__(f"{axiom}: {detail}")


class UnknownVertex(GraphError, KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


@dataclass(frozen=True)
class DirectedEdge:
    id: int
    initial: int
    terminal: int
    reversal: int


@dataclass(frozen=True, eq=False)
class Graph:
    """Validated finite graph.

    Vertices are addressed internally by dense indices ``0..n-1``;
    ``labels[i]`` is the identifier the vertex had in the input.
    """

    labels: tuple[str, ...]
    undirected_edges: tuple[tuple[int, int], ...]
    edges: tuple[DirectedEdge, ...] = field(repr=False)
    neighbors: tuple[tuple[int, ...], ...] = field(repr=False)
    out_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    in_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    name: str = ""

    # construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[Hashable, Hashable]],
                   name: str = "", validate: bool = True) -> "Graph":
        """Build a graph from undirected vertex pairs.

        Vertex labels are indexed in order of first appearance.  Duplicate
        pairs (in either orientation) are collapsed.
        """
        index: dict[str, int] = {}
        labels: list[str] = []
        und: set[tuple[int, int]] = set()
        for a, b in pairs:
            ia = _intern(index, labels, str(a))
            ib = _intern(index, labels, str(b))
            if ia == ib:
                raise ValidationError("Loop", f"edge ({a}, {a})")
            und.add((min(ia, ib), max(ia, ib)))
        return cls._assemble(tuple(labels), sorted(und), name, validate)

    @classmethod
    def _assemble(cls, labels, und, name, validate):
        n = len(labels)
        directed = sorted([(a, b) for a, b in und] + [(b, a) for a, b in und])
        eid = {pair: k for k, pair in enumerate(directed)}
        edges = tuple(DirectedEdge(k, a, b, eid[(b, a)])
                      for k, (a, b) in enumerate(directed))
        nbrs = [[] for _ in range(n)]
        outs = [[] for _ in range(n)]
        ins = [[] for _ in range(n)]
        for e in edges:
            nbrs[e.initial].append(e.terminal)
            outs[e.initial].append(e.id)
            ins[e.terminal].append(e.id)
        g = cls(labels=labels,
                undirected_edges=tuple(und),
                edges=edges,
                neighbors=tuple(tuple(sorted(v)) for v in nbrs),
                out_edges=tuple(tuple(v) for v in outs),
                in_edges=tuple(tuple(sorted(v)) for v in ins),
                name=name)
        if validate:
            g.validate()
        return g

    def validate(self) -> None:
        if not self.labels:
            raise ValidationError("Empty", "graph has no vertices")
        for a, b in self.undirected_edges:
            if a == b:
                raise ValidationError("Loop", f"edge ({self.labels[a]}, {self.labels[a]})")
        dead = [self.labels[x] for x in range(self.n_vertices) if self.degree(x) < 2]
        if dead:
            raise ValidationError("DeadEnd", "vertices with fewer than two neighbors: "
                                  + ", ".join(dead))
        seen = self._component(0)
        if len(seen) != self.n_vertices:
            missing = [self.labels[x] for x in range(self.n_vertices) if x not in seen]
            raise ValidationError("Disconnected", "unreachable from "
                                  f"{self.labels[0]}: " + ", ".join(missing))

    # basic accessors -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        """Number of undirected edges."""
        return len(self.undirected_edges)

    @property
    def n_directed(self) -> int:
        return len(self.edges)

    def vertex(self, v) -> int:
        """Resolve a vertex given by label (str) or by index (int)."""
        if isinstance(v, str):
            try:
                return self.labels.index(v)
            except ValueError:
                raise UnknownVertex(v) from None
        if isinstance(v, int) and 0 <= v < self.n_vertices:
            return v
        raise UnknownVertex(v)

    def degree(self, x) -> int:
        return len(self.neighbors[self.vertex(x)])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.neighbors]

    def successors(self, e: int) -> tuple[int, ...]:
        """Non-backtracking successors of directed edge ``e``."""
        edge = self.edges[e]
        return tuple(f for f in self.out_edges[edge.terminal] if f != edge.reversal)

    def predecessors(self, e: int) -> tuple[int, ...]:
        edge = self.edges[e]
        return tuple(f for f in self.in_edges[edge.initial] if f != edge.reversal)

    def edge_id(self, a, b) -> int:
        ia, ib = self.vertex(a), self.vertex(b)
        for e in self.out_edges[ia]:
            if self.edges[e].terminal == ib:
                return e
        raise KeyError((a, b))

    def _component(self, start: int) -> set[int]:
        seen = {start}
        todo = [start]
        while todo:
            x = todo.pop()
            for y in self.neighbors[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def to_text(self) -> str:
        return "".join(f"{self.labels[a]} {self.labels[b]}\n"
                       for a, b in self.undirected_edges)

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<Graph{tag} |V|={self.n_vertices} |E|={self.n_edges}>"


def _intern(index, labels, key):
    if key not in index:
        index[key] = len(labels)
        labels.append(key)
    return index[key]


def parse_graph(text: str, name: str = "", validate: bool = True) -> Graph:
    """Parse an edge-list document.

    One undirected edge per line given as two whitespace-separated vertex
    tokens.  Blank lines and lines starting with ``#`` are skipped.
    """
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(lineno, raw, f"expected 2 vertex tokens, got {len(tokens)}")
        pairs.append((tokens[0], tokens[1]))
    return Graph.from_edges(pairs, name=name, validate=validate)


def load_graph(path, validate: bool = True) -> Graph:
    from pathlib import Path

    p = Path(path)
    return parse_graph(p.read_text(encoding="utf-8"), name=p.stem, validate=validate)


# invariants -----------------------------------------------------------

def branching(g: Graph, x) -> int:
    """Number of non-backtracking continuations through ``x``: degree - 1."""
    return g.degree(x) - 1


def distance(g: Graph, x, y) -> int:
    src, dst = g.vertex(x), g.vertex(y)
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            return dist[v]
        for w in g.neighbors[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    raise ValidationError("Disconnected", f"no path from {x} to {y}")


def cyclomatic_number(g: Graph) -> int:
    return g.n_edges - g.n_vertices + 1


def two_coloring(g: Graph) -> list[int] | None:
    """Proper 2-coloring by breadth-first search, or None for odd cycles."""
    color = [-1] * g.n_vertices
    for root in range(g.n_vertices):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.neighbors[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


# small named graphs -----------------------------------------------------

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(((i, (i + 1) % n) for i in range(n)), name=f"C{n}")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(combinations(range(n), 2), name=f"K{n}")


def complete_bipartite_graph(m: int, n: int) -> Graph:
    return Graph.from_edges(((i, m + j) for i in range(m) for j in range(n)),
                            name=f"K{m},{n}")


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(outer + spokes + inner, name="Petersen")

