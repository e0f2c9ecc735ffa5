"""Test corpus: small named graphs plus seeded random graphs."""
from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

from .graph import (Graph, complete_bipartite_graph, complete_graph, cycle_graph,
                    cyclomatic_number, load_graph, petersen_graph)

# (vertices, target cyclomatic number, seed) for the bundled random graphs
RANDOM_SPECS = [(6, 2, 11), (7, 3, 12), (8, 3, 13), (7, 4, 14), (9, 2, 15)]


def random_graph(n: int, cyclomatic: int, seed: int) -> Graph:
    """Random connected graph with min degree >= 2.

    A random spanning tree is grown first; then random new edges are added
    (edges at degree-1 vertices first) until every vertex has degree >= 2
    and the cyclomatic number reaches ``cyclomatic``.  The result may
    exceed ``cyclomatic`` when the tree has many leaves.
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges: set[tuple[int, int]] = set()
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        edges.add((min(a, b), max(a, b)))
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1

    def add(a, b):
        edges.add((min(a, b), max(a, b)))
        deg[a] += 1
        deg[b] += 1

    while min(deg) < 2 or len(edges) - n + 1 < cyclomatic:
        leaves = [v for v in range(n) if deg[v] < 2]
        a = rng.choice(leaves) if leaves else rng.randrange(n)
        options = [b for b in range(n) if b != a and (min(a, b), max(a, b)) not in edges]
        if not options:
            if len(edges) == n * (n - 1) // 2:
                raise ValueError("cyclomatic target unreachable")
            continue
        add(a, rng.choice(options))
    return Graph.from_edges(sorted(edges), name=f"random_n{n}_s{seed}")


def named_graphs() -> list[Graph]:
    graphs = [cycle_graph(n) for n in range(3, 9)]
    graphs += [complete_graph(4), complete_graph(5), complete_bipartite_graph(3, 3),
               petersen_graph()]
    return graphs


def corpus_graphs() -> list[Graph]:
    """The bundled corpus, built in memory."""
    return named_graphs() + [random_graph(n, c, s) for n, c, s in RANDOM_SPECS]


def corpus_dir() -> Path:
    return Path(str(resources.files("graphqcc") / "data" / "corpus"))


def manifest_path() -> Path:
    return corpus_dir() / "manifest.txt"


def read_manifest(path) -> list[Path]:
    """Graph paths listed in a manifest, resolved relative to the manifest."""
    path = Path(path)
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            p = Path(line)
            out.append(p if p.is_absolute() else path.parent / p)
    return out


def load_corpus() -> list[Graph]:
    return [load_graph(p) for p in read_manifest(manifest_path())]


def file_name(g: Graph) -> str:
    return g.name.replace(",", "_") + ".txt"


def write_corpus(directory) -> Path:
    """Write every corpus graph and a manifest into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for g in corpus_graphs():
        header = f"# {g.name}: |V|={g.n_vertices} |E|={g.n_edges} c={cyclomatic_number(g)}\n"
        (directory / file_name(g)).write_text(header + g.to_text(), encoding="utf-8")
        names.append(file_name(g))
    manifest = directory / "manifest.txt"
    manifest.write_text("".join(n + "\n" for n in names), encoding="utf-8")
    return manifest
