"""Per-graph invariant suite, shared by the CLI and the acceptance tests."""
from __future__ import annotations

import random
from fractions import Fraction

from .graph import Graph
from .linalg import DEFAULT_TOL, charpoly
from .operators import (branching_convention_diagnostic, vertex_zeta_side,
                        zeta_determinant)
from .paths import transfer_matrix
from .qcc import (Check, check_all_eigenvalues, check_dimension_formulas,
                  check_exceptional)
from .tree import (build_tree_ball, edge_equation_failures, edge_poisson_transform,
                   factorization_check, poisson_transform, random_measure,
                   vertex_equation_failures)

TREE_PARAMETERS = (Fraction(2), Fraction(1, 2), Fraction(-2))


def random_rationals(rng: random.Random, k: int, nonzero: bool = False,
                     exclude=()) -> list[Fraction]:
    out = []
    while len(out) < k:
        u = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if (nonzero and u == 0) or u in exclude or u in out:
            continue
        out.append(u)
    return out


def zeta_checks(g: Graph, samples) -> list[Check]:
    checks = []
    for u in samples:
        lhs = zeta_determinant(g, u)
        rhs = vertex_zeta_side(g, u)
        checks.append(Check("zeta determinant identity", lhs, rhs, lhs == rhs, "exact",
                            {"u": u}))
    return checks


def convention_check(g: Graph) -> Check:
    diag = branching_convention_diagnostic(g)
    return Check("q_x = degree-1 satisfies zeta identity", diag, {"degree-1": True},
                 diag["degree-1"], "exact", {})


def depth_collapse_charpoly(g: Graph, depth: int = 2) -> Check:
    """charpoly(L at depth n) == x^(N_n - N_1) charpoly(L at depth 1)."""
    deep = charpoly(transfer_matrix(g, depth).entries)
    shallow = charpoly(transfer_matrix(g, 1).entries)
    padded = shallow + [Fraction(0)] * (len(deep) - len(shallow))
    return Check(f"charpoly transfer[{depth}] = x^k charpoly transfer[1]",
                 len(deep) - 1, len(shallow) - 1, deep == padded, "exact", {"depth": depth})


def tree_checks(g: Graph, base, radius: int, z, seeds) -> list[Check]:
    """Vertex/edge eigen-equations and factorization for seeded measures."""
    ball = build_tree_ball(g, base, radius)
    vbad = ebad = fbad = 0
    for seed in seeds:
        mu = random_measure(ball, seed)
        vbad += bool(vertex_equation_failures(ball, z, poisson_transform(ball, z, mu)))
        ebad += bool(edge_equation_failures(ball, z, edge_poisson_transform(ball, z, mu)))
        fbad += not factorization_check(ball, z, mu).passed
    inputs = {"base": g.labels[g.vertex(base)], "radius": radius, "z": z,
              "seeds": list(seeds)}
    n = len(seeds)
    return [
        Check("tree vertex eigen-equation", n - vbad, n, vbad == 0, "exact", inputs),
        Check("tree edge eigen-equation", n - ebad, n, ebad == 0, "exact", inputs),
        Check("tree factorization", n - fbad, n, fbad == 0, "exact", inputs),
    ]


def invariant_suite(g: Graph, seed: int = 0, tol: float = DEFAULT_TOL,
                    tree_bases=None, radii=(3,), measures: int = 3) -> list[Check]:
    """Every invariant of the library on one graph."""
    rng = random.Random(seed)
    checks = list(check_dimension_formulas(g))
    for rep in check_all_eigenvalues(g, tol):
        for c in rep.checks:
            c.inputs = dict(c.inputs, side="generic")
        checks.extend(rep.checks)
    for z in [Fraction(1), Fraction(-1)] + random_rationals(rng, 3, nonzero=True):
        checks.extend(check_exceptional(g, z, tol).checks)
    checks.append(depth_collapse_charpoly(g, 2))
    checks.extend(zeta_checks(g, random_rationals(rng, 5)))
    checks.append(convention_check(g))
    bases = [0] if tree_bases is None else tree_bases
    for base in bases:
        for radius in radii:
            for z in TREE_PARAMETERS:
                seeds = [rng.randrange(2 ** 31) for _ in range(measures)]
                checks.extend(tree_checks(g, base, radius, z, seeds))
    return checks
