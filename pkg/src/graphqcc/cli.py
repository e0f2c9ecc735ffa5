"""Command-line front end.

Every subcommand writes a ``qcc-report/1`` JSON document (to stdout or
``--out``) and exits 0 iff every recorded check passed.  Usage errors exit
with status 2, failed checks and computation errors with status 1.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import corpus as corpus_mod
from .graph import (GraphError, ParseError, ValidationError, cyclomatic_number,
                    is_bipartite, load_graph)
from .linalg import DEFAULT_TOL, format_scalar, parse_scalar
from .operators import (ZeroParameter, branching_convention_diagnostic,
                        edge_laplacian_matrix, edge_spectral_factors,
                        vertex_equalizer_matrix)
from .paths import DEFAULT_DEPTH_CAP, DepthCapExceeded, enumerate_paths, transfer_matrix
from .qcc import (Check, ExceptionalParameter, _jsonable, check_all_eigenvalues,
                  check_dimension_formulas, check_exceptional, check_generic, vertex_side)
from .report import Report
from .suite import invariant_suite, random_rationals, zeta_checks
from .tree import (BallCapExceeded, DEFAULT_BALL_CAP, IndeterminateWithinRadius,
                   build_tree_ball, edge_equation_failures, edge_poisson_transform,
                   factorization_check, parse_measure, poisson_transform,
                   vertex_equation_failures)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    graph: str | None = None
    manifest: str | None = None
    mode: str = "auto"
    tol: float = DEFAULT_TOL
    seed: int = 0
    out: str | None = None
    csv: str | None = None
    matrix_out: str | None = None
    z: str | None = None
    u: list[str] = field(default_factory=list)
    edge: bool = True
    depth: int = 1
    depth_cap: int = DEFAULT_DEPTH_CAP
    count_only: bool = False
    base: str | None = None
    radius: int = 3
    ball_cap: int = DEFAULT_BALL_CAP
    measure: str = "uniform"
    check: str = "vertex"
    all_eigenvalues: bool = False
    formulas: bool = False

    def spectral_parameter(self):
        if self.z is None:
            raise UsageError("--z is required")
        try:
            z = parse_scalar(self.z)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse --z {self.z!r}: {exc}") from None
        if self.mode == "numeric":
            z = complex(z)
        elif self.mode == "exact" and isinstance(z, complex):
            raise UsageError("--exact needs a rational --z")
        if z == 0:
            raise UsageError("--z must be nonzero")
        return z


# ----------------------------------------------------------------------
# subcommands

def _validate(cfg: RunConfig, rep: Report) -> None:
    g = load_graph(cfg.graph)
    info = {"vertices": g.n_vertices, "edges": g.n_edges, "directed_edges": g.n_directed,
            "cyclomatic": cyclomatic_number(g), "bipartite": is_bipartite(g),
            "min_degree": min(g.degrees())}
    rep.data["graph"] = info
    rep.add(Check("valid graph", "valid", "valid", True, "exact", {}), g.name)


def _spectrum(cfg: RunConfig, rep: Report) -> None:
    g = load_graph(cfg.graph)
    if not cfg.edge:
        z = cfg.spectral_parameter()
        basis = vertex_side(g, z, cfg.tol)
        rep.data["vertex_equalizer"] = {"z": z, "mode": basis.mode,
                                        "dimension": basis.dimension,
                                        "basis": [list(v) for v in basis.vectors]}
        rep.add(Check("vertex equalizer computed", basis.dimension, basis.dimension, True,
                      basis.mode, {"z": z}), g.name)
        if cfg.matrix_out:
            m = vertex_equalizer_matrix(g, z)
            _write_json(cfg.matrix_out, m.to_json())
        return
    factors = edge_spectral_factors(g)
    eig = []
    for fac in factors:
        for r in fac.roots:
            eig.append({"value": fac.rational_root if fac.rational_root is not None else r,
                        "multiplicity": fac.multiplicity})
    rep.data["edge_spectrum"] = eig
    rep.data["factors"] = [{"coefficients": list(f.coeffs), "multiplicity": f.multiplicity}
                           for f in factors if f.coeffs]
    total = sum(e["multiplicity"] for e in eig)
    rep.add(Check("eigenvalue count", total, g.n_directed, total == g.n_directed,
                  "exact", {}), g.name)
    tr = sum(complex(e["value"]) * e["multiplicity"] for e in eig)
    rep.add(Check("trace equals zero", tr, 0, abs(tr) < 1e-8 * g.n_directed, "numeric", {}),
            g.name)
    if cfg.matrix_out:
        _write_json(cfg.matrix_out, edge_laplacian_matrix(g).to_json())


def _paths(cfg: RunConfig, rep: Report) -> None:
    g = load_graph(cfg.graph)
    space = enumerate_paths(g, cfg.depth, cfg.depth_cap)
    rep.data["count"] = space.dimension
    if cfg.depth >= 1:
        prev = enumerate_paths(g, cfg.depth - 1, cfg.depth_cap)
        if cfg.depth == 1:
            expected = g.n_directed
        else:
            expected = sum(len(g.successors(p[-1])) for p in prev.basis)
        rep.add(Check("path count recursion", space.dimension, expected,
                      space.dimension == expected, "exact", {"depth": cfg.depth}), g.name)
    if not cfg.count_only:
        rep.data["paths"] = [[f"{g.labels[g.edges[e].initial]}->{g.labels[g.edges[e].terminal]}"
                              for e in p] for p in space.basis]
    if cfg.matrix_out and cfg.depth >= 1:
        _write_json(cfg.matrix_out, transfer_matrix(g, cfg.depth, cfg.depth_cap).to_json())


def _tree(cfg: RunConfig, rep: Report) -> None:
    g = load_graph(cfg.graph)
    z = cfg.spectral_parameter()
    base = cfg.base if cfg.base is not None else g.labels[0]
    ball = build_tree_ball(g, base, cfg.radius, cfg.ball_cap)
    try:
        mu = parse_measure(ball, cfg.measure)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.data["ball"] = {"base": base, "radius": cfg.radius, "nodes": len(ball.nodes),
                        "cylinders": len(ball.boundary)}
    inputs = {"base": base, "radius": cfg.radius, "z": z, "measure": cfg.measure}
    if cfg.check == "vertex":
        values = poisson_transform(ball, z, mu)
        bad = vertex_equation_failures(ball, z, values)
        rep.data["poisson_at_base"] = values[0]
        rep.add(Check("tree vertex eigen-equation", len(bad), 0, not bad, _mode(z), inputs),
                g.name)
    elif cfg.check == "edge":
        values = edge_poisson_transform(ball, z, mu)
        bad = edge_equation_failures(ball, z, values)
        rep.add(Check("tree edge eigen-equation", len(bad), 0, not bad, _mode(z), inputs),
                g.name)
    else:
        res = factorization_check(ball, z, mu)
        rep.add(Check("tree factorization",
                      len(res.vertex_mismatches) + len(res.edge_mismatches), 0, res.passed,
                      _mode(z), dict(inputs, nodes=res.vertex_checked,
                                     edges=res.edge_checked)), g.name)


def _mode(z) -> str:
    return "numeric" if isinstance(z, complex) else "exact"


def _qcc(cfg: RunConfig, rep: Report) -> None:
    g = load_graph(cfg.graph)
    run_all = cfg.all_eigenvalues or (cfg.z is None and not cfg.formulas)
    if cfg.z is not None:
        z = cfg.spectral_parameter()
        if z * z != 1:
            for c in check_generic(g, z, cfg.tol).checks:
                rep.add(c, g.name)
        for c in check_exceptional(g, z, cfg.tol).checks:
            rep.add(c, g.name)
    if run_all:
        reps = check_all_eigenvalues(g, cfg.tol)
        rep.data["generic"] = [{"z": r.z, "mode": r.mode, "dimensions": r.dimensions,
                                "isomorphism": r.isomorphism} for r in reps]
        for r in reps:
            for c in r.checks:
                rep.add(c, g.name)
        for z in (Fraction(1), Fraction(-1)):
            for c in check_exceptional(g, z, cfg.tol).checks:
                rep.add(c, g.name)
    if cfg.formulas or run_all:
        for c in check_dimension_formulas(g):
            rep.add(c, g.name)


def _zeta(cfg: RunConfig, rep: Report) -> None:
    import random

    g = load_graph(cfg.graph)
    if cfg.u:
        try:
            samples = [Fraction(u) for u in cfg.u]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --u: {exc}") from None
    else:
        samples = random_rationals(random.Random(cfg.seed), 5)
    for c in zeta_checks(g, samples):
        rep.add(c, g.name)
    rep.data["branching_convention"] = branching_convention_diagnostic(g)


def _corpus(cfg: RunConfig, rep: Report) -> None:
    manifest = Path(cfg.manifest) if cfg.manifest else corpus_mod.manifest_path()
    paths = corpus_mod.read_manifest(manifest)
    rep.data["graphs"] = [str(p.name) for p in paths]
    for p in paths:
        try:
            g = load_graph(p)
            for c in invariant_suite(g, cfg.seed, cfg.tol):
                rep.add(c, g.name)
        except Exception as exc:  # recorded per graph, run continues
            rep.add_failure("graph suite", p.stem, _describe(exc))


def _describe(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        return f"ValidationError::{exc.axiom}: {exc.detail}"
    return f"{type(exc).__name__}: {exc}"


COMMANDS = {"validate": _validate, "spectrum": _spectrum, "paths": _paths, "tree": _tree,
            "qcc-check": _qcc, "zeta": _zeta, "corpus": _corpus}


def run(cfg: RunConfig) -> tuple[Report, int]:
    """Execute ``cfg``; return the report and the process exit code."""
    rep = Report(cfg.subcommand, asdict(cfg))
    try:
        COMMANDS[cfg.subcommand](cfg, rep)
    except (UsageError, ZeroParameter, ExceptionalParameter) as exc:
        rep.add_failure("usage", None, exc)
        return rep, 2
    except (ValidationError, ParseError) as exc:
        rep.add_failure("validate", Path(cfg.graph).stem if cfg.graph else None,
                        _describe(exc))
        return rep, 1
    except (GraphError, DepthCapExceeded, BallCapExceeded, IndeterminateWithinRadius,
            OSError, ValueError, ArithmeticError) as exc:
        rep.add_failure("computation", None, exc)
        return rep, 1
    return rep, 0 if rep.passed else 1


def _write_json(path, doc) -> None:
    import json
    Path(path).write_text(json.dumps(_jsonable(doc), indent=2) + "\n", encoding="utf-8")


# ----------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--numeric", dest="mode", action="store_const", const="numeric")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="relative singular-value cutoff (default %(default)g)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--csv", help="also write a CSV summary of the checks")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="graphqcc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate a graph")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="edge spectrum or vertex equalizer")
    p.add_argument("--graph", required=True)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--edge", dest="edge", action="store_true", default=True)
    kind.add_argument("--vertex", dest="edge", action="store_false")
    p.add_argument("--z")
    p.add_argument("--matrix-out")

    p = sub.add_parser("paths", parents=[common], help="non-backtracking paths")
    p.add_argument("--graph", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--matrix-out")

    p = sub.add_parser("tree", parents=[common], help="Poisson transform checks")
    p.add_argument("--graph", required=True)
    p.add_argument("--base")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--ball-cap", type=int, default=DEFAULT_BALL_CAP)
    p.add_argument("--z", required=True)
    p.add_argument("--measure", default="uniform")
    p.add_argument("--check", choices=["vertex", "edge", "factorization"], default="vertex")

    p = sub.add_parser("qcc-check", parents=[common], help="correspondence checks")
    p.add_argument("--graph", required=True)
    p.add_argument("--z")
    p.add_argument("--all-eigenvalues", action="store_true")
    p.add_argument("--formulas", action="store_true")

    p = sub.add_parser("zeta", parents=[common], help="zeta determinant identity")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", action="append", default=[])

    p = sub.add_parser("corpus", parents=[common], help="invariant suite over a manifest")
    p.add_argument("--manifest")
    return parser


def parse_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(args).items() if v is not None}
    values.setdefault("mode", "auto")
    return RunConfig(**values)


def main(argv=None) -> int:
    cfg = parse_config(argv)
    if cfg.subcommand == "tree" and cfg.radius < 2:
        build_parser().error("--radius must be at least 2")
    rep, code = run(cfg)
    text = rep.dumps()
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if cfg.csv:
        Path(cfg.csv).write_text(rep.to_csv(), encoding="utf-8")
    if code:
        failed = [r for r in rep.records if not r["pass"]]
        if failed:
            print(f"graphqcc: {len(failed)} check(s) failed; first: {failed[0]['name']}: "
                  f"{failed[0]['observed']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
