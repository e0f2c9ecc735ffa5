"""
Spectrum of the non-backtracking edge operator
==============================================

The edge Laplacian sums an edge function over the edges that can follow
without turning back.  Its characteristic polynomial has integer
coefficients, so we compute it exactly and factor it over the rationals.
"""
from graphqcc import complete_graph, cycle_graph, petersen_graph
from graphqcc.operators import edge_charpoly, edge_spectral_factors

# A cycle: every directed edge has exactly one successor, so the operator is
# a permutation made of two n-cycles.
c6 = cycle_graph(6)
for fac in edge_spectral_factors(c6):
    print("C6 factor", [str(c) for c in fac.coeffs], "x", fac.multiplicity)

# K4 is 3-regular; apart from +-1 the eigenvalues solve z^2 - lambda z + 2 = 0
# for each adjacency eigenvalue lambda (3 and -1).
k4 = complete_graph(4)
print("K4 charpoly degree", len(edge_charpoly(k4)) - 1)
for fac in edge_spectral_factors(k4):
    roots = ", ".join(f"{r.real:+.4f}{r.imag:+.4f}j" for r in fac.roots)
    print(f"  {[str(c) for c in fac.coeffs]} x{fac.multiplicity}: {roots}")

# Petersen: the multiplicities of +1 and -1 are topological (see demo 03)
pet = petersen_graph()
mult = {fac.rational_root: fac.multiplicity for fac in edge_spectral_factors(pet)
        if fac.rational_root is not None}
print("Petersen rational eigenvalues:", {str(k): v for k, v in mult.items()})
