"""
Eigenvalues +1 and -1 count cycles
==================================

At z = +1 and z = -1 the vertex side breaks down, but the transfer and edge
eigenspaces still agree.  Their dimensions depend only on the cyclomatic
number c (edges to delete to kill every cycle) and on bipartiteness:

    dim{B = 1}  = c            (2 if c = 1)
    dim{B = -1} = c if bipartite, c - 1 otherwise   (2 for an even cycle)
"""
from graphqcc import (check_dimension_formulas, complete_bipartite_graph, complete_graph,
                      cycle_graph, cyclomatic_number, is_bipartite, petersen_graph)

for g in (cycle_graph(5), cycle_graph(6), complete_graph(4), complete_bipartite_graph(3, 3),
          petersen_graph()):
    plus, minus, _ = check_dimension_formulas(g)
    print(f"{g.name:9s} c={cyclomatic_number(g)} bipartite={is_bipartite(g)!s:5s} "
          f"dim(+1)={plus.observed} dim(-1)={minus.observed} "
          f"{'ok' if plus.passed and minus.passed else 'MISMATCH'}")
