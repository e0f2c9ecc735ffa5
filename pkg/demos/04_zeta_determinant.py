"""
The determinant identity as a convention check
==============================================

det(I - u B) = (1 - u^2)^(|E| - |V|) det(I - u A + u^2 Q)

holds exactly when Q is the diagonal of q_x = degree - 1.  Taking q_x to be
the degree breaks it, which is why the library uses degree - 1.
"""
from fractions import Fraction

from graphqcc import complete_graph, cycle_graph, petersen_graph
from graphqcc.operators import (branching_convention_diagnostic, vertex_zeta_side,
                                zeta_determinant)

u = Fraction(1, 3)
for g in (cycle_graph(3), complete_graph(4), petersen_graph()):
    lhs = zeta_determinant(g, u)
    print(f"{g.name:9s} det(I - uB) = {lhs}   vertex side = {vertex_zeta_side(g, u)}")
    print("          which reading of q_x works:", branching_convention_diagnostic(g))
