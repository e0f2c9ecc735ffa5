"""
Transfer, edge and vertex eigenspaces
=====================================

At a spectral parameter z outside {0, 1, -1} three spaces have the same
dimension: eigenfunctions of the transfer operator on locally constant
functions of rays, eigenfunctions of the edge Laplacian, and vertex
functions with  sum_{y~x} f(y) = (z + q_x/z) f(x).  Summing over outgoing
edges maps the edge side to the vertex side; the inverse is

    f(e) = (z g(tau e) - g(iota e)) / (z^2 - 1).
"""
from fractions import Fraction

from graphqcc import check_generic, complete_bipartite_graph, complete_graph
from graphqcc.qcc import edge_side, map_edge_to_vertex, map_vertex_to_edge

k4 = complete_graph(4)
z = Fraction(2)
rep = check_generic(k4, z)
print("K4, z = 2:", rep.dimensions, rep.isomorphism)

# the edge eigenvector sums to a constant vertex function...
f = edge_side(k4, z).vectors[0]
s = map_edge_to_vertex(k4, z, f)
print("edge -> vertex:", [str(v) for v in s])
# ...and the constant function comes back as 1/3 on every edge
print("vertex -> edge:", sorted({str(v) for v in map_vertex_to_edge(k4, z, [1] * 4)}))

# K3,3 at z = -2: -2 + 2/(-2) = -3 is the bottom adjacency eigenvalue
k33 = complete_bipartite_graph(3, 3)
print("K3,3, z = -2:", check_generic(k33, Fraction(-2)).dimensions)

# a parameter that is not an eigenvalue gives three zero-dimensional spaces
print("K4, z = 5:", check_generic(k4, Fraction(5)).dimensions)

# nonreal eigenvalues are checked numerically (tolerance 1e-8)
zc = complex(-0.5, 7 ** 0.5 / 2)
print("K4, z = root of z^2+z+2:", check_generic(k4, zc).dimensions)
