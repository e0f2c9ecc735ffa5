"""
Poisson transforms on the covering tree
=======================================

Unwrapping a graph from a base vertex gives a tree whose nodes are the
non-backtracking paths.  Boundary data is a measure on depth-R cylinders;
integrating z^<x, w> against it gives a function on the tree that solves the
vertex eigen-equation, and the edge version solves the edge equation.
"""
from fractions import Fraction

from graphqcc import build_tree_ball, complete_graph, poisson_transform
from graphqcc.tree import (edge_equation_failures, edge_poisson_transform,
                           factorization_check, random_measure, uniform_measure,
                           vertex_equation_failures)

k4 = complete_graph(4)
ball = build_tree_ball(k4, 0, 4)
print(ball, "cylinders:", len(ball.boundary))

z = Fraction(1, 2)
mu = uniform_measure(ball)
vals = poisson_transform(ball, z, mu)
x = ball.nodes_at_depth(1)[0]
print("value at a depth-1 node:", vals[x], "=", (z + 2 / z) / 3)

mu = random_measure(ball, seed=3)
for z in (Fraction(2), Fraction(1, 2), Fraction(-2)):
    v = poisson_transform(ball, z, mu)
    e = edge_poisson_transform(ball, z, mu)
    print(f"z = {z}: vertex failures {len(vertex_equation_failures(ball, z, v))}, "
          f"edge failures {len(edge_equation_failures(ball, z, e))}, "
          f"factorization {'ok' if factorization_check(ball, z, mu).passed else 'broken'}")
