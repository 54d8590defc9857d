"""
Joins, products and their Betti numbers
=======================================

Build a few small complexes, join them, triangulate their products, and
compare the Z/2 Betti numbers with the formulas that predict them.
"""

from concurrence_join import (
    betti,
    boundary_of_simplex,
    join,
    kunneth_join_prediction,
    kunneth_product_prediction,
    product_complex,
    tag,
)
from concurrence_join.simplicial import SimplicialComplex

# A circle is the boundary of a triangle. Joins need disjoint vertex sets,
# so each copy gets its own namespace.
circle = boundary_of_simplex("abc")
K = tag(circle, "K")
L = tag(circle, "L")

# %%
# The join of two circles is a 3-sphere: 9 tetrahedra on 6 vertices.
W = join(K, L)
print("join f-vector:", W.f_vector())
print("join betti:", betti(W).values)
print("predicted reduced betti:", kunneth_join_prediction(betti(K), betti(L)).values)

# %%
# The product of two circles is a torus. The staircase triangulation uses
# pairs of vertices; 18 triangles in all.
P = product_complex(circle, boundary_of_simplex("xyz"))
print("torus f-vector:", P.f_vector())
print("torus betti:", betti(P).values)
print("predicted:", kunneth_product_prediction(betti(circle), betti(circle)).values)

# %%
# Two points joined with two points: a square, i.e. a circle again.
two = SimplicialComplex([[0], [1]])
square = join(tag(two, "a"), tag(two, "b"))
print("square edges:", sorted(square.simplices_of_dim(1)))
print("square betti:", betti(square).values)
