"""
Persistence of a two-level filtration
=====================================

The rank of the map on homology induced by an inclusion M -> W equals the
number of classes born in M that never die once the rest of W is added.
"""

from concurrence_join import (
    FiltrationOrder,
    SimplicialComplex,
    betti,
    boundary_of_simplex,
    full_simplex,
    inclusion_rank,
    join,
    persistence,
    tag,
)

S3 = join(tag(boundary_of_simplex("abc"), "a"), tag(boundary_of_simplex("abc"), "b"))

# %%
# Put 8 of the 9 tetrahedra at level 1 and the last one at level 2. The
# punctured sphere is contractible, so the 3-class is only born at level 2.
last = max(S3.facets)
M = SimplicialComplex(f for f in S3.facets if f != last)
print("betti(M) =", betti(M).values)
levels = {s: (2 if s == last else 1) for s in S3.simplices}
for iv in persistence(FiltrationOrder.from_levels(levels)):
    print(iv)

# %%
# Inclusion ranks: the punctured sphere maps nothing into H_3(S3).
print("rank H(M) -> H(S3):", inclusion_rank(M, S3).ranks)

# %%
# A circle inside its cone dies: the cone is contractible.
circle = tag(boundary_of_simplex("xyz"), "c")
cone = join(circle, full_simplex([("d", "apex")]))
print("rank H(circle) -> H(cone):", inclusion_rank(circle, cone).ranks)
