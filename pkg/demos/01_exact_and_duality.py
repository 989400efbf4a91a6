"""
Exact counting, duality, and the vertex-splitting gadget
========================================================

Weighted independent sets of a small hypergraph, counted exactly, and two
structural identities: matchings are independent sets of the dual, and
splitting every vertex of a graph into t copies rescales the activity.
"""

from fractions import Fraction

from hypermatch import (
    Hypergraph,
    dualize,
    exact_partition,
    format_hypergraph,
    gadget_reduce,
)

# a triangle: three vertices, three pairwise edges
tri = Hypergraph(3, [(0, 1), (1, 2), (0, 2)])

# at activity 1 the partition function just counts independent sets;
# the triangle has the empty set plus three singletons
res = exact_partition(tri, activities=1)
print("triangle Z(1) =", res.Z)
print("occupation probabilities:", res.marginals)

# rational activities stay rational all the way through
res = exact_partition(tri, activities=Fraction(1, 2))
print("triangle Z(1/2) =", res.Z)

# duality: hyperedges of H become vertices of H*, and a matching of H
# (pairwise disjoint hyperedges) is exactly an independent set of H*
H = Hypergraph(5, [(0, 1, 2), (2, 3), (3, 4), (1, 4)])
dual = dualize(H)
print("\ndual of a 5-vertex hypergraph:")
print(format_hypergraph(dual), end="")
print("matchings of H =", exact_partition(dual, activities=1).Z)

# the dual of the dual is the original again
assert dualize(dual).edges == H.edges

# gadget: replace each vertex of a graph by t = (k+1)//2 copies and widen
# every edge accordingly; the result is (k+1)-uniform-capped and satisfies
# Z_out(lam) = Z_in(t*lam) exactly
G = Hypergraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
for k in (2, 3, 5):
    Hk, t = gadget_reduce(G, k)
    lam = Fraction(2, 3)
    lhs = exact_partition(Hk, activities=lam).Z
    rhs = exact_partition(G, activities=t * lam).Z
    print(f"k={k}: t={t}, Z_gadget={lhs} == Z_scaled={rhs}")
    assert lhs == rhs
