"""
The self-avoiding-walk tree and certified marginal intervals
============================================================

The occupation probability of a vertex equals the root marginal of a tree
built from self-avoiding walks.  Truncating that tree at depth t and running
the recursion twice, once with each extreme boundary, brackets the true
marginal in a certified interval that shrinks as t grows.
"""

from hypermatch import (
    Hypergraph,
    build_saw_tree,
    dump_saw_tree,
    exact_partition,
    saw_marginal_exact,
    truncated_marginal,
)

tri = Hypergraph(3, [(0, 1), (1, 2), (0, 2)])

# the walk tree rooted at vertex 0; one branch is trimmed by the
# edge-ordering rule, which is what keeps the tree finite and exact
print(dump_saw_tree(build_saw_tree(tri, 0)))

# its root marginal equals the true occupation probability
p_tree = saw_marginal_exact(tri, 0, activities=1)
p_true = exact_partition(tri, activities=1).marginals[0]
print("tree marginal =", p_tree, " exact =", p_true)

# a larger instance where the tree is far from the original graph
H = Hypergraph(8, [(0, 1, 2), (2, 3, 4), (4, 5, 6), (6, 7, 0), (1, 5)])
lam = 1.5

exact = exact_partition(H, activities=lam).marginals[0]
print(f"\nvertex 0 at lam={lam}: exact p = {exact:.12f}")
print("depth   lower           upper           width")
for depth in range(0, 9):
    iv = truncated_marginal(H, 0, activities=lam, depth=depth)
    lo, hi = iv.probability_bounds()
    assert lo - 1e-15 <= exact <= hi + 1e-15
    print(f"{depth:5d}   {lo:.12f}  {hi:.12f}  {hi - lo:.3e}")

# every walk consumes a fresh vertex and a fresh edge, so by depth
# min(n, m+1) the frontier is unreachable and the interval collapses
iv = truncated_marginal(H, 0, activities=lam, depth=min(H.n, H.m + 1))
lo, hi = iv.probability_bounds()
print("collapsed width:", hi - lo)
