"""Shared test helpers: an independent enumeration oracle and seeded generators.

The oracle deliberately avoids the library's backtracking enumerator; it
walks all 2^n vertex subsets with bitmasks so the two implementations can
cross-check each other.
"""

import random
from fractions import Fraction

from hypermatch import ActivityVector, Hypergraph


def brute_partition(H, acts=1, pinning=None):
    """Partition function and marginals by direct subset enumeration.

    ``acts`` is a scalar or a callable vertex -> weight.  Returns (Z, marg)
    where marg[v] is the occupation probability of v (exact when the weights
    are Fractions or ints).
    """
    weight_of = acts if callable(acts) else (lambda v: acts)
    pin = dict(pinning or {})
    n = H.n
    edge_masks = [sum(1 << v for v in e) for e in H.edges]
    forced_in = sum(1 << v for v, s in pin.items() if s)
    forced_out = sum(1 << v for v, s in pin.items() if not s)

    Z = 0
    marg_num = [0] * n
    for mask in range(1 << n):
        if mask & forced_out:
            continue
        if (mask & forced_in) != forced_in:
            continue
        if any(bin(mask & em).count("1") > 1 for em in edge_masks):
            continue
        w = 1
        mm = mask
        while mm:
            v = (mm & -mm).bit_length() - 1
            w = w * weight_of(v)
            mm &= mm - 1
        Z = Z + w
        for v in range(n):
            if (mask >> v) & 1:
                marg_num[v] += w
    marg = [num / Z if Z else None for num in marg_num]
    return Z, marg


def brute_matchings(H, acts=1):
    """Weighted matching count: sets of pairwise disjoint hyperedges.

    ``acts`` is a scalar or a callable edge index -> weight.
    """
    weight_of = acts if callable(acts) else (lambda e: acts)
    edge_masks = [sum(1 << v for v in e) for e in H.edges]
    m = H.m
    total = 0
    for mask in range(1 << m):
        used = 0
        ok = True
        w = 1
        for e in range(m):
            if not (mask >> e) & 1:
                continue
            if used & edge_masks[e]:
                ok = False
                break
            used |= edge_masks[e]
            w = w * weight_of(e)
        if ok:
            total = total + w
    return total


def random_hypergraph(rng, n_max=10, m_max=10, n_min=1, size_max=None):
    """Random instance; occasionally emits empty and singleton hyperedges."""
    n = rng.randint(n_min, n_max)
    m = rng.randint(0, m_max)
    edges = []
    for _ in range(m):
        cap = min(size_max, n) if size_max else n
        if rng.random() < 0.05:
            size = 0
        else:
            size = rng.randint(1, max(1, cap))
        edges.append(rng.sample(range(n), size))
    return Hypergraph(n, edges)


def random_bounded_hypergraph(rng, d, k, n_max=10, m_max=8):
    """Random instance with max degree <= d + 1 and edge size <= k + 1."""
    n = rng.randint(2, n_max)
    degree = [0] * n
    edges = []
    for _ in range(rng.randint(0, m_max)):
        avail = [v for v in range(n) if degree[v] <= d]
        if len(avail) < 2:
            break
        size = rng.randint(2, min(k + 1, len(avail)))
        members = rng.sample(avail, size)
        for v in members:
            degree[v] += 1
        edges.append(members)
    return Hypergraph(n, edges)


def random_pinning(rng, H, prob=0.35):
    """Random pinning, valid by greedy construction."""
    pin = {}
    occ_count = [0] * H.m
    verts = list(range(H.n))
    rng.shuffle(verts)
    for v in verts:
        r = rng.random()
        if r < prob / 2:
            if all(occ_count[e] == 0 for e in H.incident(v)):
                pin[v] = True
                for e in H.incident(v):
                    occ_count[e] += 1
            else:
                pin[v] = False
        elif r < prob:
            pin[v] = False
    return pin


def random_fraction_activities(rng, H, num_max=8):
    overrides = {}
    for v in range(H.n):
        if rng.random() < 0.5:
            overrides[v] = Fraction(rng.randint(1, num_max), rng.randint(1, num_max))
    default = Fraction(rng.randint(1, num_max), rng.randint(1, num_max))
    return ActivityVector(default=default, overrides=overrides)


def random_float_activities(rng, H, lam_max=4.0):
    overrides = {}
    for v in range(H.n):
        if rng.random() < 0.4:
            overrides[v] = rng.uniform(0.0, lam_max)
    default = rng.uniform(0.05, lam_max)
    return ActivityVector(default=default, overrides=overrides)


def seeded(seed):
    return random.Random(seed)


# small named instances used across test modules

def triangle():
    return Hypergraph(3, [(0, 1), (1, 2), (0, 2)])


def overlap_pair():
    """Two hyperedges sharing vertices 0 and 1."""
    return Hypergraph(3, [(0, 1), (0, 1, 2)])


def path(n):
    return Hypergraph(n, [(i, i + 1) for i in range(n - 1)])
