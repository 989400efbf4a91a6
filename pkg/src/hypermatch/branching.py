"""Type-transition matrices, reversibility, and the typed configuration model.

A pair of nonnegative integer matrices (D, K) prescribes how vertex types
and hyperedge types interleave on an infinite (d+1)-regular (k+1)-uniform
hypertree: row i of D says how many incidences a type-i vertex has with each
edge type, row j of K says how many slots a type-j edge offers to each
vertex type.  Such a prescription is realizable by a sequence of finite
hypergraphs exactly when the type-projected incidence walk is reversible,
i.e. when positive weights p, q with p_i d_ij = q_j k_ji exist.  This module
decides that exactly (rational arithmetic), builds the finite hypergraphs by
random stub matching, and measures how fast their local neighborhoods
converge to the prescribed hypertree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BranchingMatrices",
    "ReversibilityResult",
    "TypedHypergraph",
    "TypedNeighborhood",
    "validate_branching",
    "signed_matrices",
    "reversibility",
    "stationary_distributions",
    "invariant_marginal_residual",
    "feasible_size",
    "next_feasible_size",
    "generate_typed",
    "tree_neighborhood",
    "neighborhood_key",
    "local_convergence_rate",
    "parse_branching",
    "format_branching",
    "parse_typed_hypergraph",
    "format_typed_hypergraph",
]


def _as_int_matrix(rows: Iterable[Iterable[int]], name: str) -> tuple[tuple[int, ...], ...]:
    out = []
    for r in rows:
        row = tuple(int(x) for x in r)
        if any(x < 0 for x in row):
            raise ValueError(f"{name} entries must be nonnegative integers")
        out.append(row)
    return tuple(out)


@dataclass(frozen=True)
class BranchingMatrices:
    """Vertex-to-edge table D (tau_v x tau_e), edge-to-vertex table K
    (tau_e x tau_v), and the uniformity parameters d, k."""

    D: tuple[tuple[int, ...], ...]
    K: tuple[tuple[int, ...], ...]
    d: int
    k: int

    def __init__(self, D, K, d: int, k: int):
        object.__setattr__(self, "D", _as_int_matrix(D, "D"))
        object.__setattr__(self, "K", _as_int_matrix(K, "K"))
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "k", int(k))

    @property
    def tau_v(self) -> int:
        return len(self.D)

    @property
    def tau_e(self) -> int:
        return len(self.K)

    def support(self) -> list[tuple[int, int]]:
        """Cells (i, j) with d_ij > 0, row-major."""
        return [
            (i, j)
            for i in range(self.tau_v)
            for j in range(self.tau_e)
            if self.D[i][j] > 0
        ]


def validate_branching(B: BranchingMatrices) -> str | None:
    """None if B is a valid type prescription, else the first violation.

    Checks, in order: shapes, row sums (d+1 for D, k+1 for K), the matched
    zero pattern d_ij = 0 iff k_ji = 0, and irreducibility of DK and KD
    (equivalent, given the matched pattern, to connectivity of the
    bipartite type graph).
    """
    if B.d < 1 or B.k < 1:
        return f"parameters d = {B.d}, k = {B.k} must be at least 1"
    tv, te = B.tau_v, B.tau_e
    if tv == 0 or te == 0:
        return "matrices must have at least one row each"
    for i, row in enumerate(B.D):
        if len(row) != te:
            return f"D row {i} has {len(row)} entries, expected tau_e = {te}"
    for j, row in enumerate(B.K):
        if len(row) != tv:
            return f"K row {j} has {len(row)} entries, expected tau_v = {tv}"
    for i, row in enumerate(B.D):
        s = sum(row)
        if s != B.d + 1:
            return f"D row {i} sums to {s}, expected d+1 = {B.d + 1}"
    for j, row in enumerate(B.K):
        s = sum(row)
        if s != B.k + 1:
            return f"K row {j} sums to {s}, expected k+1 = {B.k + 1}"
    for i in range(tv):
        for j in range(te):
            if (B.D[i][j] == 0) != (B.K[j][i] == 0):
                return (
                    f"support mismatch at vertex type {i}, edge type {j}: "
                    f"d = {B.D[i][j]}, k = {B.K[j][i]}"
                )
    # connectivity of the bipartite type graph; rows are nonzero (sums d+1,
    # k+1 >= 2), so connectivity here is exactly irreducibility of DK and KD
    seen_v = {0}
    seen_e: set[int] = set()
    stack: list[tuple[str, int]] = [("v", 0)]
    while stack:
        side, x = stack.pop()
        if side == "v":
            for j in range(te):
                if B.D[x][j] > 0 and j not in seen_e:
                    seen_e.add(j)
                    stack.append(("e", j))
        else:
            for i in range(tv):
                if B.K[x][i] > 0 and i not in seen_v:
                    seen_v.add(i)
                    stack.append(("v", i))
    if len(seen_v) < tv or len(seen_e) < te:
        missing_v = sorted(set(range(tv)) - seen_v)
        missing_e = sorted(set(range(te)) - seen_e)
        return (
            "type graph is not connected (DK reducible): unreachable "
            f"vertex types {missing_v}, edge types {missing_e}"
        )
    return None


def _require_valid(B: BranchingMatrices) -> None:
    report = validate_branching(B)
    if report is not None:
        raise ValueError(f"invalid branching matrices: {report}")


def signed_matrices(d: int, k: int, merge_edge_types: bool = False) -> BranchingMatrices:
    """The two-type prescription where every vertex and edge has one
    like-signed and d (resp. k) opposite-signed incidences:
    D = [[1, d], [d, 1]], K = [[k, 1], [1, k]].

    It fails reversibility whenever d*k > 1.  For k = 1 both edge types
    offer one slot to each sign, so the two edge types are
    indistinguishable; merge_edge_types=True collapses them into one,
    giving a prescription that is reversible again.  Merging any k > 1 is
    an error since the edge rows differ.
    """
    if d < 1 or k < 1:
        raise ValueError("d and k must be at least 1")
    if not merge_edge_types:
        return BranchingMatrices(
            D=[[1, d], [d, 1]], K=[[k, 1], [1, k]], d=d, k=k
        )
    if k != 1:
        raise ValueError("edge types can only be merged when k = 1")
    return BranchingMatrices(D=[[d + 1], [d + 1]], K=[[1, 1]], d=d, k=1)


@dataclass(frozen=True)
class ReversibilityResult:
    """Outcome of the exact detailed-balance solve.

    On success p and q are positive rationals with p_i d_ij = q_j k_ji and
    sum(p) + sum(q) = 1; on failure ``witness`` names a balance equation
    that cannot hold.
    """

    reversible: bool
    p: tuple[Fraction, ...] | None = None
    q: tuple[Fraction, ...] | None = None
    witness: str | None = None


def reversibility(B: BranchingMatrices) -> ReversibilityResult:
    """Decide exactly whether positive p, q solve p_i d_ij = q_j k_ji.

    Ratios are forced along a spanning tree of the support graph and the
    remaining equations are verified; any failure is a genuine obstruction
    since the system fixes all values up to one global scale.
    """
    _require_valid(B)
    tv, te = B.tau_v, B.tau_e
    D, K = B.D, B.K
    # exact rational propagation without Fraction overhead: keep each value
    # as an unreduced integer pair, anchored at p_0 = 1/1
    pn: list[int | None] = [None] * tv
    pd: list[int] = [1] * tv
    qn: list[int | None] = [None] * te
    qd: list[int] = [1] * te
    pn[0] = 1
    stack: list[tuple[str, int]] = [("v", 0)]
    while stack:
        side, x = stack.pop()
        if side == "v":
            drow = D[x]
            for j in range(te):
                if drow[j] > 0 and qn[j] is None:
                    qn[j] = pn[x] * drow[j]
                    qd[j] = pd[x] * K[j][x]
                    stack.append(("e", j))
        else:
            krow = K[x]
            for i in range(tv):
                if krow[i] > 0 and pn[i] is None:
                    pn[i] = qn[x] * krow[i]
                    pd[i] = qd[x] * D[i][x]
                    stack.append(("v", i))
    # validity guarantees connectivity, so everything got a value
    assert all(v is not None for v in pn) and all(v is not None for v in qn)
    for i in range(tv):
        drow = D[i]
        for j in range(te):
            dij = drow[j]
            if dij == 0:
                continue
            # p_i d_ij = q_j k_ji cross-multiplied; denominators are positive
            if pn[i] * dij * qd[j] != qn[j] * K[j][i] * pd[i]:
                lhs = Fraction(pn[i], pd[i]) * dij
                rhs = Fraction(qn[j], qd[j]) * K[j][i]
                return ReversibilityResult(
                    reversible=False,
                    witness=(
                        f"balance fails at vertex type {i}, edge type {j}: "
                        f"p[{i}]*d[{i}][{j}] = {lhs} but "
                        f"q[{j}]*k[{j}][{i}] = {rhs}"
                    ),
                )
    p = [Fraction(pn[i], pd[i]) for i in range(tv)]
    q = [Fraction(qn[j], qd[j]) for j in range(te)]
    total = sum(p) + sum(q)
    p = [x / total for x in p]
    q = [x / total for x in q]
    # summing the balance equations over the support forces this ratio
    assert sum(p) / sum(q) == Fraction(B.k + 1, B.d + 1)
    return ReversibilityResult(reversible=True, p=tuple(p), q=tuple(q))


def stationary_distributions(
    B: BranchingMatrices,
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Separately normalized vertex- and edge-type distributions.

    Both are Perron eigenvectors: p' of DK and q' of KD, eigenvalue
    (d+1)(k+1); verified exactly before returning.
    """
    rev = reversibility(B)
    if not rev.reversible:
        raise ValueError(f"matrices are not reversible: {rev.witness}")
    p, q = rev.p, rev.q
    sp, sq = sum(p), sum(q)
    pn = tuple(x / sp for x in p)
    qn = tuple(x / sq for x in q)
    tv, te = B.tau_v, B.tau_e
    for j in range(te):
        lhs = sum(pn[i] * B.D[i][j] for i in range(tv))
        if lhs != (B.d + 1) * qn[j]:
            raise AssertionError("vertex distribution does not map to edge distribution")
    for i in range(tv):
        lhs = sum(qn[j] * B.K[j][i] for j in range(te))
        if lhs != (B.k + 1) * pn[i]:
            raise AssertionError("edge distribution does not map back to vertex distribution")
    for i in range(tv):
        eig = sum(
            p[a] * B.D[a][j] * B.K[j][i] for a in range(tv) for j in range(te)
        )
        if eig != (B.d + 1) * (B.k + 1) * p[i]:
            raise AssertionError("p is not a Perron eigenvector of DK")
    return pn, qn


def invariant_marginal_residual(
    B: BranchingMatrices, lam: float, p: Sequence[float]
) -> tuple[float, ...]:
    """Residuals of the per-type occupation-marginal consistency system.

    A vector of type marginals p is invariant when every component zeroes
    p_s - lam * (1 - p_s)**(-d) * prod_j (1 - sum_i k_ji p_i)**d_sj.
    """
    _require_valid(B)
    if lam < 0:
        raise ValueError("activity must be nonnegative")
    if len(p) != B.tau_v:
        raise ValueError(f"expected {B.tau_v} marginals, got {len(p)}")
    if any(x < 0 for x in p):
        raise ValueError("marginals must be nonnegative")
    edge_sums = [
        sum(B.K[j][i] * p[i] for i in range(B.tau_v)) for j in range(B.tau_e)
    ]
    for j, s in enumerate(edge_sums):
        if s >= 1:
            raise ValueError(
                f"edge type {j} has occupation mass {s} >= 1; "
                "marginals leave the feasible domain"
            )
    out = []
    for s in range(B.tau_v):
        prod = 1.0
        for j in range(B.tau_e):
            if B.D[s][j]:
                prod *= (1.0 - edge_sums[j]) ** B.D[s][j]
        out.append(p[s] - lam * (1.0 - p[s]) ** (-B.d) * prod)
    return tuple(out)


# ---------------------------------------------------------------------------
# typed hypergraphs and the stub-matching generator


class TypedHypergraph:
    """Hypergraph whose vertices and edges carry types; edges may contain a
    vertex more than once (the stub matching can produce that), so this is a
    separate type from the strict simple-hypergraph used by the counting
    machinery."""

    __slots__ = ("n", "edges", "vertex_types", "edge_types", "_incident")

    def __init__(
        self,
        n: int,
        edges: Sequence[Sequence[int]],
        vertex_types: Sequence[int],
        edge_types: Sequence[int],
    ):
        self.n = int(n)
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        es = []
        for idx, e in enumerate(edges):
            members = tuple(sorted(int(v) for v in e))
            for v in members:
                if not 0 <= v < self.n:
                    raise ValueError(f"edge {idx}: vertex {v} out of range for n={self.n}")
            es.append(members)
        self.edges = tuple(es)
        vt = tuple(int(t) for t in vertex_types)
        et = tuple(int(t) for t in edge_types)
        if len(vt) != self.n:
            raise ValueError("need one type per vertex")
        if len(et) != len(self.edges):
            raise ValueError("need one type per edge")
        if any(t < 0 for t in vt) or any(t < 0 for t in et):
            raise ValueError("types must be nonnegative integers")
        self.vertex_types = vt
        self.edge_types = et
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for ei, e in enumerate(self.edges):
            for v in e:  # one entry per slot, repeats kept
                inc[v].append(ei)
        self._incident = tuple(tuple(xs) for xs in inc)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids holding v, one entry per slot."""
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def __repr__(self) -> str:
        return f"TypedHypergraph(n={self.n}, m={self.m})"


def _ceil_times(fr: Fraction, n: int) -> int:
    return -((-fr.numerator * n) // fr.denominator)


def _type_counts(
    rev: ReversibilityResult, n: int
) -> tuple[list[int], list[int]]:
    nv = [_ceil_times(x, n) for x in rev.p]
    ne = [_ceil_times(x, n) for x in rev.q]
    return nv, ne


def _counts_consistent(B: BranchingMatrices, nv: list[int], ne: list[int]) -> bool:
    return all(
        nv[s] * B.D[s][t] == ne[t] * B.K[t][s] for (s, t) in B.support()
    )


def feasible_size(B: BranchingMatrices, n: int) -> bool:
    """Whether the rounded type counts at size n admit an exact stub matching."""
    rev = reversibility(B)
    if not rev.reversible:
        raise ValueError(f"matrices are not reversible: {rev.witness}")
    if n < 1:
        return False
    nv, ne = _type_counts(rev, n)
    return _counts_consistent(B, nv, ne)


def next_feasible_size(B: BranchingMatrices, n: int) -> int:
    """Smallest feasible size >= n.

    Terminates because any common multiple of the weight denominators makes
    every count land exactly on its rational target, where consistency is
    the detailed-balance identity itself.
    """
    rev = reversibility(B)
    if not rev.reversible:
        raise ValueError(f"matrices are not reversible: {rev.witness}")
    n = max(1, n)
    period = math.lcm(*(x.denominator for x in rev.p + rev.q))
    for cand in range(n, n + period + 1):
        nv, ne = _type_counts(rev, cand)
        if _counts_consistent(B, nv, ne):
            return cand
    raise AssertionError("no feasible size within one full period")


def generate_typed(B: BranchingMatrices, n: int, seed: int = 0) -> TypedHypergraph:
    """Sample the typed configuration model at size n.

    Creates ceil(p_s n) vertices of type s and ceil(q_t n) edges of type t,
    then matches vertex stubs to edge slots with one uniform permutation per
    support cell, taken from numpy's default_rng(seed) in row-major (s, t)
    order.  Every type-s vertex ends with exactly d_st incidences into
    type-t edges and every type-t edge with exactly k_ts slots of type s;
    a vertex may land in the same edge twice.
    """
    rev = reversibility(B)
    if not rev.reversible:
        raise ValueError(f"matrices are not reversible: {rev.witness}")
    if n < 1:
        raise ValueError("n must be at least 1")
    nv, ne = _type_counts(rev, n)
    if not _counts_consistent(B, nv, ne):
        nxt = next_feasible_size(B, n)
        raise ValueError(
            f"n = {n} rounds to inconsistent type counts; "
            f"next feasible n is {nxt}"
        )
    voff = [0] * (B.tau_v + 1)
    for s in range(B.tau_v):
        voff[s + 1] = voff[s] + nv[s]
    eoff = [0] * (B.tau_e + 1)
    for t in range(B.tau_e):
        eoff[t + 1] = eoff[t] + ne[t]
    total_v = voff[-1]
    total_e = eoff[-1]
    members: list[list[int]] = [[] for _ in range(total_e)]
    rng = np.random.default_rng(seed)
    for s in range(B.tau_v):
        for t in range(B.tau_e):
            if B.D[s][t] == 0:
                continue
            stubs = nv[s] * B.D[s][t]
            perm = rng.permutation(stubs)
            v_ids = voff[s] + (np.arange(stubs) % nv[s])
            e_ids = eoff[t] + (perm % ne[t])
            for v, e in zip(v_ids.tolist(), e_ids.tolist()):
                members[e].append(v)
    vertex_types = [s for s in range(B.tau_v) for _ in range(nv[s])]
    edge_types = [t for t in range(B.tau_e) for _ in range(ne[t])]
    return TypedHypergraph(total_v, members, vertex_types, edge_types)


# ---------------------------------------------------------------------------
# typed tree neighborhoods and local convergence


@dataclass(frozen=True)
class TypedNeighborhood:
    """Canonical form of the radius-r view of the prescribed hypertree.

    ``key`` is a nested (type, sorted children) tuple; two rooted typed
    trees are isomorphic exactly when their keys are equal.
    """

    root_type: int
    radius: int
    key: tuple
    n_vertices: int
    n_edges: int


def tree_neighborhood(B: BranchingMatrices, root_type: int, radius: int) -> TypedNeighborhood:
    """Deterministic radius-r expansion of the hypertree around a root type.

    A vertex reached through an edge of type j spends one of its d_ij slots
    on it and opens the rest; an edge entered from a type-i vertex offers
    its remaining k_ji - 1 slots of type i plus all other rows of K.
    """
    _require_valid(B)
    if not 0 <= root_type < B.tau_v:
        raise ValueError(f"root type {root_type} out of range")
    if radius < 0:
        raise ValueError("radius must be nonnegative")

    sizes: dict[tuple, tuple[int, int]] = {}
    memo_v: dict[tuple[int, int | None, int], tuple] = {}
    memo_e: dict[tuple[int, int, int], tuple] = {}

    def vert(i: int, entered: int | None, remaining: int) -> tuple:
        state = (i, entered, remaining)
        if state in memo_v:
            return memo_v[state]
        if remaining == 0:
            key = (i, ())
            sizes.setdefault(key, (1, 0))
            memo_v[state] = key
            return key
        ekeys = []
        nv_total, ne_total = 1, 0
        for j in range(B.tau_e):
            count = B.D[i][j] - (1 if j == entered else 0)
            if count <= 0:
                continue
            ek = edge(j, i, remaining)
            evn, een = sizes[ek]
            for _ in range(count):
                ekeys.append(ek)
            nv_total += count * evn
            ne_total += count * een
        key = (i, tuple(sorted(ekeys)))
        sizes[key] = (nv_total, ne_total)
        memo_v[state] = key
        return key

    def edge(j: int, entered_v: int, remaining: int) -> tuple:
        state = (j, entered_v, remaining)
        if state in memo_e:
            return memo_e[state]
        ckeys = []
        nv_total, ne_total = 0, 1
        for i in range(B.tau_v):
            count = B.K[j][i] - (1 if i == entered_v else 0)
            if count <= 0:
                continue
            ck = vert(i, j, remaining - 1)
            cvn, cen = sizes[ck]
            for _ in range(count):
                ckeys.append(ck)
            nv_total += count * cvn
            ne_total += count * cen
        key = (j, tuple(sorted(ckeys)))
        sizes[key] = (nv_total, ne_total)
        memo_e[state] = key
        return key

    root_key = vert(root_type, None, radius)
    nv, ne = sizes[root_key]
    return TypedNeighborhood(
        root_type=root_type, radius=radius, key=root_key,
        n_vertices=nv, n_edges=ne,
    )


class _NotTree(Exception):
    pass


def neighborhood_key(H: TypedHypergraph, v: int, radius: int) -> tuple | None:
    """Canonical key of the radius-r view around v, or None if that view is
    not a hypertree (any revisited vertex or edge, including a doubled slot,
    disqualifies it).

    The view contains the edges opened from vertices within distance
    radius-1; edges touching only boundary vertices belong to larger radii.
    """
    if not 0 <= v < H.n:
        raise ValueError(f"vertex {v} out of range")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    visited_v = {v}
    visited_e: set[int] = set()

    def vert(u: int, entered: int | None, remaining: int) -> tuple:
        if remaining == 0:
            return (H.vertex_types[u], ())
        slots = list(H.incident(u))
        if entered is not None:
            slots.remove(entered)
        ekeys = []
        for e in slots:
            if e in visited_e:
                raise _NotTree
            visited_e.add(e)
            rest = list(H.edges[e])
            rest.remove(u)
            ckeys = []
            for w in rest:
                if w in visited_v:
                    raise _NotTree
                visited_v.add(w)
                ckeys.append(vert(w, e, remaining - 1))
            ekeys.append((H.edge_types[e], tuple(sorted(ckeys))))
        return (H.vertex_types[u], tuple(sorted(ekeys)))

    try:
        return vert(v, None, radius)
    except _NotTree:
        return None


def local_convergence_rate(
    H: TypedHypergraph,
    B: BranchingMatrices,
    radius: int,
    samples: int = 200,
    seed: int = 0,
) -> dict[int, float]:
    """Per-type fraction of sampled vertices whose radius-r view matches the
    prescribed hypertree exactly (type-preserving isomorphism).

    Samples up to ``samples`` vertices per type without replacement from
    numpy's default_rng(seed), one draw per type in type order.
    """
    _require_valid(B)
    if samples < 1:
        raise ValueError("samples must be positive")
    if H.n == 0:
        raise ValueError("hypergraph has no vertices")
    if max(H.vertex_types, default=0) >= B.tau_v:
        raise ValueError("hypergraph vertex types exceed the matrix types")
    if max(H.edge_types, default=0) >= B.tau_e:
        raise ValueError("hypergraph edge types exceed the matrix types")
    by_type: list[list[int]] = [[] for _ in range(B.tau_v)]
    for u, t in enumerate(H.vertex_types):
        by_type[t].append(u)
    rng = np.random.default_rng(seed)
    out: dict[int, float] = {}
    for t in range(B.tau_v):
        members = by_type[t]
        if not members:
            continue
        template = tree_neighborhood(B, t, radius).key
        count = min(samples, len(members))
        picked = rng.choice(len(members), size=count, replace=False)
        hits = sum(
            1
            for idx in picked.tolist()
            if neighborhood_key(H, members[idx], radius) == template
        )
        out[t] = hits / count
    return out


# ---------------------------------------------------------------------------
# text formats


def _data_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_branching(text: str) -> BranchingMatrices:
    """Read the matrix file format: header "tau_v tau_e d k", then the rows
    of D, then the rows of K."""
    lines = _data_lines(text)
    if not lines:
        raise ValueError("empty branching-matrix file")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError('header must be "tau_v tau_e d k"')
    tv, te, d, k = (int(x) for x in head)
    if tv < 1 or te < 1:
        raise ValueError("type counts must be positive")
    if len(lines) != 1 + tv + te:
        raise ValueError(
            f"expected {tv} D rows and {te} K rows, got {len(lines) - 1} rows"
        )
    D = []
    for i in range(tv):
        row = [int(x) for x in lines[1 + i].split()]
        if len(row) != te:
            raise ValueError(f"D row {i} must have {te} entries")
        D.append(row)
    K = []
    for j in range(te):
        row = [int(x) for x in lines[1 + tv + j].split()]
        if len(row) != tv:
            raise ValueError(f"K row {j} must have {tv} entries")
        K.append(row)
    return BranchingMatrices(D=D, K=K, d=d, k=k)


def format_branching(B: BranchingMatrices) -> str:
    lines = [f"{B.tau_v} {B.tau_e} {B.d} {B.k}"]
    for row in B.D:
        lines.append(" ".join(str(x) for x in row))
    for row in B.K:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_typed_hypergraph(text: str) -> TypedHypergraph:
    """Read the typed format: header "n m", then n lines "<vertex> t=<type>",
    then m lines "<v1> <v2> ... t=<type>" (member lists may repeat a vertex)."""
    lines = _data_lines(text)
    if not lines:
        raise ValueError("empty typed-hypergraph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError('header must be "n m"')
    n, m = int(head[0]), int(head[1])
    if len(lines) != 1 + n + m:
        raise ValueError(f"expected {n} vertex lines and {m} edge lines")

    def split_typed(line: str, what: str) -> tuple[list[int], int]:
        toks = line.split()
        if not toks or not toks[-1].startswith("t="):
            raise ValueError(f"{what} line must end with t=<type>: {line!r}")
        return [int(x) for x in toks[:-1]], int(toks[-1][2:])

    vertex_types = [0] * n
    seen = [False] * n
    for i in range(n):
        ids, t = split_typed(lines[1 + i], "vertex")
        if len(ids) != 1:
            raise ValueError(f"vertex line must name one vertex: {lines[1 + i]!r}")
        v = ids[0]
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range")
        if seen[v]:
            raise ValueError(f"vertex {v} typed twice")
        seen[v] = True
        vertex_types[v] = t
    edges = []
    edge_types = []
    for j in range(m):
        ids, t = split_typed(lines[1 + n + j], "edge")
        edges.append(ids)
        edge_types.append(t)
    return TypedHypergraph(n, edges, vertex_types, edge_types)


def format_typed_hypergraph(H: TypedHypergraph) -> str:
    lines = [f"{H.n} {H.m}"]
    for v in range(H.n):
        lines.append(f"{v} t={H.vertex_types[v]}")
    for e, members in enumerate(H.edges):
        body = " ".join(str(v) for v in members)
        lines.append(f"{body} t={H.edge_types[e]}" if body else f"t={H.edge_types[e]}")
    return "\n".join(lines) + "\n"
