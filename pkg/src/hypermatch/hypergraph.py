"""Core hypergraph model: validation, duality, and the exact enumeration oracle.

Vertices are integers 0..n-1.  A hyperedge is a set of distinct vertices; an
independent set is a vertex subset meeting every hyperedge in at most one
vertex.  With per-vertex activities lambda_v an independent set I carries
weight prod_{v in I} lambda_v, and the partition function sums the weights of
all independent sets.  Matchings (sets of pairwise disjoint hyperedges) are
exactly the independent sets of the dual hypergraph with identical weights,
so one oracle serves both models.

The text format understood by :func:`parse_hypergraph` is line based:
comment lines start with '#', the first data line is "n m", and the next m
data lines list the sorted vertex indices of one hyperedge each (an empty
line inside the edge block denotes an empty hyperedge).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, float, Fraction]

OCCUPIED = True
UNOCCUPIED = False


class Hypergraph:
    """Immutable hypergraph with validated hyperedges.

    Hyperedges of size 0 or 1 are permitted; they never constrain an
    independent set, but keeping them makes duality a true involution (an
    isolated vertex dualizes to an empty hyperedge).  Distinct hyperedges may
    overlap in any number of vertices and duplicate hyperedges are allowed.
    """

    __slots__ = ("n", "edges", "_incident")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = []
        for index, edge in enumerate(edges):
            members = tuple(sorted(int(v) for v in edge))
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(
                        f"edge {index}: vertex {v} out of range for n={n}"
                    )
            for a, b in zip(members, members[1:]):
                if a == b:
                    raise ValueError(f"edge {index}: repeated vertex {a}")
            normalized.append(members)
        self.n = n
        self.edges = tuple(normalized)
        incident: list[list[int]] = [[] for _ in range(n)]
        for ei, members in enumerate(self.edges):
            for v in members:
                incident[v].append(ei)
        self._incident = tuple(tuple(es) for es in incident)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        """Indices of the hyperedges containing vertex v."""
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={list(self.edges)!r})"


@dataclass(frozen=True)
class HypergraphStats:
    """Degree and size bounds together with the shifted parameters.

    d is the maximum vertex degree minus one and k the maximum hyperedge
    size minus one, both clamped at zero for degenerate inputs.  These are
    the parameters entering every uniqueness-threshold formula.
    """

    max_degree: int
    max_edge_size: int
    d: int
    k: int


def validate_and_stats(H: Hypergraph) -> HypergraphStats:
    """Compute degree/size bounds of a (constructor-validated) hypergraph."""
    max_degree = max((H.degree(v) for v in range(H.n)), default=0)
    max_edge_size = max((len(e) for e in H.edges), default=0)
    return HypergraphStats(
        max_degree=max_degree,
        max_edge_size=max_edge_size,
        d=max(0, max_degree - 1),
        k=max(0, max_edge_size - 1),
    )


def dualize(H: Hypergraph) -> Hypergraph:
    """Exchange the roles of vertices and hyperedges.

    The dual has one vertex per hyperedge of H and one hyperedge per vertex
    of H, namely the set of hyperedges incident to that vertex.  Independent
    sets of the dual are exactly the matchings of H.  Applying dualize twice
    returns a hypergraph equal to H.
    """
    return Hypergraph(H.m, [H.incident(v) for v in range(H.n)])


Pinning = Mapping[int, bool]


def validate_pinning(H: Hypergraph, pinning: Pinning) -> None:
    """Reject pinnings that reference bad vertices or occupy two vertices of an edge."""
    for v in pinning:
        if not 0 <= v < H.n:
            raise ValueError(f"pinned vertex {v} out of range for n={H.n}")
    for ei, members in enumerate(H.edges):
        occupied = [v for v in members if pinning.get(v) is OCCUPIED]
        if len(occupied) > 1:
            raise ValueError(
                f"invalid pinning: edge {ei} contains two occupied vertices "
                f"{occupied[0]} and {occupied[1]}"
            )


def is_valid_pinning(H: Hypergraph, pinning: Pinning) -> bool:
    try:
        validate_pinning(H, pinning)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class ActivityVector:
    """Per-vertex activities: a positive default plus nonnegative overrides.

    An override of zero removes the vertex from the model; it is equivalent
    to pinning the vertex unoccupied.
    """

    default: Number = 1
    overrides: Mapping[int, Number] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.default > 0:
            raise ValueError("default activity must be positive")
        for v, lam in self.overrides.items():
            if lam < 0:
                raise ValueError(f"activity override for vertex {v} is negative")

    def __call__(self, v: int) -> Number:
        return self.overrides.get(v, self.default)


def as_activities(value: Union[Number, ActivityVector]) -> ActivityVector:
    if isinstance(value, ActivityVector):
        return value
    return ActivityVector(default=value)


@dataclass(frozen=True)
class ExactResult:
    """Partition function plus the marginal occupation probability of each vertex."""

    Z: Number
    marginals: tuple[Number, ...]


def exact_partition(
    H: Hypergraph,
    activities: Union[Number, ActivityVector] = 1,
    pinning: Pinning | None = None,
    max_vertices: int = 24,
) -> ExactResult:
    """Brute-force partition function and marginals by backtracking enumeration.

    Sums prod_{v in I} lambda_v over all independent sets consistent with the
    pinning (occupied vertices forced in, unoccupied forced out; the weights
    of pinned occupied vertices are included).  Arithmetic follows the
    activity values: integer or Fraction activities give an exact rational
    result, floats give double precision.

    The enumeration is exponential in the number of constrained free
    vertices, so instances above ``max_vertices`` vertices are rejected;
    raise the cap explicitly to go bigger.
    """
    acts = as_activities(activities)
    pin = dict(pinning or {})
    validate_pinning(H, pin)
    if H.n > max_vertices:
        raise ValueError(
            f"instance has {H.n} vertices, above the enumeration guard "
            f"({max_vertices}); pass max_vertices to override"
        )

    occ_count = [0] * H.m
    pinned_weight: Number = 1
    for v, state in pin.items():
        if state is OCCUPIED or state is True:
            pinned_weight = pinned_weight * acts(v)
            for e in H.incident(v):
                occ_count[e] += 1

    free = [v for v in range(H.n) if v not in pin]
    isolated = [v for v in free if H.degree(v) == 0]
    core = [v for v in free if H.degree(v) > 0]

    total: Number = 0
    core_marg = {v: 0 for v in core}
    chosen: list[int] = []

    def recurse(i: int, weight: Number) -> None:
        nonlocal total
        if i == len(core):
            total += weight
            for v in chosen:
                core_marg[v] += weight
            return
        v = core[i]
        recurse(i + 1, weight)
        if all(occ_count[e] == 0 for e in H.incident(v)):
            for e in H.incident(v):
                occ_count[e] += 1
            chosen.append(v)
            recurse(i + 1, weight * acts(v))
            chosen.pop()
            for e in H.incident(v):
                occ_count[e] -= 1

    recurse(0, 1)

    Z: Number = pinned_weight * total
    for v in isolated:
        Z = Z * (1 + acts(v))

    marginals: list[Number] = []
    for v in range(H.n):
        if v in pin:
            marginals.append(1 if pin[v] else 0)
        elif H.degree(v) == 0:
            lam = acts(v)
            marginals.append(lam / (1 + lam))
        else:
            marginals.append(core_marg[v] / total)
    return ExactResult(Z=Z, marginals=tuple(marginals))


def gadget_reduce(G: Hypergraph, k: int) -> tuple[Hypergraph, int]:
    """Blow a graph up into a hypergraph with the same partition function.

    Every vertex v becomes t = floor((k+1)/2) copies and every graph edge
    {u, v} becomes one hyperedge over all copies of u and v, so an occupied
    vertex corresponds to t interchangeable occupied copies and
    Z_H(lambda) = Z_G(t * lambda).  Copies of a degree-zero vertex are
    additionally grouped by a private hyperedge; without it they would be
    mutually unconstrained and the identity above would fail on graphs with
    isolated vertices.

    Returns the hypergraph together with t.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    for ei, members in enumerate(G.edges):
        if len(members) != 2:
            raise ValueError(f"edge {ei}: gadget input must be a graph (size-2 edges)")
    t = (k + 1) // 2
    copies = lambda v: range(v * t, v * t + t)  # noqa: E731 - tiny local alias
    edges: list[tuple[int, ...]] = []
    for u, v in G.edges:
        edges.append(tuple(list(copies(u)) + list(copies(v))))
    if t >= 2:
        for v in range(G.n):
            if G.degree(v) == 0:
                edges.append(tuple(copies(v)))
    return Hypergraph(G.n * t, edges), t


def _data_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].rstrip()
        lines.append(stripped)
    return lines


def parse_hypergraph(text: str) -> Hypergraph:
    """Read the line-based text format described in the module docstring."""
    lines = _data_lines(text)
    header = None
    pos = 0
    for pos, line in enumerate(lines):  # noqa: B007 - pos reused below
        if line.strip():
            header = line.split()
            break
    if header is None:
        raise ValueError("missing 'n m' header line")
    if len(header) != 2:
        raise ValueError(f"malformed header {' '.join(header)!r}, expected 'n m'")
    n, m = int(header[0]), int(header[1])
    edges = []
    cursor = pos + 1
    while len(edges) < m:
        if cursor >= len(lines):
            raise ValueError(f"expected {m} edge lines, found {len(edges)}")
        edges.append(tuple(int(tok) for tok in lines[cursor].split()))
        cursor += 1
    return Hypergraph(n, edges)


def format_hypergraph(H: Hypergraph) -> str:
    out = [f"{H.n} {H.m}"]
    for members in H.edges:
        out.append(" ".join(str(v) for v in members))
    return "\n".join(out) + "\n"


def parse_pinning(text: str) -> dict[int, bool]:
    """Read pinning lines of the form 'v 0' (unoccupied) or 'v 1' (occupied)."""
    pin: dict[int, bool] = {}
    for lineno, line in enumerate(_data_lines(text), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("0", "1"):
            raise ValueError(f"pinning line {lineno}: expected 'vertex 0|1', got {line!r}")
        pin[int(parts[0])] = parts[1] == "1"
    return pin


def format_pinning(pinning: Pinning) -> str:
    out = [f"{v} {1 if state else 0}" for v, state in sorted(pinning.items())]
    return "\n".join(out) + ("\n" if out else "")
