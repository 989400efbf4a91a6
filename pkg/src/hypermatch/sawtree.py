"""Self-avoiding-walk trees for hypergraph independent sets.

The walk tree of a hypergraph H rooted at a vertex v has one node per
self-avoiding walk starting at v.  A walk alternates vertices and hyperedges,
never repeats a vertex or hyperedge, and additionally never enters a vertex
that is incident to a hyperedge used earlier.  Children of a node are grouped
by the hyperedge extending the walk; each group becomes one hyperedge of the
tree, so the tree is again an independent-set instance.

Walks that could close a cycle are trimmed by an ordering rule: each vertex
ranks its incident hyperedges, and a node is deleted (with its subtree) when
some extension of its walk returns to an earlier vertex through a hyperedge
that the revisited vertex ranks higher than the hyperedge the walk originally
left it by.  With that rule the occupation probability of the root of the
tree equals the marginal of v in H, under any valid pinning lifted to every
walk copy of a pinned vertex.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Union

from .hypergraph import (
    ActivityVector,
    Hypergraph,
    Number,
    Pinning,
    as_activities,
    validate_pinning,
)

DEFAULT_MAX_NODES = 5_000_000


class ExpansionLimitError(RuntimeError):
    """Raised when a walk-tree traversal exceeds its node budget."""


@dataclass(frozen=True)
class EdgeOrdering:
    """Per-vertex ranking of incident hyperedges, best rank first."""

    ranks: tuple[tuple[int, ...], ...]

    @classmethod
    def input_order(cls, H: Hypergraph) -> "EdgeOrdering":
        """Rank incident hyperedges by their position in the input edge list."""
        return cls(tuple(H.incident(v) for v in range(H.n)))

    @classmethod
    def shuffled(cls, H: Hypergraph, seed: int) -> "EdgeOrdering":
        rng = random.Random(seed)
        ranks = []
        for v in range(H.n):
            edges = list(H.incident(v))
            rng.shuffle(edges)
            ranks.append(tuple(edges))
        return cls(tuple(ranks))

    def validate(self, H: Hypergraph) -> None:
        if len(self.ranks) != H.n:
            raise ValueError("ordering does not cover every vertex")
        for v in range(H.n):
            if sorted(self.ranks[v]) != sorted(H.incident(v)):
                raise ValueError(
                    f"ordering at vertex {v} is not a permutation of its incident edges"
                )

    def rank_maps(self) -> tuple[dict[int, int], ...]:
        return tuple(
            {e: pos for pos, e in enumerate(edges)} for edges in self.ranks
        )


class _WalkContext:
    """Mutable walk state shared by the materializer and the evaluator.

    Tracks the vertices and hyperedges already on the walk plus, for every
    visited vertex, the hyperedge the walk left it by (needed by the
    cycle-trimming rule).
    """

    __slots__ = ("H", "ordering", "rank_of", "visited", "used", "leave")

    def __init__(self, H: Hypergraph, ordering: EdgeOrdering) -> None:
        self.H = H
        self.ordering = ordering
        self.rank_of = ordering.rank_maps()
        self.visited: set[int] = set()
        self.used: set[int] = set()
        self.leave: dict[int, int] = {}

    def push(self, v: int, e: int) -> None:
        self.visited.add(v)
        self.used.add(e)
        self.leave[v] = e

    def pop(self, v: int, e: int) -> None:
        self.visited.remove(v)
        self.used.remove(e)
        del self.leave[v]

    def _trimmed(self, end: int, e_new: int, u: int) -> bool:
        # The extended walk ends at u.  It is trimmed if some unused
        # hyperedge f through u reaches back to a walk vertex x and f
        # outranks, at x, the hyperedge the walk left x by.
        H = self.H
        for f in H.incident(u):
            if f == e_new or f in self.used:
                continue
            rank_at = None
            for x in H.edges[f]:
                if x == u:
                    continue
                if x == end:
                    e_start = e_new
                elif x in self.visited:
                    e_start = self.leave[x]
                else:
                    continue
                rank_at = self.rank_of[x]
                if rank_at[f] < rank_at[e_start]:
                    return True
        return False

    def child_groups(self, end: int) -> list[tuple[int, list[int]]]:
        """Valid walk extensions from ``end``, grouped per hyperedge.

        Groups follow the rank order of ``end``; vertices inside a group are
        sorted.  Groups whose every extension is trimmed are dropped.
        """
        groups: list[tuple[int, list[int]]] = []
        for e in self.ordering.ranks[end]:
            if e in self.used:
                continue
            kids = []
            for u in self.H.edges[e]:
                if u == end or u in self.visited:
                    continue
                if any(f in self.used for f in self.H.incident(u)):
                    continue
                if self._trimmed(end, e, u):
                    continue
                kids.append(u)
            if kids:
                groups.append((e, sorted(kids)))
        return groups

    def has_children(self, end: int) -> bool:
        for e in self.ordering.ranks[end]:
            if e in self.used:
                continue
            for u in self.H.edges[e]:
                if u == end or u in self.visited:
                    continue
                if any(f in self.used for f in self.H.incident(u)):
                    continue
                if self._trimmed(end, e, u):
                    continue
                return True
        return False


@dataclass(frozen=True)
class SawNode:
    """One walk-tree node: end vertex, lifted pinning, activity, child groups.

    ``child_groups`` holds (hyperedge index, children) pairs in rank order of
    the end vertex; groups emptied by trimming do not appear.
    """

    vertex: int
    pinned: bool | None
    activity: Number
    child_groups: tuple[tuple[int, tuple["SawNode", ...]], ...]

    def size(self) -> int:
        return 1 + sum(c.size() for _, kids in self.child_groups for c in kids)

    def depth(self) -> int:
        depths = [c.depth() for _, kids in self.child_groups for c in kids]
        return 1 + max(depths) if depths else 0


def build_saw_tree(
    H: Hypergraph,
    v: int,
    ordering: EdgeOrdering | None = None,
    pinning: Pinning | None = None,
    depth_limit: int | None = None,
    activities: Union[Number, ActivityVector] = 1,
    max_nodes: int = 1_000_000,
) -> SawNode:
    """Materialize the walk tree rooted at v, optionally truncated at a depth.

    The tree with ``depth_limit`` t is node-for-node the depth-t prefix of
    the unlimited tree.  The structure does not depend on the pinning; pinned
    states only label nodes.
    """
    if not 0 <= v < H.n:
        raise ValueError(f"root vertex {v} out of range for n={H.n}")
    pin = dict(pinning or {})
    validate_pinning(H, pin)
    acts = as_activities(activities)
    ordering = ordering or EdgeOrdering.input_order(H)
    ordering.validate(H)
    ctx = _WalkContext(H, ordering)
    count = 0

    def build(u: int, depth: int) -> SawNode:
        nonlocal count
        count += 1
        if count > max_nodes:
            raise ExpansionLimitError(
                f"walk tree exceeds {max_nodes} nodes; raise max_nodes or truncate"
            )
        groups: list[tuple[int, tuple[SawNode, ...]]] = []
        if depth_limit is None or depth < depth_limit:
            for e, kids in ctx.child_groups(u):
                ctx.push(u, e)
                built = tuple(build(w, depth + 1) for w in kids)
                ctx.pop(u, e)
                groups.append((e, built))
        return SawNode(
            vertex=u,
            pinned=pin.get(u),
            activity=acts(u),
            child_groups=tuple(groups),
        )

    return build(v, 0)


def dump_saw_tree(root: SawNode) -> str:
    """Render a walk tree as indented text, one node per line."""
    out: list[str] = []

    def emit(node: SawNode, group: str, depth: int) -> None:
        if node.pinned is None:
            mark = "-"
        else:
            mark = "O" if node.pinned else "U"
        out.append(f"{'  ' * depth}vertex={node.vertex} pinned={mark} group={group}")
        for e, kids in node.child_groups:
            for kid in kids:
                emit(kid, str(e), depth + 1)

    emit(root, "-", 0)
    return "\n".join(out) + "\n"


def evaluate_root_ratio(
    H: Hypergraph,
    v: int,
    pinning: Pinning | None = None,
    activities: Union[Number, ActivityVector] = 1,
    ordering: EdgeOrdering | None = None,
    depth: int | None = None,
    frontier: float = 0.0,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> Number:
    """Occupation ratio R of the walk-tree root by lazy depth-first recursion.

    Each node contributes R = lambda_v * prod_groups 1/(1 + sum of child
    ratios); a pinned occupied node is +inf, a pinned unoccupied node is 0,
    and a group containing an infinite child forces the factor to zero.  When
    ``depth`` is given, unexpanded nodes at that depth take the ``frontier``
    value (0.0 or math.inf) while natural leaves still evaluate exactly.
    """
    if not 0 <= v < H.n:
        raise ValueError(f"vertex {v} out of range for n={H.n}")
    pin = dict(pinning or {})
    validate_pinning(H, pin)
    acts = as_activities(activities)
    ordering = ordering or EdgeOrdering.input_order(H)
    ctx = _WalkContext(H, ordering)
    count = 0

    def ratio(u: int, dep: int) -> Number:
        nonlocal count
        count += 1
        if count > max_nodes:
            raise ExpansionLimitError(
                f"walk-tree evaluation exceeds {max_nodes} nodes"
            )
        state = pin.get(u)
        if state is not None:
            return math.inf if state else 0
        lam = acts(u)
        if lam == 0:
            return 0
        if depth is not None and dep >= depth:
            if ctx.has_children(u):
                return frontier
            return lam
        value: Number = lam
        for e, kids in ctx.child_groups(u):
            ctx.push(u, e)
            total: Number = 0
            infinite = False
            for w in kids:
                r = ratio(w, dep + 1)
                if r == math.inf:
                    infinite = True
                    break
                total = total + r
            ctx.pop(u, e)
            if infinite:
                return 0
            value = value / (1 + total)
        return value

    return ratio(v, 0)


def saw_marginal_exact(
    H: Hypergraph,
    v: int,
    pinning: Pinning | None = None,
    activities: Union[Number, ActivityVector] = 1,
    ordering: EdgeOrdering | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> Number:
    """Exact marginal occupation probability of v via full walk-tree expansion.

    Equals the marginal computed by exhaustive enumeration for every
    hypergraph, pinning, and activity vector.  The expansion is finite
    because walks are self-avoiding, but it can be exponentially large;
    ``max_nodes`` guards against runaway instances.
    """
    r = evaluate_root_ratio(
        H, v, pinning=pinning, activities=activities, ordering=ordering,
        depth=None, max_nodes=max_nodes,
    )
    if r == math.inf:
        return 1.0
    return r / (1 + r)
