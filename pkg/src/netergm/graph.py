"""Immutable directed graphs and node-subset selection.

The graph type is deliberately small: a node count plus a frozen edge set,
with a cached dense boolean adjacency matrix for the numerical layers.
Graphs here are simple (no loops, no parallel edges) and node identity is a
plain integer index; mapping external ids to indices is the ingest layer's
job.
"""

from __future__ import annotations

import warnings
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, GraphIndexError, InvalidDyadError, ValidationError

__all__ = [
    "DirectedGraph",
    "NodeSubset",
    "build_graph",
    "largest_component",
    "activity_subset",
    "induced_subgraph",
]


@dataclass(frozen=True)
class DirectedGraph:
    """A simple directed graph on nodes ``0..node_count-1``.

    Parameters
    ----------
    node_count : int
        Number of nodes. May be zero for the degenerate empty graph that
        falls out of filtering every event away.
    edges : frozenset of (int, int)
        Ordered pairs (sender, receiver), loop-free, indices in range.
    """

    node_count: int
    edges: frozenset

    def __post_init__(self):
        if self.node_count < 0:
            raise GraphIndexError(f"node_count must be >= 0, got {self.node_count}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for i, j in self.edges:
            if i == j:
                raise InvalidDyadError(f"loop edge ({i}, {j}) is not allowed")
            if not (0 <= i < self.node_count and 0 <= j < self.node_count):
                raise GraphIndexError(
                    f"edge ({i}, {j}) outside node range 0..{self.node_count - 1}"
                )

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix; ``adjacency[i, j]`` is tie i -> j."""
        a = np.zeros((self.node_count, self.node_count), dtype=bool)
        if self.edges:
            idx = np.array(sorted(self.edges), dtype=np.int64)
            a[idx[:, 0], idx[:, 1]] = True
        a.setflags(write=False)
        return a

    @classmethod
    def from_adjacency(cls, a: np.ndarray) -> "DirectedGraph":
        a = np.asarray(a, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"adjacency must be square, got shape {a.shape}")
        ii, jj = np.nonzero(a)
        keep = ii != jj
        return cls(a.shape[0], frozenset(zip(ii[keep].tolist(), jj[keep].tolist())))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    @cached_property
    def out_degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1).astype(np.int64)
        d.setflags(write=False)
        return d

    @cached_property
    def in_degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=0).astype(np.int64)
        d.setflags(write=False)
        return d

    @cached_property
    def total_degrees(self) -> np.ndarray:
        d = self.out_degrees + self.in_degrees
        d.setflags(write=False)
        return d

    def with_dyad(self, i: int, j: int, present: bool) -> "DirectedGraph":
        """Copy of this graph with tie (i, j) forced present or absent."""
        if i == j:
            raise InvalidDyadError(f"dyad ({i}, {j}) is a loop")
        if not (0 <= i < self.node_count and 0 <= j < self.node_count):
            raise GraphIndexError(f"dyad ({i}, {j}) outside node range")
        if present:
            return DirectedGraph(self.node_count, self.edges | {(i, j)})
        return DirectedGraph(self.node_count, self.edges - {(i, j)})


@dataclass(frozen=True)
class NodeSubset:
    """A selection of nodes from a parent graph, kept in ascending order."""

    parent_size: int
    members: tuple

    def __post_init__(self):
        m = tuple(self.members)
        object.__setattr__(self, "members", m)
        if any(not (0 <= v < self.parent_size) for v in m):
            raise GraphIndexError("subset member outside parent node range")
        if len(set(m)) != len(m):
            raise ValidationError("subset members must be unique")
        if list(m) != sorted(m):
            raise ValidationError("subset members must be sorted ascending")

    @cached_property
    def index_map(self) -> dict:
        """Parent index -> position in the subset (a bijection onto 0..k-1)."""
        return {old: new for new, old in enumerate(self.members)}

    def __len__(self) -> int:
        return len(self.members)


def build_graph(node_count: int, pairs: Iterable) -> DirectedGraph:
    """Build a simple directed graph, dropping loops and duplicate pairs.

    Parameters
    ----------
    node_count : int
        Positive number of nodes.
    pairs : iterable of (int, int)
        Candidate edges; out-of-range indices raise, loops and repeats are
        dropped with a counted warning.
    """
    if node_count < 1:
        raise GraphIndexError(f"node_count must be >= 1, got {node_count}")
    seen = set()
    loops = 0
    dupes = 0
    for pair in pairs:
        i, j = pair
        if not (0 <= i < node_count and 0 <= j < node_count):
            raise GraphIndexError(
                f"pair ({i}, {j}) outside node range 0..{node_count - 1}"
            )
        if i == j:
            loops += 1
            continue
        if (i, j) in seen:
            dupes += 1
            continue
        seen.add((i, j))
    if loops:
        warnings.warn(f"dropped {loops} self-loop pair(s)", stacklevel=2)
    if dupes:
        warnings.warn(f"collapsed {dupes} duplicate pair(s)", stacklevel=2)
    return DirectedGraph(node_count, frozenset(seen))


def _weak_components(g: DirectedGraph) -> list:
    n = g.node_count
    nbrs = [[] for _ in range(n)]
    for i, j in g.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _strong_components(g: DirectedGraph) -> list:
    # Kosaraju with iterative DFS; fine at the node counts this package sees.
    n = g.node_count
    out = [[] for _ in range(n)]
    rev = [[] for _ in range(n)]
    for i, j in g.edges:
        out[i].append(j)
        rev[j].append(i)
    order = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        stack = [(start, iter(out[start]))]
        seen[start] = True
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, iter(out[w])))
                    advanced = True
                    break
            if not advanced:
                order.append(v)
                stack.pop()
    comps = []
    assigned = [False] * n
    for start in reversed(order):
        if assigned[start]:
            continue
        comp = [start]
        assigned[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for w in rev[v]:
                if not assigned[w]:
                    assigned[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def largest_component(g: DirectedGraph, mode: str = "weak") -> NodeSubset:
    """Largest connected component as a :class:`NodeSubset`.

    ``mode`` selects weak (default) or strong connectivity. Ties on size are
    broken toward the component containing the smallest node index, so the
    result is deterministic.
    """
    if mode not in ("weak", "strong"):
        raise ValueError(f"mode must be 'weak' or 'strong', got {mode!r}")
    if g.node_count == 0:
        return NodeSubset(0, ())
    comps = _weak_components(g) if mode == "weak" else _strong_components(g)
    best = max(comps, key=lambda c: (len(c), -min(c)))
    return NodeSubset(g.node_count, tuple(sorted(best)))


def activity_subset(g: DirectedGraph, k: int) -> NodeSubset:
    """Nodes whose total (in + out) degree is at least ``k``.

    A single pass over the original degrees; the rule is not iterated, so
    surviving nodes may fall below ``k`` within the induced subgraph.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    keep = np.nonzero(g.total_degrees >= k)[0] if g.node_count else []
    return NodeSubset(g.node_count, tuple(int(v) for v in keep))


def induced_subgraph(g: DirectedGraph, subset: NodeSubset) -> DirectedGraph:
    """Subgraph on ``subset``, with nodes renumbered by the subset's order."""
    if subset.parent_size != g.node_count:
        raise DimensionError(
            f"subset parent size {subset.parent_size} != graph node count {g.node_count}"
        )
    remap = subset.index_map
    kept = frozenset(
        (remap[i], remap[j]) for i, j in g.edges if i in remap and j in remap
    )
    return DirectedGraph(len(subset), kept)
