"""Subtree-in-tree representations of chordal graphs.

A representation is a host tree plus one connected node-set per graph
vertex; vertices are adjacent iff their node-sets meet.  The central
predicate is contraction-minimality: no host-tree edge can be contracted
without changing the intersection graph, which happens exactly when the
two endpoint incidence sets are incomparable.  Minimal representations
are clique trees, carry the minimal separators on their edges, and keep
the total incidence count within 2m + n.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

from .graph import Graph

MultiplicityMap = dict[int, int]


class RepresentationFormatError(ValueError):
    """Malformed or invalid representation input."""


class Tree:
    """Unrooted tree on arbitrary integer node identifiers."""

    __slots__ = ("_adj",)

    def __init__(self, nodes: Iterable[int], edges: Iterable[tuple[int, int]]):
        adj: dict[int, set[int]] = {int(j): set() for j in nodes}
        if not adj:
            raise RepresentationFormatError("tree must have at least one node")
        edge_count = 0
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise RepresentationFormatError(f"tree self-loop at node {a}")
            if a not in adj or b not in adj:
                raise RepresentationFormatError(f"tree edge ({a}, {b}) uses unknown node")
            if b in adj[a]:
                raise RepresentationFormatError(f"duplicate tree edge ({a}, {b})")
            adj[a].add(b)
            adj[b].add(a)
            edge_count += 1
        if edge_count != len(adj) - 1:
            raise RepresentationFormatError(
                f"{len(adj)} nodes need {len(adj) - 1} edges to form a tree, got {edge_count}"
            )
        # Connected + |E| = t - 1 implies acyclic.
        start = next(iter(adj))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(adj):
            raise RepresentationFormatError("tree is not connected")
        self._adj = adj

    @property
    def t(self) -> int:
        return len(self._adj)

    def nodes(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for a, nbrs in self._adj.items():
            for b in nbrs:
                if a < b:
                    out.append((a, b))
        out.sort()
        return out

    def neighbors(self, j: int) -> set[int]:
        return self._adj[j]

    def has_node(self, j: int) -> bool:
        return j in self._adj

    def has_edge(self, a: int, b: int) -> bool:
        return a in self._adj and b in self._adj[a]

    def adjacency_copy(self) -> dict[int, set[int]]:
        return {j: set(nbrs) for j, nbrs in self._adj.items()}

    @classmethod
    def _from_adjacency(cls, adj: dict[int, set[int]]) -> "Tree":
        t = cls.__new__(cls)
        t._adj = adj
        return t

    def is_subset_connected(self, node_set: Sequence[int]) -> bool:
        """Whether the given nodes induce a connected subgraph of the tree."""
        want = set(node_set)
        if not want:
            return False
        start = next(iter(want))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self._adj[v]:
                if u in want and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(want)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self._adj == other._adj


class Representation:
    """Host tree plus one connected node-set per vertex 0..n-1.

    Ground truth is the incidence index: for every tree node j, the sorted
    array of vertices whose subtree contains j.  Per-vertex subtrees are
    derived on demand, so very large generator outputs never pay for
    per-node Python sets they do not use.
    """

    __slots__ = ("tree", "n", "_members", "_member_sets")

    def __init__(self, tree: Tree, subtrees: Sequence[Iterable[int]]):
        members: dict[int, list[int]] = {j: [] for j in tree._adj}
        for i, sub in enumerate(subtrees):
            nodes = [int(j) for j in sub]
            if not nodes:
                raise RepresentationFormatError(f"subtree {i} is empty")
            for j in nodes:
                if j not in tree._adj:
                    raise RepresentationFormatError(
                        f"subtree {i} contains unknown tree node {j}"
                    )
            if len(set(nodes)) != len(nodes):
                raise RepresentationFormatError(f"subtree {i} repeats a node")
            if not tree.is_subset_connected(nodes):
                raise RepresentationFormatError(f"subtree {i} is not connected")
            for j in nodes:
                members[j].append(i)
        if not subtrees:
            raise RepresentationFormatError("representation needs at least one subtree")
        self.tree = tree
        self.n = len(subtrees)
        self._members = {
            j: np.array(sorted(ids), dtype=np.int64) for j, ids in members.items()
        }
        self._member_sets: dict[int, frozenset[int]] = {}

    @classmethod
    def from_node_members(
        cls, tree: Tree, members: Mapping[int, np.ndarray], n: int
    ) -> "Representation":
        """Trusted constructor from per-node sorted vertex arrays.

        The generator builds incidence arrays directly; they are adopted
        without copying or re-validation.
        """
        rep = cls.__new__(cls)
        rep.tree = tree
        rep.n = n
        rep._members = dict(members)
        rep._member_sets = {}
        return rep

    def node_members(self, j: int) -> np.ndarray:
        return self._members[j]

    def member_set(self, j: int) -> frozenset[int]:
        s = self._member_sets.get(j)
        if s is None:
            s = frozenset(self._members[j].tolist())
            self._member_sets[j] = s
        return s

    def t_j(self, j: int) -> int:
        return len(self._members[j])

    @property
    def t(self) -> int:
        return self.tree.t

    def subtrees(self) -> list[list[int]]:
        """Per-vertex sorted node lists (the inverse of the incidence index)."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for j in sorted(self._members):
            for i in self._members[j].tolist():
                out[i].append(j)
        return out

    def subtree(self, i: int) -> frozenset[int]:
        return frozenset(j for j, ids in self._members.items() if i in self.member_set(j))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.n == other.n
            and self.tree == other.tree
            and {j: self.member_set(j) for j in self._members}
            == {j: other.member_set(j) for j in other._members}
        )

    def __repr__(self):
        return f"Representation(t={self.t}, n={self.n})"


def _pairs_among_sorted(ids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All ordered pairs (ids[i], ids[j]) with i < j, vectorized."""
    k = len(ids)
    if k < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    counts = np.arange(k - 1, 0, -1)
    u = np.repeat(ids[:-1], counts)
    row_starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    row_idx = np.repeat(np.arange(k - 1), counts)
    col = np.arange(counts.sum()) - row_starts[row_idx] + row_idx + 1
    return u.astype(np.int64), ids[col].astype(np.int64)


def intersection_graph(rep: Representation) -> Graph:
    """Graph on rep.n vertices; i and i' adjacent iff their subtrees meet.

    Always chordal: every node's incidence set spans a clique and the union
    over nodes, deduplicated, is the edge set.
    """
    n = rep.n
    packed_blocks = []
    for j in sorted(rep._members):
        ids = rep._members[j]
        if len(ids) >= 2:
            u, v = _pairs_among_sorted(ids)
            packed_blocks.append(u * n + v)
    if not packed_blocks:
        return Graph.from_arrays(n, np.empty((0, 2), dtype=np.int64))
    packed = np.unique(np.concatenate(packed_blocks))
    uv = np.empty((len(packed), 2), dtype=np.int64)
    uv[:, 0], uv[:, 1] = np.divmod(packed, n)
    return Graph.from_arrays(n, uv)


def is_minimal(rep: Representation) -> bool:
    """Whether no host-tree edge can be contracted without changing the graph.

    Holds iff for every tree edge the two endpoint incidence sets are
    incomparable (neither contains the other).
    """
    for a, b in rep.tree.edges():
        sa, sb = rep.member_set(a), rep.member_set(b)
        if sa <= sb or sb <= sa:
            return False
    return True


def contract_edge(
    rep: Representation, mult: MultiplicityMap | None, e: tuple[int, int]
) -> tuple[Representation, MultiplicityMap]:
    """Contract tree edge e, merging its endpoints into the lower identifier.

    Every subtree containing either endpoint contains the merged node
    exactly once; multiplicities add.  Raises ValueError for non-edges.
    """
    a, b = e
    if not rep.tree.has_edge(a, b):
        raise ValueError(f"({a}, {b}) is not a tree edge")
    keep, drop = (a, b) if a < b else (b, a)
    adj = rep.tree.adjacency_copy()
    merged_nbrs = (adj[keep] | adj[drop]) - {keep, drop}
    for j in adj[drop]:
        adj[j].discard(drop)
    for j in adj[keep]:
        adj[j].discard(keep)
    del adj[drop]
    adj[keep] = merged_nbrs
    for j in merged_nbrs:
        adj[j].add(keep)
    tree = Tree._from_adjacency(adj)

    members = dict(rep._members)
    members[keep] = np.union1d(members[keep], members.pop(drop))
    out = Representation.from_node_members(tree, members, rep.n)

    if mult is None:
        mult = {j: 1 for j in rep._members}
    new_mult = dict(mult)
    new_mult[keep] = new_mult[keep] + new_mult.pop(drop)
    return out, new_mult


def minimize(
    rep: Representation, order_rng=None
) -> tuple[Representation, MultiplicityMap]:
    """Contract nested-incidence edges until the representation is minimal.

    The intersection graph is preserved exactly and the resulting node
    count equals the number of maximal cliques regardless of contraction
    order.  The scan order is a deterministic cycle over sorted edges,
    restarted after every contraction; pass a SplitMix64 as order_rng to
    randomize it (used by order-insensitivity tests).
    """
    mult: MultiplicityMap = {j: 1 for j in rep._members}
    current = rep
    while True:
        edges = current.tree.edges()
        if order_rng is not None:
            for i in range(len(edges) - 1, 0, -1):
                k = order_rng.randbelow(i + 1)
                edges[i], edges[k] = edges[k], edges[i]
        for a, b in edges:
            sa, sb = current.member_set(a), current.member_set(b)
            if sa <= sb or sb <= sa:
                current, mult = contract_edge(current, mult, (a, b))
                break
        else:
            return current, mult


def representation_size(rep: Representation) -> int:
    """Total incidence count: sum of subtree sizes, equal to the sum of t_j."""
    return sum(len(ids) for ids in rep._members.values())


def clique_tree_check(rep: Representation) -> bool:
    """Whether the host tree is a clique tree of the intersection graph.

    Computes two independent verdicts and asserts they agree: (a) the
    minimality predicate, and (b) the per-node vertex sets are pairwise
    distinct maximal cliques of the rebuilt intersection graph.
    """
    a = is_minimal(rep)

    g = intersection_graph(rep)
    adj = g.adjacency()
    node_sets = [rep.member_set(j) for j in sorted(rep._members)]
    b = len(set(node_sets)) == len(node_sets)
    if b:
        for vj in node_sets:
            tj = len(vj)
            if tj == 0:
                b = False
                break
            if sum(len(adj[i] & vj) for i in vj) != tj * (tj - 1):
                b = False
                break
            it = iter(vj)
            first = next(it)
            cand = adj[first] - vj
            for i in it:
                if not cand:
                    break
                cand &= adj[i]
            if cand:
                b = False
                break
    if a != b:
        raise RuntimeError(
            "minimality and clique-tree structure disagree; representation is corrupt"
        )
    return a


@dataclass(frozen=True)
class PruningRecord:
    node: int
    simplicial: int  # vertices eliminated with this node (s_j)
    incident: int  # subtrees containing this node (t_j)


@dataclass(frozen=True)
class PruningTrace:
    """Leaf-elimination trace of a minimal representation.

    Record order is the actual removal order (ascending node identifier
    among current leaves).  For a minimal representation of a graph with
    n vertices and m edges the counts satisfy: every s >= 1, the s sum to
    n, s_j <= t_j <= sum of s over steps >= j, and the elimination
    identity 2*sum(s_j*t_j) - sum(s_j^2) == 2m + n.
    """

    records: tuple[PruningRecord, ...]

    def s_values(self) -> list[int]:
        return [r.simplicial for r in self.records]

    def t_values(self) -> list[int]:
        return [r.incident for r in self.records]

    def identity_value(self) -> int:
        """2*sum(s_j*t_j) - sum(s_j^2); equals 2m + n for minimal inputs."""
        return sum(2 * r.simplicial * r.incident - r.simplicial**2 for r in self.records)

    def satisfies_bounds(self) -> bool:
        s = self.s_values()
        suffix = 0
        suffixes = []
        for v in reversed(s):
            suffix += v
            suffixes.append(suffix)
        suffixes.reverse()
        return all(
            r.simplicial >= 1 and r.simplicial <= r.incident <= suf
            for r, suf in zip(self.records, suffixes)
        )


def pruning_trace(rep: Representation) -> PruningTrace:
    """Eliminate leaves (smallest identifier first), recording (s_j, t_j).

    At each step the subtrees consisting solely of the removed leaf are
    simplicial vertices of the remaining graph; minimality guarantees at
    least one per step.  Raises ValueError on non-minimal input.
    """
    if not is_minimal(rep):
        raise ValueError("pruning trace requires a minimal representation")
    sizes = np.zeros(rep.n, dtype=np.int64)
    for ids in rep._members.values():
        sizes[ids] += 1
    sizes = sizes.tolist()

    adj = rep.tree.adjacency_copy()
    heap = [j for j, nbrs in adj.items() if len(nbrs) <= 1]
    heapq.heapify(heap)
    records = []
    removed: set[int] = set()
    while heap:
        j = heapq.heappop(heap)
        if j in removed or len(adj[j]) > 1:
            continue
        ids = rep._members[j].tolist()
        s_j = sum(1 for i in ids if sizes[i] == 1)
        for i in ids:
            sizes[i] -= 1
        records.append(PruningRecord(j, s_j, len(ids)))
        removed.add(j)
        for nbr in adj.pop(j):
            adj[nbr].discard(j)
            if len(adj[nbr]) <= 1:
                heapq.heappush(heap, nbr)
    return PruningTrace(tuple(records))


@dataclass(frozen=True)
class SeparatorReport:
    """Minimal separators read off the tree edges of a minimal representation.

    Each tree edge e carries the vertex set whose subtrees contain both
    endpoints; the distinct such sets are exactly the minimal separators.
    kappa is the vertex connectivity: min |V_e| over edges, with the
    single-node convention kappa = n - 1 (complete graph).
    """

    separators: tuple[tuple[tuple[int, int], frozenset[int]], ...]
    kappa: int

    def distinct_separators(self) -> set[frozenset[int]]:
        return {s for _, s in self.separators}


def minimal_separators(rep: Representation) -> SeparatorReport:
    """Per-edge separators and connectivity; requires a minimal representation."""
    if not is_minimal(rep):
        raise ValueError("separator report requires a minimal representation")
    seps = []
    for a, b in rep.tree.edges():
        seps.append(((a, b), rep.member_set(a) & rep.member_set(b)))
    if not seps:
        kappa = rep.n - 1
    else:
        kappa = min(len(s) for _, s in seps)
    return SeparatorReport(tuple(seps), kappa)


def edge_load_bound_check(rep: Representation) -> bool:
    """Whether every tree edge lies in at most n - t subtrees.

    True for every valid minimal representation; exposed as an assertion
    utility.  Raises ValueError on non-minimal input.
    """
    if not is_minimal(rep):
        raise ValueError("edge load bound applies to minimal representations")
    bound = rep.n - rep.t
    for a, b in rep.tree.edges():
        if len(rep.member_set(a) & rep.member_set(b)) > bound:
            return False
    return True


def rep_to_json(rep: Representation) -> dict:
    """JSON-serializable form; round-trips losslessly through rep_from_json."""
    return {
        "tree": {
            "nodes": rep.tree.nodes(),
            "edges": [list(e) for e in rep.tree.edges()],
        },
        "subtrees": rep.subtrees(),
    }


def rep_from_json(data: object) -> Representation:
    """Parse and validate the representation JSON format."""
    if not isinstance(data, dict):
        raise RepresentationFormatError("top level must be an object")
    try:
        tree_obj = data["tree"]
        nodes = tree_obj["nodes"]
        edges = tree_obj["edges"]
        subtrees = data["subtrees"]
    except (KeyError, TypeError) as exc:
        raise RepresentationFormatError(f"missing field: {exc}") from None
    if not isinstance(nodes, list) or not isinstance(edges, list):
        raise RepresentationFormatError("tree.nodes and tree.edges must be lists")
    if not isinstance(subtrees, list):
        raise RepresentationFormatError("subtrees must be a list")
    for idx, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2):
            raise RepresentationFormatError(f"tree edge {idx} must be a pair")
    tree = Tree(nodes, [(e[0], e[1]) for e in edges])
    return Representation(tree, subtrees)


def write_rep_json(rep: Representation, fh: TextIO) -> None:
    json.dump(rep_to_json(rep), fh)
    fh.write("\n")


def read_rep_json(fh: TextIO) -> Representation:
    try:
        data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise RepresentationFormatError(f"invalid JSON: {exc}") from None
    return rep_from_json(data)
