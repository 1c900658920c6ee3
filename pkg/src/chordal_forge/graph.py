"""Simple undirected graphs with chordality and clique machinery.

Vertices are dense integers 0..n-1.  Edges are kept as a (m, 2) integer
array with u < v in every row; per-vertex adjacency sets are materialized
lazily because the generator can emit graphs far too large for per-edge
Python objects.
"""

from __future__ import annotations

from typing import Iterable, Sequence, TextIO

import numpy as np

EliminationOrder = list[int]
CliqueSet = list[frozenset[int]]


class EdgeListFormatError(ValueError):
    """Malformed edge-list input; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_uv", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = []
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            canon.append((u, v))
        self.n = n
        self._uv = np.array(canon, dtype=np.int64).reshape(len(canon), 2)
        self._adj: list[set[int]] | None = None

    @classmethod
    def from_arrays(cls, n: int, uv: np.ndarray) -> "Graph":
        """Wrap a pre-canonicalized edge array (u < v, no duplicates).

        Trusted constructor used by the generator, which creates every edge
        exactly once; no validation pass is made.
        """
        g = cls.__new__(cls)
        g.n = n
        g._uv = uv
        g._adj = None
        return g

    @property
    def m(self) -> int:
        return len(self._uv)

    @property
    def edge_array(self) -> np.ndarray:
        return self._uv

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self._uv}

    def adjacency(self) -> list[set[int]]:
        """Per-vertex neighbor sets, built on first use."""
        if self._adj is None:
            adj: list[set[int]] = [set() for _ in range(self.n)]
            for u, v in self._uv.tolist():
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    def neighbors(self, v: int) -> set[int]:
        return self.adjacency()[v]

    def density(self) -> float:
        pairs = self.n * (self.n - 1) // 2
        return self.m / pairs if pairs else 0.0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self):
        raise TypeError("Graph is not hashable")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def is_chordal(g: Graph) -> EliminationOrder | None:
    """Perfect elimination order of g, or None when g is not chordal.

    Maximum cardinality search produces a candidate order which is then
    verified exactly; both passes are O(n + m).
    """
    order = _mcs_order(g)
    return order if _is_perfect_elimination(g, order) else None


def _mcs_order(g: Graph) -> EliminationOrder:
    """Candidate perfect elimination order via maximum cardinality search.

    Visits vertices by decreasing count of visited neighbors; the reverse
    visit order is a perfect elimination order iff g is chordal.  Buckets
    are stacks with lazy deletion, so ties break deterministically.
    """
    n = g.n
    adj = g.adjacency()
    weight = [0] * n
    visited = [False] * n
    buckets: list[list[int]] = [list(range(n - 1, -1, -1))]
    max_w = 0
    visit: list[int] = []
    for _ in range(n):
        while True:
            while not buckets[max_w]:
                max_w -= 1
            v = buckets[max_w].pop()
            if not visited[v] and weight[v] == max_w:
                break
        visited[v] = True
        visit.append(v)
        for u in adj[v]:
            if not visited[u]:
                w = weight[u] + 1
                weight[u] = w
                if w >= len(buckets):
                    buckets.append([])
                buckets[w].append(u)
                if w > max_w:
                    max_w = w
    visit.reverse()
    return visit


def _is_perfect_elimination(g: Graph, order: Sequence[int]) -> bool:
    """Exact check that each vertex's later neighbors form a clique.

    Golumbic's linear-time test: the earliest later neighbor u of v must be
    adjacent to all other later neighbors of v, which is recorded as a
    pending requirement on u and checked when u is processed.
    """
    n = g.n
    if sorted(order) != list(range(n)):
        return False
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    adj = g.adjacency()
    required: list[set[int]] = [set() for _ in range(n)]
    for v in order:
        if required[v] - adj[v]:
            return False
        later = [u for u in adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        u = min(later, key=pos.__getitem__)
        required[u].update(w for w in later if w != u)
    return True


def maximal_cliques(g: Graph, peo: Sequence[int]) -> CliqueSet:
    """All maximal cliques of a chordal graph, from a perfect elimination order.

    Each vertex contributes its closed later-neighborhood as a candidate;
    a candidate is dropped exactly when some vertex's earliest later
    neighbor absorbs it.  Raises ValueError when peo is not a perfect
    elimination order of g.
    """
    if not _is_perfect_elimination(g, peo):
        raise ValueError("not a perfect elimination order of this graph")
    n = g.n
    pos = [0] * n
    for i, v in enumerate(peo):
        pos[v] = i
    adj = g.adjacency()
    later: list[list[int]] = [[] for _ in range(n)]
    for v in peo:
        later[v] = [u for u in adj[v] if pos[u] > pos[v]]
    absorbed = [False] * n
    for v in peo:
        if later[v]:
            u = min(later[v], key=pos.__getitem__)
            if len(later[u]) == len(later[v]) - 1:
                absorbed[u] = True
    cliques = [frozenset([v, *later[v]]) for v in peo if not absorbed[v]]
    assert len(cliques) <= n
    return cliques


def connected_components(g: Graph) -> list[set[int]]:
    """Partition of the vertices into maximal connected sets."""
    adj = g.adjacency()
    seen = [False] * g.n
    parts: list[set[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.add(u)
                    stack.append(u)
        parts.append(comp)
    return parts


def brute_force_connectivity(g: Graph) -> int:
    """Vertex connectivity by exhaustive separator search; test oracle only.

    Largest k such that g has more than k vertices and no separator smaller
    than k; 0 for disconnected graphs and n-1 for complete graphs.
    """
    n = g.n
    if n > 16:
        raise ValueError("oracle limited to n <= 16")
    if n <= 1:
        return 0
    adj = g.adjacency()

    def connected_without(removed: set[int]) -> bool:
        rest = [v for v in range(n) if v not in removed]
        if not rest:
            return True
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in removed and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(rest)

    from itertools import combinations

    for size in range(n - 1):
        for removed in combinations(range(n), size):
            if not connected_without(set(removed)):
                return size
    return n - 1


def write_edge_list(g: Graph, fh: TextIO) -> None:
    """Text interchange format: header "n m", then one "u v" line per edge."""
    fh.write(f"{g.n} {g.m}\n")
    uv = g._uv
    chunk = 1 << 18
    for start in range(0, len(uv), chunk):
        rows = uv[start : start + chunk].tolist()
        fh.write("".join(f"{u} {v}\n" for u, v in rows))


def read_edge_list(fh: TextIO) -> Graph:
    """Parse the edge-list format, reporting the offending line on error."""
    header = fh.readline()
    if not header:
        raise EdgeListFormatError(1, "empty input, expected header 'n m'")
    parts = header.split()
    if len(parts) != 2:
        raise EdgeListFormatError(1, f"expected 'n m', got {header.strip()!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise EdgeListFormatError(1, f"non-integer header {header.strip()!r}") from None
    if n < 0 or m < 0:
        raise EdgeListFormatError(1, "negative vertex or edge count")
    uv = np.empty((m, 2), dtype=np.int64)
    seen: set[tuple[int, int]] = set()
    count = 0
    for lineno, line in enumerate(fh, start=2):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListFormatError(lineno, f"expected 'u v', got {line.strip()!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListFormatError(lineno, f"non-integer edge {line.strip()!r}") from None
        if not (0 <= u < v < n):
            raise EdgeListFormatError(lineno, f"edge ({u}, {v}) violates 0 <= u < v < n={n}")
        if (u, v) in seen:
            raise EdgeListFormatError(lineno, f"duplicate edge ({u}, {v})")
        if count >= m:
            raise EdgeListFormatError(lineno, f"more than the declared {m} edges")
        seen.add((u, v))
        uv[count, 0] = u
        uv[count, 1] = v
        count += 1
    if count != m:
        raise EdgeListFormatError(1, f"declared {m} edges but found {count}")
    return Graph.from_arrays(n, uv)
