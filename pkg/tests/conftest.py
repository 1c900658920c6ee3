"""Shared brute-force oracles and random builders for the test suite.

The oracles are deliberately naive (subset enumeration, induced-cycle
search) and independent of the library code paths they check.
"""

from __future__ import annotations

from itertools import combinations

import pytest

from chordal_forge import Graph, Representation, Tree
from chordal_forge.rng import SplitMix64


def brute_force_is_chordal(g: Graph) -> bool:
    """No induced cycle of length >= 4, by exhaustive subset search (n <= 8)."""
    assert g.n <= 8
    adj = g.adjacency()
    for size in range(4, g.n + 1):
        for subset in combinations(range(g.n), size):
            inside = set(subset)
            degs = [len(adj[v] & inside) for v in subset]
            if any(d != 2 for d in degs):
                continue
            # all degree 2: an induced cycle iff the subset is connected
            seen = {subset[0]}
            stack = [subset[0]]
            while stack:
                v = stack.pop()
                for u in adj[v] & inside:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            if len(seen) == size:
                return False
    return True


def brute_force_maximal_cliques(g: Graph) -> set[frozenset[int]]:
    """Every inclusion-maximal clique, by subset enumeration (n <= 8)."""
    assert g.n <= 8
    adj = g.adjacency()
    cliques = []
    for size in range(1, g.n + 1):
        for subset in combinations(range(g.n), size):
            if all(v in adj[u] for u, v in combinations(subset, 2)):
                cliques.append(set(subset))
    return {
        frozenset(c)
        for c in cliques
        if not any(c < other for other in cliques)
    }


def graph_from_mask(n: int, mask: int) -> Graph:
    """Graph on n vertices whose edges are the set bits of mask."""
    edges = []
    bit = 0
    for u in range(n):
        for v in range(u + 1, n):
            if mask >> bit & 1:
                edges.append((u, v))
            bit += 1
    return Graph(n, edges)


def random_tree(rng: SplitMix64, t: int) -> Tree:
    """Random recursive tree: node i > 0 attaches to a uniform earlier node."""
    edges = [(rng.randbelow(i), i) for i in range(1, t)]
    return Tree(range(t), edges)


def random_connected_subset(rng: SplitMix64, tree: Tree, size: int) -> list[int]:
    """Uniform-ish connected node set grown from a random start node."""
    nodes = tree.nodes()
    start = nodes[rng.randbelow(len(nodes))]
    chosen = {start}
    frontier = sorted(tree.neighbors(start))
    while len(chosen) < size and frontier:
        nxt = frontier.pop(rng.randbelow(len(frontier)))
        chosen.add(nxt)
        for nb in sorted(tree.neighbors(nxt)):
            if nb not in chosen and nb not in frontier:
                frontier.append(nb)
        frontier.sort()
    return sorted(chosen)


def random_representation(rng: SplitMix64, t: int, n: int) -> Representation:
    """Random representation: arbitrary connected subtrees, often non-minimal."""
    tree = random_tree(rng, t)
    subtrees = []
    for _ in range(n):
        size = 1 + rng.randbelow(t)
        subtrees.append(random_connected_subset(rng, tree, size))
    return Representation(tree, subtrees)


@pytest.fixture
def rng():
    return SplitMix64(0xC0FFEE)
