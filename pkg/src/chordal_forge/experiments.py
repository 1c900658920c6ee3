"""Statistics, histograms, and the size-blowup witness family.

Reports mirror the standard benchmarking columns for chordal generators:
component count, maximal-clique count and size distribution, and build
time.  The witness family shows that representations on trees with as
many nodes as vertices can be asymptotically larger than the 2m + n
budget that minimal representations respect.
"""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .graph import Graph, connected_components
from .representation import (
    MultiplicityMap,
    Representation,
    Tree,
    intersection_graph,
    representation_size,
)

STATS_COLUMNS = (
    "n",
    "density",
    "components",
    "clique_count",
    "clique_min",
    "clique_max",
    "clique_mean",
    "clique_sd",
    "build_seconds",
)


@dataclass(frozen=True)
class RunReport:
    """One generated graph summarized as a benchmark table row."""

    n: int
    density: float
    components: int
    clique_count: int
    clique_min: int
    clique_max: int
    clique_mean: float
    clique_sd: float
    build_seconds: float


def clique_sizes(rep: Representation) -> list[int]:
    """Maximal clique sizes of the represented graph (sorted).

    For a minimal representation the tree nodes biject with the maximal
    cliques, so the per-node incidence counts are exactly the sizes.
    """
    return sorted(len(rep.node_members(j)) for j in rep.tree.nodes())


def run_report(g: Graph, rep: Representation, elapsed: float) -> RunReport:
    """All table columns for one run; clique data comes from the clique tree."""
    sizes = clique_sizes(rep)
    return RunReport(
        n=g.n,
        density=g.density(),
        components=len(connected_components(g)),
        clique_count=len(sizes),
        clique_min=min(sizes),
        clique_max=max(sizes),
        clique_mean=statistics.fmean(sizes),
        clique_sd=statistics.pstdev(sizes),
        build_seconds=elapsed,
    )


def write_stats_csv(reports: Sequence[RunReport], fh: TextIO) -> None:
    """One row per run plus a final row of per-column means."""
    fh.write(",".join(STATS_COLUMNS) + "\n")
    for r in reports:
        fh.write(
            f"{r.n},{r.density:.6f},{r.components},{r.clique_count},"
            f"{r.clique_min},{r.clique_max},{r.clique_mean:.6f},"
            f"{r.clique_sd:.6f},{r.build_seconds:.6f}\n"
        )
    if reports:
        k = len(reports)
        means = [
            sum(getattr(r, col) for r in reports) / k for col in STATS_COLUMNS
        ]
        fh.write(",".join(f"{v:.6f}" for v in means) + "\n")


@dataclass(frozen=True)
class Histogram:
    """Average frequency of maximal-clique sizes over fixed-width bins.

    Bin (lo, hi) covers sizes lo..hi inclusive; bins run contiguously
    from size 1 to the largest observed size.  Total frequency times the
    run count equals the total number of cliques observed.
    """

    bin_width: int
    runs: int
    bins: dict[tuple[int, int], float]


def histogram(size_lists: Sequence[Sequence[int]], bin_width: int = 5) -> Histogram:
    """Per-bin clique-size frequencies averaged across runs."""
    if bin_width < 1:
        raise ValueError(f"bin_width must be at least 1, got {bin_width}")
    if not size_lists:
        raise ValueError("histogram needs at least one run")
    counts: Counter[int] = Counter()
    for sizes in size_lists:
        for s in sizes:
            counts[(s - 1) // bin_width] += 1
    runs = len(size_lists)
    bins: dict[tuple[int, int], float] = {}
    if counts:
        for b in range(max(counts) + 1):
            bins[(b * bin_width + 1, (b + 1) * bin_width)] = counts.get(b, 0) / runs
    return Histogram(bin_width=bin_width, runs=runs, bins=bins)


def write_histogram_csv(hist: Histogram, fh: TextIO) -> None:
    fh.write("bin_lo,bin_hi,avg_frequency\n")
    for (lo, hi), freq in sorted(hist.bins.items()):
        fh.write(f"{lo},{hi},{freq:.6f}\n")


def lower_bound_family(k: int) -> Representation:
    """Representation family whose total size grows like m * sqrt(n).

    Host tree on n = 6*3^(2k) nodes: a path of 4*3^(2k) nodes joined to a
    star with 2*3^(2k) nodes (center attached to the far path end; no
    subtree spans both parts, so the attachment point is immaterial).
    Subtrees: two singletons on each of the first 2*3^(2k) path nodes,
    3^(k+1) copies of the whole star, and singletons on the following
    path nodes until exactly n subtrees exist.  The intersection graph is
    one clique on 3^(k+1) vertices plus 2*3^(2k) disjoint edges and
    isolated vertices, while the star copies alone contribute roughly
    m * sqrt(n) subtree leaves.
    """
    if k < 1:
        raise ValueError(f"family is defined for k >= 1, got {k}")
    p = 3 ** (2 * k)
    star_copies = 3 ** (k + 1)
    path_nodes = list(range(4 * p))
    star_nodes = list(range(4 * p, 6 * p))
    center = star_nodes[0]
    edges = [(i, i + 1) for i in range(4 * p - 1)]
    edges += [(center, u) for u in star_nodes[1:]]
    edges.append((path_nodes[-1], center))
    tree = Tree(path_nodes + star_nodes, edges)

    subtrees: list[list[int]] = []
    for v in range(2 * p):
        subtrees.append([v])
        subtrees.append([v])
    star = list(star_nodes)
    for _ in range(star_copies):
        subtrees.append(star)
    for idx in range(2 * p - star_copies):
        subtrees.append([2 * p + idx])
    assert len(subtrees) == 6 * p
    return Representation(tree, subtrees)


def subtree_leaf_count(rep: Representation) -> int:
    """Total number of leaves over all subtrees; singletons count one.

    Lower-bounds the space any encoding of the subtrees needs.
    """
    tree = rep.tree
    total = 0
    for nodes in rep.subtrees():
        if len(nodes) == 1:
            total += 1
            continue
        node_set = set(nodes)
        total += sum(
            1 for j in nodes if len(tree.neighbors(j) & node_set) <= 1
        )
    return total


@dataclass(frozen=True)
class SizeRatioReport:
    """Size accounting of a representation against the 2m + n budget.

    total_size is the incidence count of the original representation;
    weighted_size is the multiplicity-weighted count of the minimized one
    (an upper bound on total_size) when minimization was performed.
    For minimal representations ratio <= 1.
    """

    n: int
    m: int
    total_size: int
    bound_2m_plus_n: int
    ratio: float
    sqrt_n: float
    weighted_size: int | None = None


def size_ratio_report(
    original: Representation,
    minimized: Representation | None = None,
    mult: MultiplicityMap | None = None,
) -> SizeRatioReport:
    """Compare representation sizes with the linear budget of minimal ones.

    When the minimized representation and its multiplicities are given,
    checks that the original size is within the multiplicity-weighted
    bound and that the minimized size is within 2m + n.
    """
    g = intersection_graph(original)
    n, m = g.n, g.m
    total = representation_size(original)
    bound = 2 * m + n
    weighted: int | None = None
    if minimized is not None:
        if mult is None:
            raise ValueError("minimized representation requires its multiplicity map")
        weighted = sum(
            mult[j] * len(minimized.node_members(j)) for j in minimized.tree.nodes()
        )
        if total > weighted:
            raise RuntimeError(
                f"original size {total} exceeds weighted bound {weighted}"
            )
        min_size = representation_size(minimized)
        if min_size > bound:
            raise RuntimeError(
                f"minimal representation size {min_size} exceeds 2m+n = {bound}"
            )
    return SizeRatioReport(
        n=n,
        m=m,
        total_size=total,
        bound_2m_plus_n=bound,
        ratio=total / bound if bound else 0.0,
        sqrt_n=math.sqrt(n),
        weighted_size=weighted,
    )


def write_size_ratio_csv(reports: Iterable[SizeRatioReport], fh: TextIO) -> None:
    fh.write("n,m,total_size,bound_2m_plus_n,ratio,sqrt_n\n")
    for r in reports:
        fh.write(
            f"{r.n},{r.m},{r.total_size},{r.bound_2m_plus_n},"
            f"{r.ratio:.6f},{r.sqrt_n:.6f}\n"
        )
