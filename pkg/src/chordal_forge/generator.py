"""Linear-time random generation of contraction-minimal representations.

The host tree grows one leaf at a time.  Each new leaf brings a fresh
batch of vertices forming a clique, and a proper subset of the subtrees
at the attachment node is extended onto the leaf, joining each extended
vertex to all fresh ones.  Because only a proper subset is extended and
every leaf carries at least one fresh subtree, the result is always
contraction-minimal, and every chordal graph on n vertices is produced
with positive probability.

Each edge is created exactly once (inside a fresh clique, or between an
extended subtree and a fresh vertex), so work is proportional to n + m.
Edges and incidence arrays are built as int32 numpy blocks to keep the
dense configurations (tens of millions of edges) fast and compact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from time import perf_counter

import numpy as np

from .graph import Graph
from .representation import Representation, Tree
from .rng import SplitMix64, derive_stream

_DT = np.int32

SUBSET_MODES = ("uniform-proper", "bernoulli")

# Cap multiplier for density targeting at rho <= 0.1: limits the vertices
# created per tree node to ceil(factor * rho * n) so low densities become
# reachable.  0.65 centers the realized density on the target for
# n in the thousands (uncapped draws overshoot by roughly 1.4x).
DENSITY_CAP_FACTOR = 0.65


class DensityExhaustedError(RuntimeError):
    """Raised when no generated graph hit the density window in time."""

    def __init__(self, rho: float, epsilon: float, attempts: int):
        super().__init__(
            f"no graph with density within {epsilon:.3g} of {rho:.3g} "
            f"after {attempts} attempts"
        )
        self.rho = rho
        self.epsilon = epsilon
        self.attempts = attempts


@dataclass(frozen=True)
class GenConfig:
    """Generation parameters.

    n: vertex count (>= 1).
    seed: 64-bit stream seed; equal seeds give bit-identical results.
    k_max: optional cap on vertices created per tree node.
    subset_mode: how the extended subset is drawn at each step.
        "uniform-proper" flips a fair coin per member and redraws when all
        land heads; "bernoulli" uses probability q instead of 1/2.  Both
        reach every proper subset, including the empty one.
    q: persistence probability for bernoulli mode, in (0, 1).
    k_conn: required connectivity; 0 disables the k-connected variant.
    """

    n: int
    seed: int = 0
    k_max: int | None = None
    subset_mode: str = "uniform-proper"
    q: float | None = None
    k_conn: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.k_max is not None and self.k_max < 1:
            raise ValueError(f"k_max must be at least 1, got {self.k_max}")
        if self.subset_mode not in SUBSET_MODES:
            raise ValueError(f"unknown subset_mode {self.subset_mode!r}")
        if self.subset_mode == "bernoulli":
            if self.q is None or not 0.0 < self.q < 1.0:
                raise ValueError("bernoulli mode needs q strictly between 0 and 1")
        elif self.q is not None:
            raise ValueError("q is only meaningful in bernoulli mode")
        if self.k_conn < 0:
            raise ValueError(f"k_conn must be non-negative, got {self.k_conn}")
        if self.k_conn > 0 and self.n < self.k_conn + 1:
            raise ValueError(f"k_conn={self.k_conn} needs n >= {self.k_conn + 1}")


@dataclass(frozen=True)
class GenResult:
    """A generated representation with its graph and cost accounting.

    ops counts elementary events: tree nodes and vertices created, edges
    created, and subtree extensions; it is proportional to n + m.
    attempts is 1 except under density targeting, where it reports how
    many candidates were drawn before one was accepted.
    """

    rep: Representation
    graph: Graph
    elapsed: float
    ops: int
    attempts: int = 1


def _clique_block(base: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """All pairs among the contiguous vertex ids base..base+k-1."""
    if k <= 32:
        u = [base + i for i in range(k - 1) for _ in range(k - 1 - i)]
        v = [base + j for i in range(k - 1) for j in range(i + 1, k)]
        return np.array(u, dtype=_DT), np.array(v, dtype=_DT)
    pairs = k * (k - 1) // 2
    # Vertex ids always fit int32; pair indices may not for huge cliques.
    idt = np.int64 if pairs > np.iinfo(np.int32).max else _DT
    counts = np.arange(k - 1, 0, -1, dtype=idt)
    u = np.repeat(np.arange(base, base + k - 1, dtype=_DT), counts)
    row_idx = np.repeat(np.arange(k - 1, dtype=idt), counts)
    row_starts = np.concatenate(
        (np.zeros(1, dtype=idt), np.cumsum(counts, dtype=idt)[:-1])
    )
    offs = (np.arange(pairs, dtype=idt) - row_starts[row_idx] + 1).astype(_DT)
    return u, u + offs

def _coin_subset(rng: SplitMix64, members: np.ndarray, threshold: int) -> np.ndarray:
    """Random proper subset via one coin per member; redraws a full set."""
    count = len(members)
    if count <= 32:
        # Scalar draws; consumes the stream exactly like the block path.
        while True:
            bits = [rng.next_u64() < threshold for _ in range(count)]
            if not all(bits):
                return members.compress(bits)
    while True:
        mask = rng.block(count) < threshold
        if not mask.all():
            return members[mask]


def _cardinality_subset(rng: SplitMix64, members: np.ndarray, k_conn: int) -> np.ndarray:
    """Proper subset of cardinality uniform in [k_conn, len-1], then uniform.

    Partial Fisher-Yates over a copy; every admissible subset stays
    reachable, which the k-connected construction requires.
    """
    c = rng.randint(k_conn, len(members) - 1)
    vals = members.tolist()
    for i in range(c):
        swap = i + rng.randbelow(len(vals) - i)
        vals[i], vals[swap] = vals[swap], vals[i]
    head = vals[:c]
    head.sort()
    return np.array(head, dtype=_DT)


def _generate_core(cfg: GenConfig) -> GenResult:
    n = cfg.n
    rng = SplitMix64(cfg.seed)
    cap = cfg.k_max if cfg.k_max is not None else n
    if cfg.subset_mode == "bernoulli":
        threshold = int(cfg.q * 2.0**64)
    else:
        threshold = 1 << 63
    k_conn = cfg.k_conn

    start = perf_counter()

    # First tree node: the connectivity floor beats the per-node cap.
    lo = k_conn + 1 if k_conn else 1
    k = rng.randint(lo, max(lo, min(n, cap)))
    members: list[np.ndarray] = [np.arange(k, dtype=_DT)]
    tree_edges: list[tuple[int, int]] = []
    u_blocks: list[np.ndarray] = []
    v_blocks: list[np.ndarray] = []
    if k >= 2:
        cu, cv = _clique_block(0, k)
        u_blocks.append(cu)
        v_blocks.append(cv)
    total = k
    ops = 1 + k + k * (k - 1) // 2

    while total < n:
        j = rng.randbelow(len(members))
        k = rng.randint(1, min(n - total, cap))
        attach = members[j]
        if k_conn:
            extended = _cardinality_subset(rng, attach, k_conn)
        else:
            extended = _coin_subset(rng, attach, threshold)
        if k >= 2:
            cu, cv = _clique_block(total, k)
            u_blocks.append(cu)
            v_blocks.append(cv)
        fresh = np.arange(total, total + k, dtype=_DT)
        s = len(extended)
        if s:
            # Extended ids predate fresh ids, so pairs arrive canonical.
            u_blocks.append(np.repeat(extended, k))
            v_blocks.append(np.tile(fresh, s))
            members.append(np.concatenate((extended, fresh)))
        else:
            members.append(fresh)
        tree_edges.append((j, len(members) - 1))
        total += k
        ops += 1 + k + k * (k - 1) // 2 + s + s * k

    if u_blocks:
        m = sum(len(b) for b in u_blocks)
        uv = np.empty((m, 2), dtype=_DT)
        all_u = np.concatenate(u_blocks)
        u_blocks.clear()
        uv[:, 0] = all_u
        del all_u
        all_v = np.concatenate(v_blocks)
        v_blocks.clear()
        uv[:, 1] = all_v
        del all_v
    else:
        uv = np.empty((0, 2), dtype=_DT)
    elapsed = perf_counter() - start

    tree = Tree(range(len(members)), tree_edges)
    rep = Representation.from_node_members(
        tree, {j: ids for j, ids in enumerate(members)}, n
    )
    graph = Graph.from_arrays(n, uv)
    return GenResult(rep=rep, graph=graph, elapsed=elapsed, ops=ops)


def generate(cfg: GenConfig) -> GenResult:
    """Draw one contraction-minimal representation and its chordal graph."""
    if cfg.k_conn:
        raise ValueError("cfg.k_conn is set; use generate_k_connected")
    return _generate_core(cfg)


def generate_k_connected(cfg: GenConfig) -> GenResult:
    """As generate, but the output graph is k-connected (cfg.k_conn >= 1).

    Two changes force connectivity k: the extended subset always has at
    least k members, and the first node's clique has at least k+1
    vertices.
    """
    if cfg.k_conn < 1:
        raise ValueError("generate_k_connected needs cfg.k_conn >= 1")
    return _generate_core(cfg)


def generate_with_density(
    cfg: GenConfig, rho: float, epsilon: float = 0.05, max_attempts: int = 100
) -> GenResult:
    """Rejection-sample until the edge density lands in [(1-eps)rho, (1+eps)rho].

    For rho <= 0.1 the per-node vertex cap is tightened (unless the config
    already sets one) so that sparse graphs are drawn with useful
    probability.  Each attempt uses an independent stream derived from
    (cfg.seed, attempt index).  Raises DensityExhaustedError after
    max_attempts rejections.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must be in (0, 1), got {rho}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if max_attempts < 1:
        raise ValueError(f"max_attempts must be at least 1, got {max_attempts}")
    eff = cfg
    if rho <= 0.1 and cfg.k_max is None:
        cap = max(1, math.ceil(DENSITY_CAP_FACTOR * rho * cfg.n))
        eff = replace(cfg, k_max=cap)
    pairs = cfg.n * (cfg.n - 1) // 2
    lo = (1.0 - epsilon) * rho
    hi = (1.0 + epsilon) * rho
    for attempt in range(max_attempts):
        sub = replace(eff, seed=derive_stream(cfg.seed, attempt))
        result = _generate_core(sub)
        density = result.graph.m / pairs if pairs else 0.0
        if lo <= density <= hi:
            return replace(result, attempts=attempt + 1)
    raise DensityExhaustedError(rho, epsilon, max_attempts)
