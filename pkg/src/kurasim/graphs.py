"""Undirected graph generators producing dense 0/1 adjacency matrices.

Four families: the ring graph (each node tied to its k nearest neighbours
per direction), the complete graph as its k = floor(n/2) special case,
Erdos-Renyi, and Watts-Strogatz rewiring of the ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .seeding import rng_for

__all__ = [
    "AdjacencyMatrix",
    "GeneratingVector",
    "gen_ring",
    "gen_complete",
    "gen_erdos_renyi",
    "gen_watts_strogatz",
    "ring_generating_vector",
    "circulant",
    "write_edge_list",
    "read_edge_list",
]


@dataclass(eq=False)
class AdjacencyMatrix:
    """Symmetric 0/1 matrix with provenance metadata.

    entries is an n x n float array holding exactly 0.0 or 1.0; params echoes
    the generator parameters (k, p, q, seed as applicable).
    """

    n: int
    entries: np.ndarray
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        if self.entries.shape != (self.n, self.n):
            raise ValueError(f"entries shape {self.entries.shape} does not match n={self.n}")
        if not np.array_equal(self.entries, self.entries.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(self.entries) != 0.0):
            raise ValueError("adjacency matrix must have a zero diagonal")
        if not np.all((self.entries == 0.0) | (self.entries == 1.0)):
            raise ValueError("adjacency entries must be exactly 0 or 1")

    @property
    def edge_count(self) -> int:
        return int(self.entries.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.entries.sum(axis=1)


@dataclass(eq=False)
class GeneratingVector:
    """First row of a circulant matrix; c[0] = 0 for the graphs here."""

    c: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        if self.c.ndim != 1 or self.c.size < 1:
            raise ValueError("generating vector must be a non-empty 1-d array")

    @property
    def n(self) -> int:
        return self.c.size


def _check_ring_params(n: int, k: int, strict_k: bool = False) -> None:
    if int(n) != n or n < 2:
        raise ValueError(f"node count must be an integer >= 2, got {n}")
    k_max = n // 2 - 1 if strict_k else n // 2
    if int(k) != k or not 1 <= k <= k_max:
        raise ValueError(f"neighbor radius k={k} outside [1, {k_max}] for n={n}")


def gen_ring(n: int, k: int) -> AdjacencyMatrix:
    """Ring graph: i ~ j iff the circular distance min(|i-j|, n-|i-j|) is in [1, k].

    Every node has degree 2k, except that for even n and k = n/2 the antipodal
    neighbour is shared between the two directions and the degree is n - 1.
    """
    _check_ring_params(n, k)
    idx = np.arange(n)
    d = np.abs(idx[:, None] - idx[None, :])
    d = np.minimum(d, n - d)
    entries = ((d >= 1) & (d <= k)).astype(float)
    return AdjacencyMatrix(n, entries, kind="ring", params={"k": int(k)})


def gen_complete(n: int) -> AdjacencyMatrix:
    """Complete graph K_n, identical to gen_ring(n, floor(n/2))."""
    if int(n) != n or n < 2:
        raise ValueError(f"node count must be an integer >= 2, got {n}")
    a = gen_ring(n, n // 2)
    return AdjacencyMatrix(n, a.entries, kind="complete", params={})


def gen_erdos_renyi(n: int, p: float, seed: int) -> AdjacencyMatrix:
    """Each unordered pair {i, j} is an edge independently with probability p.

    Pairs are decided in lexicographic (i, j) order from one dedicated RNG
    stream, so the output is reproducible for identical (n, p, seed).
    """
    if int(n) != n or n < 2:
        raise ValueError(f"node count must be an integer >= 2, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = rng_for(seed, "erdos_renyi")
    iu, ju = np.triu_indices(n, k=1)
    draws = rng.random(iu.size)
    entries = np.zeros((n, n))
    hit = draws < p
    entries[iu[hit], ju[hit]] = 1.0
    entries[ju[hit], iu[hit]] = 1.0
    return AdjacencyMatrix(n, entries, kind="erdos_renyi",
                           params={"p": float(p), "seed": int(seed)})


def gen_watts_strogatz(n: int, k: int, q: float, seed: int) -> AdjacencyMatrix:
    """Ring graph with each edge rewired with probability q.

    Visits the original ring edges once, in lexicographic (node, offset)
    order. A rewired edge keeps its near endpoint i and reattaches the far
    endpoint to a node drawn uniformly among those that create neither a
    self-loop nor a duplicate edge; if no such node exists the edge is kept.
    Edge count n*k is conserved exactly.
    """
    # k < n/2 strictly, so every node has non-neighbours to rewire to
    _check_ring_params(n, k, strict_k=True)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"rewiring probability must lie in [0, 1], got {q}")
    rng = rng_for(seed, "watts_strogatz")
    entries = gen_ring(n, k).entries
    for i in range(n):
        for off in range(1, k + 1):
            j = (i + off) % n
            if rng.random() >= q:
                continue
            entries[i, j] = entries[j, i] = 0.0
            candidates = np.flatnonzero(entries[i] == 0.0)
            candidates = candidates[candidates != i]
            if candidates.size == 0:
                entries[i, j] = entries[j, i] = 1.0
                continue
            m = candidates[rng.integers(candidates.size)]
            entries[i, m] = entries[m, i] = 1.0
    return AdjacencyMatrix(n, entries, kind="watts_strogatz",
                           params={"k": int(k), "q": float(q), "seed": int(seed)})


def ring_generating_vector(n: int, k: int) -> GeneratingVector:
    """First row of the ring adjacency matrix: c[0] = 0, c[j] = 1 iff the
    circular distance of offset j from node 0 lies in [1, k]."""
    _check_ring_params(n, k)
    offsets = np.arange(n)
    d = np.minimum(offsets, n - offsets)
    return GeneratingVector(((d >= 1) & (d <= k)).astype(float))


def circulant(c: GeneratingVector | np.ndarray) -> np.ndarray:
    """Materialize the circulant matrix of a generating vector.

    Entry (i, j) holds c[(i - j) mod n]. For the symmetric vectors produced
    by ring_generating_vector this coincides with placing c in the first row,
    and it is the orientation diagonalized by the Fourier matrix in spectral.
    """
    vec = np.asarray(getattr(c, "c", c), dtype=float)
    n = vec.size
    idx = np.arange(n)
    return vec[(idx[:, None] - idx[None, :]) % n]


def write_edge_list(a: AdjacencyMatrix, path: str | Path) -> None:
    """Plain-text edge list: first line "n m", then m lines "i j" with i < j."""
    iu, ju = np.nonzero(np.triu(a.entries, k=1))
    lines = [f"{a.n} {iu.size}"]
    lines.extend(f"{i} {j}" for i, j in zip(iu, ju))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_edge_list(path: str | Path) -> AdjacencyMatrix:
    text = Path(path).read_text(encoding="ascii")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"empty edge-list file: {path}")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"malformed edge-list header {lines[0]!r}") from exc
    if n < 1 or m < 0 or len(lines) - 1 != m:
        raise ValueError(f"edge-list header promises {m} edges, file has {len(lines) - 1}")
    entries = np.zeros((n, n))
    for ln in lines[1:]:
        try:
            i, j = (int(tok) for tok in ln.split())
        except ValueError as exc:
            raise ValueError(f"malformed edge line {ln!r}") from exc
        if not (0 <= i < j < n):
            raise ValueError(f"edge ({i}, {j}) violates 0 <= i < j < n={n}")
        if entries[i, j] == 1.0:
            raise ValueError(f"duplicate edge ({i}, {j})")
        entries[i, j] = entries[j, i] = 1.0
    return AdjacencyMatrix(n, entries, kind="custom", params={"source": str(path)})
