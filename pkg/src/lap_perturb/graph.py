"""Undirected weighted graphs: construction, degree analytics, walks, generators, I/O.

Nodes are addressed 1-based everywhere in the public API (matrices, edge
lists, node arguments); internal storage is 0-based.  Weights stay exact
(int or Fraction) whenever the inputs are exact, so downstream coefficient
computations can run in rational arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational

import numpy as np

__all__ = [
    "Graph",
    "DegreeProfile",
    "WalkCounts",
    "build_graph",
    "degree_profile",
    "closed_walk_counts",
    "laplacian",
    "perturbed_matrix",
    "erdos_renyi",
    "antiregular",
    "ring_with_core",
    "complete_graph",
    "parse_edge_list",
    "format_edge_list",
    "graph_to_json",
    "graph_from_json",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with non-negative edge weights.

    ``weights`` is a tuple of row tuples (symmetric, zero diagonal); entries
    are ints for unweighted graphs and Fractions/floats otherwise.  Instances
    are immutable and safe to share across threads.
    """

    n: int
    weights: tuple
    is_weighted: bool

    @cached_property
    def degrees(self) -> tuple:
        """Nodal strengths: row sums of the weight matrix (1-based order)."""
        return tuple(sum(row) for row in self.weights)

    def weight(self, u: int, v: int):
        """Edge weight between 1-based nodes ``u`` and ``v`` (0 if absent)."""
        return self.weights[u - 1][v - 1]

    def neighbors(self, u: int) -> tuple:
        """1-based indices of nodes adjacent to ``u``."""
        row = self.weights[u - 1]
        return tuple(j + 1 for j, w in enumerate(row) if w != 0)

    def edges(self) -> tuple:
        """All edges as (u, v, weight) with u < v, 1-based."""
        out = []
        for i in range(self.n):
            row = self.weights[i]
            for j in range(i + 1, self.n):
                if row[j] != 0:
                    out.append((i + 1, j + 1, row[j]))
        return tuple(out)

    def adjacency_array(self) -> np.ndarray:
        """Weight matrix as a float64 numpy array (for double-precision paths)."""
        return np.array([[float(w) for w in row] for row in self.weights])


@dataclass(frozen=True)
class DegreeProfile:
    """Degrees, the set of unique-degree nodes, and their degree-gap parameter.

    ``kappa_per_node[q]`` is the reciprocal of the smallest degree gap
    ``|d_q - d_k|`` over ``k != q``; it is defined only for nodes whose
    degree no other node shares.
    """

    degrees: tuple
    unique_nodes: frozenset
    kappa_per_node: dict

    def kappa(self, q: int):
        return self.kappa_per_node[q]


@dataclass(frozen=True)
class WalkCounts:
    """Closed-walk counts (A^m)_qq for m = 0..M at a single node."""

    node: int
    counts: tuple

    @property
    def max_order(self) -> int:
        return len(self.counts) - 1


def build_graph(n: int, edges) -> Graph:
    """Build a graph from 1-based edges ``(u, v)`` or ``(u, v, weight)``.

    Rejects self-loops, duplicate unordered pairs, out-of-range indices and
    non-positive weights.  ``is_weighted`` is set iff any weight differs
    from 1.
    """
    if n < 0:
        raise ValueError("node count must be non-negative")
    rows = [[0] * n for _ in range(n)]
    seen = set()
    weighted = False
    for edge in edges:
        if len(edge) == 2:
            u, v = edge
            w = 1
        elif len(edge) == 3:
            u, v, w = edge
        else:
            raise ValueError(f"edge must be (u, v) or (u, v, weight): {edge!r}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
        if u == v:
            raise ValueError(f"self-loop at node {u} is not allowed")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        if not w > 0:
            raise ValueError(f"edge {key} has non-positive weight {w!r}")
        if w != 1:
            weighted = True
        rows[u - 1][v - 1] = w
        rows[v - 1][u - 1] = w
    return Graph(n=n, weights=tuple(tuple(r) for r in rows), is_weighted=weighted)


def degree_profile(g: Graph) -> DegreeProfile:
    """Degrees, unique-degree nodes, and per-node kappa = 1/min gap."""
    d = g.degrees
    unique = frozenset(
        i + 1
        for i in range(g.n)
        if all(d[i] != d[k] for k in range(g.n) if k != i)
    )
    kappa = {}
    for q in unique:
        gaps = [abs(d[q - 1] - d[k]) for k in range(g.n) if k != q - 1]
        if not gaps:
            continue
        gap = min(gaps)
        if isinstance(gap, Rational):
            kappa[q] = Fraction(1, 1) / gap
        else:
            kappa[q] = 1.0 / gap
    return DegreeProfile(degrees=d, unique_nodes=unique, kappa_per_node=kappa)


def closed_walk_counts(g: Graph, q: int, M: int) -> WalkCounts:
    """Counts (A^m)_qq for m = 0..M via iterated matrix-vector products.

    Exact integers for unweighted graphs and exact rationals for rational
    weights; arbitrary walk lengths are safe (Python bignums).
    """
    if M < 0:
        raise ValueError("M must be non-negative")
    if not (1 <= q <= g.n):
        raise ValueError(f"node {q} out of range")
    qi = q - 1
    vec = [0] * g.n
    vec[qi] = 1
    counts = [1]
    rows = g.weights
    for _ in range(M):
        vec = [sum(rows[i][j] * vec[j] for j in range(g.n) if vec[j] != 0) for i in range(g.n)]
        counts.append(vec[qi])
    return WalkCounts(node=q, counts=tuple(counts))


def laplacian(g: Graph) -> tuple:
    """Laplacian diag(degrees) - weights as a tuple of rows; rows sum to zero."""
    return perturbed_matrix(g, -1)


def perturbed_matrix(g: Graph, zeta) -> tuple:
    """diag(degrees) + zeta * weights; zeta = -1 is the Laplacian, +1 the signless one."""
    d = g.degrees
    out = []
    for i in range(g.n):
        row = list(g.weights[i])
        for j in range(g.n):
            row[j] = zeta * row[j]
        row[i] = row[i] + d[i]
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# Generators.  All are pure functions of their arguments (including seed).
# ---------------------------------------------------------------------------

_SM64_MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple:
    """One step of the splitmix64 generator; returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _SM64_MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _SM64_MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _SM64_MASK
    z ^= z >> 31
    return state, z


def erdos_renyi(n: int, p, seed: int) -> Graph:
    """G(n, p): each unordered pair is an edge independently with probability p.

    Uses the splitmix64 generator so results are identical across platforms
    and library versions: pair (u, v) with u < v (lexicographic order) gets
    the next 64-bit draw z, and the edge exists iff z < floor(p * 2^64).
    """
    p = Fraction(p)
    if not (0 <= p <= 1):
        raise ValueError("p must lie in [0, 1]")
    threshold = int(p * (1 << 64))
    state = seed & _SM64_MASK
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            state, z = _splitmix64(state)
            if z < threshold:
                edges.append((u, v))
    return build_graph(n, edges)


def antiregular(n: int) -> Graph:
    """Graph on n nodes where exactly two nodes share a degree, all others unique.

    Construction: node j joins every lower-indexed node iff j is even.  For
    n = 10 this yields the degree vector (5, 5, 4, 6, 3, 7, 2, 8, 1, 9) and
    an integer Laplacian spectrum.
    """
    if n < 2:
        raise ValueError("antiregular graphs need at least 2 nodes")
    edges = [(i, j) for j in range(2, n + 1, 2) for i in range(1, j)]
    return build_graph(n, edges)


def ring_with_core(n: int, k: int) -> Graph:
    """Core node 1 adjacent to all; nodes 2..n form a 2k-nearest-neighbor ring.

    Node 1 gets the unique degree n - 1 while every ring node has degree
    2k + 1, so the core degree is unique iff 2k + 2 < n (enforced).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 2 * k + 2 < n:
        raise ValueError(f"need 2k + 2 < n for a unique core degree (n={n}, k={k})")
    m = n - 1  # ring size
    edges = [(1, v) for v in range(2, n + 1)]
    for i in range(m):
        for s in range(1, k + 1):
            # k < m/2, so each ring edge appears for exactly one (i, s)
            j = (i + s) % m
            edges.append((2 + i, 2 + j) if i < j else (2 + j, 2 + i))
    return build_graph(n, edges)


def complete_graph(n: int) -> Graph:
    """Complete graph K_n."""
    return build_graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


# ---------------------------------------------------------------------------
# Edge-list and JSON formats.
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: header ``n <count>``, lines ``u v [weight]``.

    ``#`` starts a comment; indices are 1-based; weights parse as exact
    rationals (decimal or p/q notation).
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "n" or len(parts) != 2:
                raise ValueError(f"line {lineno}: expected header 'n <count>'")
            n = int(parts[1])
            continue
        if len(parts) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'u v [weight]'")
        u, v = int(parts[0]), int(parts[1])
        if len(parts) == 3:
            w = Fraction(parts[2])
            w = int(w) if w.denominator == 1 else w
            edges.append((u, v, w))
        else:
            edges.append((u, v))
    if n is None:
        raise ValueError("missing 'n <count>' header line")
    return build_graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    for u, v, w in g.edges():
        lines.append(f"{u} {v}" if w == 1 else f"{u} {v} {w}")
    return "\n".join(lines) + "\n"


def _weight_to_json(w):
    if isinstance(w, Fraction) and w.denominator != 1:
        return f"{w.numerator}/{w.denominator}"
    if isinstance(w, Fraction):
        return int(w)
    return w


def graph_to_json(g: Graph) -> str:
    edges = [[u, v, _weight_to_json(w)] for u, v, w in g.edges()]
    return json.dumps({"n": g.n, "edges": edges})


def graph_from_json(text: str) -> Graph:
    data = json.loads(text)
    edges = []
    for u, v, w in data["edges"]:
        if isinstance(w, str):
            w = Fraction(w)
        edges.append((u, v, w))
    return build_graph(data["n"], edges)
