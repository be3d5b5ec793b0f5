"""Shared seeded graph samplers for the property-style tests."""

from __future__ import annotations

from fractions import Fraction

from lap_perturb.graph import Graph, build_graph, degree_profile, erdos_renyi


def random_unique_degree_graphs(count: int, max_n: int = 12):
    """Seeded stream of (graph, q) pairs where q has the largest unique degree."""
    found = []
    seed = 0
    while len(found) < count:
        seed += 1
        n = 4 + seed % (max_n - 3)
        p = (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))[seed % 3]
        g = erdos_renyi(n, p, 10_000 + seed)
        profile = degree_profile(g)
        if not profile.unique_nodes:
            continue
        q = max(profile.unique_nodes, key=lambda u: profile.degrees[u - 1])
        found.append((g, q))
    return found


def random_tree(n: int, seed: int) -> Graph:
    """Random attachment tree: node j links to an earlier node chosen by a LCG."""
    state = seed
    edges = []
    for j in range(2, n + 1):
        state = (1103515245 * state + 12345) % (1 << 31)
        edges.append((1 + state % (j - 1), j))
    return build_graph(n, edges)
