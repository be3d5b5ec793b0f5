"""Sweep orchestration: seeded ensembles, convergence classification, CSV rows.

A sweep draws graphs from a generator ensemble (or evaluates a single
graph), expands around selected unique-degree nodes, classifies each Euler
series at (alpha_threshold, K_check), and reports the converged fraction per
(n, p) cell.  Everything is deterministic given the config seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .domain import NumberDomain, exact_domain, parse_number
from .eigen import symmetric_eigen
from .euler import EulerParams, convergence_classify, euler_series
from .graph import (
    Graph,
    antiregular,
    complete_graph,
    degree_profile,
    erdos_renyi,
    laplacian,
    parse_edge_list,
    ring_with_core,
)
from .perturb import coefficients

__all__ = [
    "ExperimentConfig",
    "SweepCell",
    "TrialRecord",
    "run_sweep",
    "select_nodes",
    "resolve_graph_source",
]


def resolve_graph_source(spec: str) -> Graph:
    """Turn a source spec into a Graph.

    Accepted forms: "example:e1|e2|e3", "file:PATH" (edge-list format),
    "ring_with_core:n,k", "antiregular:n", "complete:n",
    "erdos_renyi:n,p,seed".
    """
    from .examples_data import example_graph

    kind, _, rest = spec.partition(":")
    if kind == "example":
        return example_graph(rest)
    if kind == "file":
        from pathlib import Path

        return parse_edge_list(Path(rest).read_text())
    if kind == "ring_with_core":
        n, k = (int(v) for v in rest.split(","))
        return ring_with_core(n, k)
    if kind == "antiregular":
        return antiregular(int(rest))
    if kind == "complete":
        return complete_graph(int(rest))
    if kind == "erdos_renyi":
        n, p, seed = rest.split(",")
        return erdos_renyi(int(n), parse_number(p), int(seed))
    raise ValueError(f"unknown graph source: {spec!r}")

CELL_HEADER = ("n", "p", "t", "trials", "skipped", "converged", "fraction")
DETAIL_HEADER = ("q", "t", "K", "xi", "alpha", "matched_mu", "converged")


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep parameters; mirrors the JSON config format field for field.

    ``graph_source`` is "erdos_renyi" for ensembles (then ``n_grid``,
    ``p_grid`` and ``trials`` apply) or any single-graph spec accepted by
    the CLI ("example:e2", "file:PATH", "ring_with_core:21,1", ...).
    ``q_selector`` is a 1-based node index, "max_unique_degree", or
    "all_unique".
    """

    graph_source: str = "erdos_renyi"
    q_selector: object = "max_unique_degree"
    t_grid: tuple = (Fraction(-1),)
    zeta: object = Fraction(-1)
    K_max: int = 30
    domain: NumberDomain = field(default_factory=exact_domain)
    seed: int = 0
    alpha_threshold: float = -4.0
    K_check: int = 30
    trials: int = 1000
    n_grid: tuple = (20,)
    p_grid: tuple = (Fraction(1, 5),)

    def __post_init__(self) -> None:
        for t in self.t_grid:
            if 1 + t * self.zeta == 0:
                raise ValueError(f"t = {t} is singular for zeta = {self.zeta}")
        if self.K_check > self.K_max:
            raise ValueError("K_check cannot exceed K_max")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        import json

        data = json.loads(text)
        kwargs = {}
        for key in ("graph_source", "seed", "K_max", "K_check", "trials", "alpha_threshold"):
            if key in data:
                kwargs[key] = data[key]
        if "q_selector" in data:
            kwargs["q_selector"] = data["q_selector"]
        if "zeta" in data:
            kwargs["zeta"] = parse_number(str(data["zeta"]))
        if "t_grid" in data:
            kwargs["t_grid"] = tuple(parse_number(str(t)) for t in data["t_grid"])
        if "n_grid" in data:
            kwargs["n_grid"] = tuple(int(n) for n in data["n_grid"])
        if "p_grid" in data:
            kwargs["p_grid"] = tuple(parse_number(str(p)) for p in data["p_grid"])
        if "domain" in data:
            d = data["domain"]
            kwargs["domain"] = (
                exact_domain() if d == "exact_rational"
                else NumberDomain("float", int(d.get("precision_bits", 128)))
                if isinstance(d, dict) else NumberDomain("float", 128)
            )
        return cls(**kwargs)


@dataclass(frozen=True)
class SweepCell:
    n: int
    p: object
    t: object
    trials: int
    skipped: int
    converged: int

    @property
    def fraction(self) -> float:
        return self.converged / self.trials if self.trials else 0.0

    def row(self) -> tuple:
        return (self.n, str(self.p), str(self.t), self.trials, self.skipped,
                self.converged, f"{self.fraction:.6f}")


@dataclass(frozen=True)
class TrialRecord:
    q: int
    t: object
    K: int
    xi: float
    alpha: float
    matched_mu: float
    converged: bool

    def row(self) -> tuple:
        return (self.q, str(self.t), self.K, repr(self.xi), f"{self.alpha:.6f}",
                repr(self.matched_mu), str(self.converged).lower())


def select_nodes(g: Graph, q_selector) -> tuple:
    """Resolve a q_selector against a graph; empty tuple when nothing qualifies."""
    profile = degree_profile(g)
    if isinstance(q_selector, int):
        return (q_selector,) if q_selector in profile.unique_nodes else ()
    if q_selector == "max_unique_degree":
        if not profile.unique_nodes:
            return ()
        return (max(profile.unique_nodes, key=lambda u: profile.degrees[u - 1]),)
    if q_selector == "all_unique":
        return tuple(sorted(profile.unique_nodes))
    raise ValueError(f"unknown q_selector: {q_selector!r}")


def _classify(g: Graph, q: int, t, config: ExperimentConfig):
    table = coefficients(g, q, config.K_max, config.domain)
    series = euler_series(table, EulerParams(t=t, zeta=config.zeta, K_max=config.K_max))
    mus = [float(v) for v in symmetric_eigen(laplacian(g)).eigenvalues]
    report = convergence_classify(series, mus, config.alpha_threshold, config.K_check)
    xi = series.at(config.K_check)
    return TrialRecord(
        q=q, t=t, K=config.K_check,
        xi=float(xi) if abs(float(xi)) < 1e300 else float("inf"),
        alpha=report.alphas[config.K_check],
        matched_mu=float(report.matched_mu),
        converged=report.converged,
    ), report


def run_sweep(config: ExperimentConfig, detail: bool = False):
    """Run the sweep; returns (cells, detail_records).

    Ensemble mode ("erdos_renyi") runs ``config.trials`` seeded graphs per
    (n, p) cell; trial i of cell c uses seed ``config.seed + 1_000_003*c + i``
    so runs are reproducible and cells independent.  Trials whose graph has
    no node matching the selector are counted as skipped, not as failures.
    """
    cells = []
    details = []
    if config.graph_source == "erdos_renyi":
        cell_index = 0
        for n in config.n_grid:
            for p in config.p_grid:
                for t in config.t_grid:
                    skipped = 0
                    converged = 0
                    for i in range(config.trials):
                        seed = config.seed + 1_000_003 * cell_index + i
                        g = erdos_renyi(n, p, seed)
                        nodes = select_nodes(g, config.q_selector)
                        if not nodes:
                            skipped += 1
                            continue
                        for q in nodes:
                            record, _ = _classify(g, q, t, config)
                            converged += record.converged
                            if detail:
                                details.append(record)
                    cells.append(SweepCell(n=n, p=p, t=t, trials=config.trials,
                                           skipped=skipped, converged=converged))
                cell_index += 1
        return tuple(cells), tuple(details)

    g = resolve_graph_source(config.graph_source)  # single-graph degenerate sweep
    nodes = select_nodes(g, config.q_selector)
    for t in config.t_grid:
        converged = 0
        for q in nodes:
            record, _ = _classify(g, q, t, config)
            converged += record.converged
            details.append(record)
        cells.append(SweepCell(n=g.n, p="", t=t, trials=max(len(nodes), 1),
                               skipped=0 if nodes else 1, converged=converged))
    return tuple(cells), tuple(details)
