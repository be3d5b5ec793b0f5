"""Built-in example graphs and their frozen high-precision reference values.

The adjacency matrices are embedded literally (never regenerated) so the
`reproduce` command and the regression digests cannot drift with generator
changes.  Reference digits are stored as printed strings; comparisons happen
at half an ulp of the last printed digit.
"""

from __future__ import annotations

from .graph import Graph, build_graph

__all__ = [
    "E1_ADJACENCY",
    "E2_ADJACENCY",
    "E3_ADJACENCY",
    "example_graph",
    "EXAMPLE_NAMES",
]

# Example e1: a 5-node tree with degree vector (3, 1, 1, 1, 2).
E1_ADJACENCY = (
    (0, 0, 1, 1, 1),
    (0, 0, 0, 0, 1),
    (1, 0, 0, 0, 0),
    (1, 0, 0, 0, 0),
    (1, 1, 0, 0, 0),
)

# Example e2: a 20-node sparse random-graph instance with degree vector
# (4, 4, 8, 3, 7, 4, 12, 4, 7, 6, 7, 6, 10, 6, 6, 6, 6, 5, 4, 5).
E2_ADJACENCY = (
    (0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0),
    (1, 1, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1),
    (0, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1),
    (0, 0, 1, 1, 0, 1, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0),
    (1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0),
    (0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1),
    (0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0),
)

# Example e3: the 10-node graph in which exactly two nodes share a degree;
# degree vector (5, 5, 4, 6, 3, 7, 2, 8, 1, 9), integer Laplacian spectrum.
E3_ADJACENCY = (
    (0, 1, 0, 1, 0, 1, 0, 1, 0, 1),
    (1, 0, 0, 1, 0, 1, 0, 1, 0, 1),
    (0, 0, 0, 1, 0, 1, 0, 1, 0, 1),
    (1, 1, 1, 0, 0, 1, 0, 1, 0, 1),
    (0, 0, 0, 0, 0, 1, 0, 1, 0, 1),
    (1, 1, 1, 1, 1, 0, 0, 1, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 1),
    (1, 1, 1, 1, 1, 1, 1, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 0),
)

EXAMPLE_NAMES = ("e1", "e2", "e3")


def _from_adjacency(adj) -> Graph:
    n = len(adj)
    edges = [
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if adj[i][j]
    ]
    return build_graph(n, edges)


def example_graph(name: str) -> Graph:
    """One of the built-in example graphs: "e1", "e2", or "e3"."""
    try:
        adj = {"e1": E1_ADJACENCY, "e2": E2_ADJACENCY, "e3": E3_ADJACENCY}[name]
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {EXAMPLE_NAMES}") from None
    return _from_adjacency(adj)


# ---------------------------------------------------------------------------
# Frozen reference digits for the regression digests.
# ---------------------------------------------------------------------------

E1_LAPLACIAN_MU = ("4.17009", "2.31111", "1.", "0.518806", "0")

# e2 oracle values
E2_MU2_15 = "11.6199127895910"
E2_MU1_30 = "13.3513926733482839961128497270"
E2_LAMBDA1_ADJ = "6.67615"
E3_LAPLACIAN_MU = (10, 9, 8, 7, 6, 4, 3, 2, 1, 0)

# e2, node 13 (degree 10): Euler-summed series at t = -1.
E2_Q13_XI = {
    2: "10.48154762", 3: "11.00138889", 4: "11.33195709", 5: "11.49508126",
    6: "11.57496760", 7: "11.61206362", 8: "11.62002740", 9: "11.61508019",
    10: "11.61181587", 11: "11.61364728", 12: "11.61699285", 13: "11.61921713",
    14: "11.62029217", 15: "11.62070805", 16: "11.62057580", 17: "11.62009681",
    18: "11.61968541", 19: "11.61958213", 20: "11.61970380", 30: "11.61991367",
}
E2_Q13_XI_15 = {
    10: "11.6118158710925", 20: "11.6197037971111", 30: "11.6199136700045",
    40: "11.6199135474613", 50: "11.6199128258523", 60: "11.6199127874211",
    70: "11.6199127892558", 80: "11.6199127895867", 90: "11.6199127895931",
    100: "11.6199127895912",
}
E2_Q13_DIFF = {
    10: "0.00809692", 20: "0.000208992", 30: "-8.8041349e-7", 40: "-7.5787030e-7",
    50: "-3.6261285e-8", 60: "2.1699282e-9", 70: "3.3520741e-10",
    80: "4.3485215e-12", 90: "-2.0765611e-12", 100: "-1.5099033e-13",
}

# e2, node 7 (degree 12): Euler-summed series at t = -1.
E2_Q7_XI = {
    2: "12.55684524", 3: "12.92105159", 4: "13.10777862", 5: "13.22029144",
    6: "13.28981543", 7: "13.32451888", 8: "13.33893469", 9: "13.34549561",
    10: "13.34889571", 11: "13.35029701", 12: "13.35071509", 13: "13.35094032",
    14: "13.35114508", 15: "13.35126516", 16: "13.35131598", 17: "13.35134956",
    18: "13.35137642", 19: "13.35138894", 20: "13.35139125", 30: "13.35139267",
}
E2_Q7_XI_30 = {
    10: "13.3488957090710433527956303093",
    20: "13.3513912536915562912298783841",
    30: "13.3513926692587838827462033968",
    40: "13.3513926733102103638002761686",
    50: "13.3513926733476992672999617420",
    60: "13.3513926733482839312804648760",
    70: "13.3513926733482839615285740731",
    80: "13.3513926733482839965575848138",
    90: "13.3513926733482839961083203713",
    100: "13.3513926733482839961129243912",
}
E2_Q7_DIFF = {
    10: "0.00249696", 20: "1.41966e-6", 30: "4.08949e-9", 40: "3.80691e-11",
    50: "5.79092e-13", 60: "6.48323e-17", 70: "3.45842e-17",
    80: "-4.4473e-19", 90: "4.52935e-21", 100: "-7.4664234e-23",
}

# e2, node 3 (degree 8): the same Euler sum drifts off after hovering near 9.8.
E2_Q3_XI = {
    2: "8.937500000", 3: "9.593750000", 4: "9.541536458", 5: "9.632552083",
    6: "10.14137146", 7: "9.961090970", 8: "9.152494535", 9: "9.649234801",
    10: "10.87231670", 11: "9.574716849", 12: "7.834417220", 13: "11.10756619",
    14: "13.44103998", 15: "5.881312597", 16: "3.636664041", 17: "20.15673862",
    18: "19.02124175", 19: "-15.77306388", 20: "-0.7480476187", 30: "-1883.697136",
}
