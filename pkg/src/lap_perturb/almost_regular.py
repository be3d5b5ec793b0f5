"""Closed-form series machinery for graphs with one high-degree node.

An "almost regular" graph has a single special node (index 1) of degree
d_max while every other node shares a common degree r; x = d_max - r is the
degree gap.  For these graphs the perturbation coefficients c_m have a
closed form in the characteristic coefficients

    A[k, m] = sum over compositions m = j_1 + ... + j_k (j_i > 0)
              of prod_i (A^{j_i})_11,

built from closed-walk counts at the special node.  This module provides
the A[k, m] recursion, the closed form and the specialized recursion for
c_m, complete-graph formulas and bounds for A[k, m], the eigenvalue series
and its Euler transform, and a contour-integral evaluation of the same
eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .domain import NumberDomain, to_mpf
from .eigen import symmetric_eigen
from .euler import binomial, euler_transform_generic
from .graph import Graph, WalkCounts, closed_walk_counts
from .perturb import SeriesEvaluation

__all__ = [
    "AlmostRegularGraph",
    "ChcTable",
    "ContourResult",
    "ContourError",
    "almost_regular",
    "chc_build",
    "cm_closed_form",
    "cm_recursion",
    "complete_graph_chc",
    "chc_bound",
    "chc_bound_half",
    "almost_regular_series",
    "almost_regular_euler",
    "contour_eigenvalue",
    "chc_table_to_csv",
]


class ContourError(RuntimeError):
    """Contour evaluation failed: pole enclosed, branch violated, or no convergence."""


@dataclass(frozen=True)
class AlmostRegularGraph:
    """A graph whose node 1 has the unique top degree and all others share degree r."""

    graph: Graph
    special: int
    r: object
    x: object


def almost_regular(g: Graph) -> AlmostRegularGraph:
    """Validate and wrap a graph with one high-degree node (node 1 by convention)."""
    d = g.degrees
    if g.n < 2:
        raise ValueError("need at least two nodes")
    rest = d[1:]
    r = rest[0]
    if any(di != r for di in rest):
        raise ValueError("nodes 2..n must share a common degree")
    if not d[0] > r:
        raise ValueError("node 1 must have the strictly largest degree")
    return AlmostRegularGraph(graph=g, special=1, r=r, x=d[0] - r)


@dataclass(frozen=True)
class ChcTable:
    """Characteristic coefficients A[k, m] for 1 <= k <= m <= M at node 1.

    ``A[k, m] = 0`` whenever k > m/2 because (A^1)_11 = 0; out-of-range
    lookups return 0.
    """

    walks: WalkCounts
    M: int
    values: tuple  # values[k-1][m-1]

    def value(self, k: int, m: int):
        if k < 1 or m < 1:
            raise ValueError("k and m must be positive")
        if k > m:
            return 0
        if m > self.M:
            raise IndexError(f"m = {m} beyond table order {self.M}")
        return self.values[k - 1][m - 1]


def chc_build(walks: WalkCounts, M: int) -> ChcTable:
    """Build A[k, m] from A[1, m] = (A^m)_11 via the composition recursion

        A[k, m] = sum_{j=1}^{m-k+1} (A^j)_11 A[k-1, m-j].
    """
    if walks.max_order < M:
        raise ValueError(f"walk counts cover m <= {walks.max_order}, need {M}")
    w = walks.counts
    rows = [[w[m] for m in range(1, M + 1)]]
    for k in range(2, M + 1):
        prev = rows[-1]
        row = [0] * M
        for m in range(k, M + 1):
            row[m - 1] = sum(w[j] * prev[m - j - 1] for j in range(1, m - k + 2))
        rows.append(row)
    return ChcTable(walks=walks, M=M, values=tuple(tuple(r) for r in rows))


def _g_weight(k: int, m: int) -> Fraction:
    """g_k(m) = ((-1)^(k-1) / k) C(m+k-2, k-1); g_1(m) = 1."""
    return Fraction((-1) ** (k - 1), k) * binomial(m + k - 2, k - 1)


def cm_closed_form(arg: AlmostRegularGraph, chc: ChcTable, m: int) -> Fraction:
    """c_m = x^(1-m) sum_{k=1}^{m} g_k(m) A[k, m], exact.

    The k-sum may run to m instead of floor(m/2) because A[k, m] vanishes
    beyond that point.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if chc.M < m:
        raise ValueError(f"chc table covers m <= {chc.M}")
    total = sum(_g_weight(k, m) * chc.value(k, m) for k in range(1, m + 1))
    return Fraction(total) / Fraction(arg.x) ** (m - 1)


def cm_recursion(arg: AlmostRegularGraph, K: int) -> tuple:
    """c_2..c_K by the specialized beta recursion with the constant gap x.

    Iterates, for l != 1,

        beta_jl = ( sum_{m != 1} beta_{j-1,m} a_lm
                    - sum_m a_1m sum_{k=1}^{j-2} beta_kl beta_{j-k-1,m} ) / x,

    from beta_1l = a_l1 / x, and reads off c_{j+1} = sum_l beta_jl a_1l.
    Independent of the general engine; used to cross-check the closed form.
    """
    if K < 2:
        raise ValueError("K must be at least 2")
    g = arg.graph
    n = g.n
    a = [[Fraction(w) for w in row] for row in g.weights]
    x = Fraction(arg.x)
    others = list(range(1, n))

    beta = []  # beta[j-1][l] for l in 0..n-1 with slot 0 unused (kept 0)
    row1 = [Fraction(0)] * n
    for l in others:
        row1[l] = a[l][0] / x
    beta.append(row1)
    c = {2: sum(row1[l] * a[0][l] for l in others)}

    for j in range(2, K):
        prev = beta[j - 2]
        row = [Fraction(0)] * n
        for l in others:
            s = sum(prev[m] * a[l][m] for m in others)
            for m in others:
                if a[0][m] == 0:
                    continue
                conv = sum(beta[k - 1][l] * beta[j - k - 2][m] for k in range(1, j - 1))
                s -= a[0][m] * conv
            row[l] = s / x
        beta.append(row)
        c[j + 1] = sum(row[l] * a[0][l] for l in others)
    return tuple(c[j] for j in range(2, K + 1))


def complete_graph_chc(N: int, k: int, m: int) -> int:
    """A[k, m] for the complete graph K_N in closed form (exact integer):

        (-1)^m (N-1)^k sum_r C(k+r-1, r) C(m-k-r-1, m-2k-r) (-1)^r (N-1)^r.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if k < 1 or m < 2:
        raise ValueError("need k >= 1 and m >= 2")
    total = 0
    for r in range(0, m - 2 * k + 1):
        total += (
            binomial(k + r - 1, r)
            * binomial(m - k - r - 1, m - 2 * k - r)
            * (-1) ** r
            * (N - 1) ** r
        )
    return (-1) ** m * (N - 1) ** k * total


def chc_bound(N: int, k: int, m: int) -> Fraction:
    """Upper bound for |A[k, m]| valid for 2k <= m, N >= 3:

        (N-1)^m / (N-1-(m-2k)/(m-k))^k * (m-k)^(m-k) / ((m-2k)^(m-2k) k^k),

    with the 0^0 = 1 convention at m = 2k (where the bound is exact).
    """
    if N < 3:
        raise ValueError("bound requires N >= 3")
    if k < 1 or 2 * k > m:
        raise ValueError("bound holds in the region 1 <= k <= m/2")
    # 0^0 = 1 at m = 2k: both (m-2k)^(m-2k) and the optimizer x = (m-2k)/(m-k)
    # degenerate consistently there.
    base = Fraction(N - 1) - Fraction(m - 2 * k, m - k)
    num = Fraction(N - 1) ** m * Fraction(m - k) ** (m - k)
    den = base**k * Fraction(max(m - 2 * k, 1)) ** (m - 2 * k) * Fraction(k) ** k
    return num / den


def chc_bound_half(N: int, k: int, m: int) -> Fraction:
    """The x = 1/2 variant of the bound: 2^(m-k) (N-1)^m / (N-3/2)^k."""
    if N < 3:
        raise ValueError("bound requires N >= 3")
    if k < 1 or 2 * k > m:
        raise ValueError("bound holds in the region 1 <= k <= m/2")
    return Fraction(2) ** (m - k) * Fraction(N - 1) ** m / Fraction(2 * N - 3, 2) ** k


def _coefficient_stream(arg: AlmostRegularGraph, K: int) -> list:
    walks = closed_walk_counts(arg.graph, arg.special, K)
    chc = chc_build(walks, K)
    return [Fraction(0)] + [cm_closed_form(arg, chc, m) for m in range(2, K + 1)]


def almost_regular_series(arg: AlmostRegularGraph, zeta, K: int,
                          domain: NumberDomain | None = None) -> SeriesEvaluation:
    """Partial sums d_q + x sum_m (sum_k g_k(m) A[k, m]) (zeta/x)^m up to K."""
    if K < 2:
        raise ValueError("K must be at least 2")
    coeffs = _coefficient_stream(arg, K)
    d_q = arg.graph.degrees[arg.special - 1]
    if domain is not None and not domain.is_exact:
        with domain.context():
            z = domain.coerce(zeta)
            acc = to_mpf(d_q)
            sums = {}
            zpow = z
            for m in range(2, K + 1):
                zpow = zpow * z
                acc = acc + to_mpf(coeffs[m - 1]) * zpow
                sums[m] = acc
            return SeriesEvaluation(q=arg.special, zeta=z, kind="taylor", partial_sums=sums)
    z = Fraction(zeta)
    sums = {}
    acc = Fraction(d_q)
    zpow = z
    for m in range(2, K + 1):
        zpow = zpow * z
        acc = acc + coeffs[m - 1] * zpow
        sums[m] = acc
    return SeriesEvaluation(q=arg.special, zeta=z, kind="taylor", partial_sums=sums)


def almost_regular_euler(arg: AlmostRegularGraph, zeta, t, K: int) -> SeriesEvaluation:
    """Euler t-transform of the almost-regular series, exact in rationals.

    t = 0 reduces term-by-term to the plain series.
    """
    if K < 2:
        raise ValueError("K must be at least 2")
    z = Fraction(zeta)
    tt = Fraction(t)
    if 1 + tt * z == 0:
        raise ValueError("singular transform: 1 + t*zeta = 0")
    coeffs = _coefficient_stream(arg, K)
    d_q = Fraction(arg.graph.degrees[arg.special - 1])
    partials = euler_transform_generic(d_q, coeffs, tt, z, K)
    sums = {m: partials[m] for m in range(2, K + 1)}
    return SeriesEvaluation(q=arg.special, zeta=z, kind="euler", partial_sums=sums, t=tt)


@dataclass(frozen=True)
class ContourResult:
    """Converged contour evaluation plus its quadrature diagnostics."""

    value: object
    radius: object
    points: int
    branch_ok: bool
    last_change: object


def contour_eigenvalue(
    arg: AlmostRegularGraph,
    zeta,
    radius=None,
    quad_points: int = 512,
    precision_bits: int = 128,
    rel_tol=1e-10,
    max_points: int = 2**14,
) -> ContourResult:
    """Evaluate the eigenvalue near d_max as a circle contour integral:

        d_q + (zeta / (2 pi r)) * integral e^{-i theta}
              log(1 - zeta e^{-i theta} / (x r f(r e^{i theta}))) d theta,

    where f(z) = sum_k ((v_k)_1)^2 / (1 - lambda_k z) is the closed-walk
    generating function at node 1, from the adjacency spectral decomposition.
    Uses the periodic trapezoid rule with point doubling until the value
    changes by less than rel_tol (relative).

    Raises ContourError when the circle encloses the generating function's
    nearest pole (radius >= 1/lambda_1), when |zeta/(x z f(z))| >= 1
    somewhere on the circle (log branch condition), or when doubling up to
    ``max_points`` does not converge.
    """
    if quad_points < 4 or quad_points & (quad_points - 1) != 0:
        raise ValueError("quad_points must be a power of two, at least 4")
    g = arg.graph
    with mpmath.workprec(precision_bits):
        spec = symmetric_eigen(g.weights, precision_bits=precision_bits)
        lam = [to_mpf(v) for v in spec.eigenvalues]
        wts = [to_mpf(col[0]) ** 2 for col in spec.eigenvectors]
        lam1 = lam[0]
        if lam1 <= 0:
            raise ContourError("adjacency spectral radius must be positive")
        pole = 1 / lam1
        r = to_mpf(radius) if radius is not None else pole / 2
        if not 0 < r < pole:
            raise ContourError(
                f"radius {mpmath.nstr(r, 8)} encloses the generating-function pole at "
                f"{mpmath.nstr(pole, 8)}"
            )
        z = to_mpf(zeta)
        x = to_mpf(arg.x)
        d_q = to_mpf(g.degrees[arg.special - 1])
        if z == 0:
            return ContourResult(value=d_q, radius=r, points=quad_points,
                                 branch_ok=True, last_change=mpmath.mpf(0))

        def f_gen(zz):
            return sum(w / (1 - lv * zz) for w, lv in zip(wts, lam))

        def integrand(theta):
            zz = r * mpmath.expjpi(2 * theta)  # theta in turns: e^{2 pi i theta}
            fval = f_gen(zz)
            ratio = z / (x * zz * fval)
            if abs(ratio) >= 1:
                raise ContourError(
                    f"branch condition violated on the contour: |zeta/(x z f(z))| = "
                    f"{mpmath.nstr(abs(ratio), 8)} >= 1"
                )
            return mpmath.conj(mpmath.expjpi(2 * theta)) * mpmath.log(1 - ratio)

        P = quad_points
        total = sum(integrand(mpmath.mpf(i) / P) for i in range(P))
        value = d_q + (z / (r * P)) * total.real
        while True:
            odd = sum(integrand(mpmath.mpf(2 * i + 1) / (2 * P)) for i in range(P))
            total = total + odd
            P *= 2
            new_value = d_q + (z / (r * P)) * total.real
            change = abs(new_value - value)
            value = new_value
            if change <= to_mpf(rel_tol) * max(1, abs(value)):
                break
            if P >= max_points:
                raise ContourError(
                    f"quadrature did not converge by {max_points} points "
                    f"(last change {mpmath.nstr(change, 6)})"
                )
        return ContourResult(value=value, radius=r, points=P, branch_ok=True,
                             last_change=change)


def chc_table_to_csv(chc: ChcTable) -> str:
    """CSV rows ``k,m,value`` over the stored triangle."""
    lines = ["k,m,value"]
    for k in range(1, chc.M + 1):
        for m in range(k, chc.M + 1):
            lines.append(f"{k},{m},{chc.value(k, m)}")
    return "\r\n".join(lines) + "\r\n"
