"""Perturbation coefficients of eigenvalues of diag(d) + zeta*A around a unique degree.

For a node q whose (weighted) degree no other node shares, the eigenvalue of
the matrix diag(degrees) + zeta * weights branching from d_q is an analytic
function of zeta.  This module computes its Taylor coefficients c_j(q) and
the eigenvector expansion coefficients beta_jr by recursion, provides the
closed neighbor-sum formulas for c2..c4 as an independent cross-check, and
evaluates truncated series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .domain import NumberDomain, exact_domain, float_domain, format_rational
from .graph import Graph, closed_walk_counts, degree_profile

__all__ = [
    "NonUniqueDegreeError",
    "CoefficientTable",
    "SeriesEvaluation",
    "default_domain",
    "coefficients",
    "explicit_c2_c3_c4",
    "coefficient_bounds_ok",
    "CoefficientBoundsReport",
    "taylor_partial_sums",
    "reconstruct_eigenvector",
    "coefficient_table_to_json",
]


class NonUniqueDegreeError(ValueError):
    """The expansion node's degree is shared by another node."""


@dataclass(frozen=True)
class CoefficientTable:
    """Perturbation coefficients c_2..c_K and the beta table for one node.

    ``c[j - 2]`` holds c_j; c_0 = d_q and c_1 = 0 are implicit.  ``beta[j - 1]``
    is the row (beta_j1, ..., beta_jN) with beta_jq = 0 by the eigenvector
    scaling choice.  Values are Fractions in exact mode, mpmath reals otherwise.
    """

    q: int
    K: int
    d_q: object
    c: tuple
    beta: tuple
    domain: NumberDomain

    def c_at(self, j: int):
        """Coefficient c_j for 1 <= j <= K."""
        if j == 1:
            return self.c[0] * 0
        if not 2 <= j <= self.K:
            raise IndexError(f"c_{j} not stored (K = {self.K})")
        return self.c[j - 2]

    def bit_length_profile(self) -> tuple:
        """(j, numerator bits, denominator bits) per order in exact mode.

        Rational growth is never truncated; this diagnostic makes it visible.
        """
        if not self.domain.is_exact:
            raise ValueError("bit lengths are defined for exact_rational tables only")
        return tuple(
            (j, abs(cj.numerator).bit_length(), cj.denominator.bit_length())
            for j, cj in zip(range(2, self.K + 1), self.c)
        )


@dataclass(frozen=True)
class SeriesEvaluation:
    """Partial sums of a truncated eigenvalue series, indexed by order K.

    ``kind`` is "taylor" for plain partial sums and "euler" for the
    t-transformed series (then ``t`` is set).
    """

    q: int
    zeta: object
    kind: str
    partial_sums: dict
    t: object = None

    def at(self, K: int):
        return self.partial_sums[K]

    @property
    def orders(self) -> tuple:
        return tuple(sorted(self.partial_sums))


def default_domain(g: Graph, *values) -> NumberDomain:
    """Exact rationals when the graph and all extra values are rational, else 128-bit floats."""
    def _rational(x):
        return isinstance(x, (int, Fraction)) or getattr(x, "denominator", None) is not None

    if all(_rational(w) for row in g.weights for w in row) and all(_rational(v) for v in values):
        return exact_domain()
    return float_domain(128)


def _coerced_rows(g: Graph, domain: NumberDomain):
    rows = [[domain.coerce(w) for w in row] for row in g.weights]
    degrees = [sum(row) for row in rows]
    return rows, degrees


def coefficients(g: Graph, q: int, K: int, domain: NumberDomain | None = None) -> CoefficientTable:
    """Coefficient table via the beta recursion around the unique degree d_q.

    beta_1r = a_rq / (d_q - d_r) and, for j > 1,

        beta_jr = (sum_{l != q} beta_{j-1,l} a_rl
                   - sum_{k=1}^{j-2} beta_kr c_{j-k}) / (d_q - d_r),

    where the c convolution reuses c_m = sum_{l != q} beta_{m-1,l} a_ql, the
    same sum that defines the coefficients; this keeps the total cost at
    O(K^2 N + K N^2).  Rows and coefficients are produced interleaved:
    beta_1, c_2, beta_2, c_3, ..., beta_K.
    """
    if K < 2:
        raise ValueError("K must be at least 2")
    profile = degree_profile(g)
    if q not in profile.unique_nodes:
        raise NonUniqueDegreeError(f"node {q} does not have a unique degree")
    if domain is None:
        domain = default_domain(g)

    with domain.context():
        a, d = _coerced_rows(g, domain)
        n = g.n
        qi = q - 1
        others = [r for r in range(n) if r != qi]
        zero = d[qi] * 0
        inv_gap = [zero] * n
        for r in others:
            inv_gap[r] = 1 / (d[qi] - d[r])

        beta_rows = []
        c = {}
        row1 = [zero] * n
        for r in others:
            row1[r] = a[r][qi] * inv_gap[r]
        beta_rows.append(row1)
        c[2] = sum(row1[r] * a[qi][r] for r in others)

        for j in range(2, K + 1):
            prev = beta_rows[j - 2]
            row = [zero] * n
            for r in others:
                s = sum(prev[l] * a[r][l] for l in others)
                for k in range(1, j - 1):
                    s -= beta_rows[k - 1][r] * c[j - k]
                row[r] = s * inv_gap[r]
            beta_rows.append(row)
            if j + 1 <= K:
                c[j + 1] = sum(row[r] * a[qi][r] for r in others)

        return CoefficientTable(
            q=q,
            K=K,
            d_q=d[qi],
            c=tuple(c[j] for j in range(2, K + 1)),
            beta=tuple(tuple(row) for row in beta_rows),
            domain=domain,
        )


def explicit_c2_c3_c4(g: Graph, q: int, domain: NumberDomain | None = None) -> tuple:
    """c2, c3, c4 from the closed neighbor-sum formulas (independent of the recursion).

    c2 sums squared weights over reciprocal degree gaps; c3 runs over
    mutually connected neighbor pairs of q; c4 adds the triple neighbor sum
    minus a squared-gap correction.  Matches ``coefficients`` exactly in
    rational arithmetic.
    """
    profile = degree_profile(g)
    if q not in profile.unique_nodes:
        raise NonUniqueDegreeError(f"node {q} does not have a unique degree")
    if domain is None:
        domain = default_domain(g)

    with domain.context():
        a, d = _coerced_rows(g, domain)
        n = g.n
        qi = q - 1
        others = [r for r in range(n) if r != qi]
        inv = {r: 1 / (d[qi] - d[r]) for r in others}

        c2 = sum(a[r][qi] ** 2 * inv[r] for r in others)
        inner = {
            r: sum(a[k][qi] * a[k][r] * inv[k] for k in others)
            for r in others
        }
        c3 = sum(a[r][qi] * inv[r] * inner[r] for r in others)
        triple = sum(
            a[r][qi] * inv[r] * sum(a[r][l] * inv[l] * inner[l] for l in others)
            for r in others
        )
        c4 = triple - sum(a[r][qi] ** 2 * inv[r] ** 2 for r in others) * c2
        return c2, c3, c4


@dataclass(frozen=True)
class CoefficientBoundsReport:
    """Walk-count bounds on c2..c4 plus the per-order kappa hypothesis.

    The hypothesis |c_j| <= kappa^(j-1) (A^j)_qq is reported per order but
    never asserted; it is an assumption, not a theorem.
    """

    q: int
    kappa: object
    c2_ok: bool
    c3_ok: bool | None
    c4_ok: bool | None
    hypothesis: tuple  # (j, holds) for j = 2..K

    @property
    def strict_bounds_ok(self) -> bool:
        return self.c2_ok and self.c3_ok is not False and self.c4_ok is not False


def coefficient_bounds_ok(g: Graph, q: int, table: CoefficientTable) -> CoefficientBoundsReport:
    """Check |c2| <= (A^2)_qq, |c3| <= (A^3)_qq, |c4| <= (A^4)_qq + (A^2)_qq.

    Requires an unweighted graph (the bounds count closed walks).
    """
    if g.is_weighted:
        raise ValueError("coefficient bounds are defined for unweighted graphs")
    walks = closed_walk_counts(g, q, table.K).counts
    kappa = degree_profile(g).kappa(q)

    c2_ok = abs(table.c_at(2)) <= walks[2]
    c3_ok = abs(table.c_at(3)) <= walks[3] if table.K >= 3 else None
    c4_ok = abs(table.c_at(4)) <= walks[4] + walks[2] if table.K >= 4 else None
    hypothesis = tuple(
        (j, bool(abs(table.c_at(j)) <= kappa ** (j - 1) * walks[j]))
        for j in range(2, table.K + 1)
    )
    return CoefficientBoundsReport(
        q=q, kappa=kappa, c2_ok=bool(c2_ok),
        c3_ok=None if c3_ok is None else bool(c3_ok),
        c4_ok=None if c4_ok is None else bool(c4_ok),
        hypothesis=hypothesis,
    )


def taylor_partial_sums(table: CoefficientTable, zeta, K_max: int | None = None) -> SeriesEvaluation:
    """Partial sums d_q + sum_{j=2}^K c_j zeta^j for K = 2..K_max."""
    if K_max is None:
        K_max = table.K
    if K_max > table.K:
        raise ValueError(f"K_max = {K_max} exceeds table order {table.K}")
    with table.domain.context():
        z = table.domain.coerce(zeta)
        sums = {}
        acc = table.d_q
        zpow = z  # z^1
        for j in range(2, K_max + 1):
            zpow = zpow * z
            acc = acc + table.c_at(j) * zpow
            sums[j] = acc
        return SeriesEvaluation(q=table.q, zeta=z, kind="taylor", partial_sums=sums)


def reconstruct_eigenvector(table: CoefficientTable, zeta, K: int) -> tuple:
    """e_q + sum_{j=1}^K zeta^j sum_{r != q} beta_jr e_r; component q is exactly 1."""
    if not 0 <= K <= table.K:
        raise ValueError(f"K must lie in 0..{table.K}")
    with table.domain.context():
        z = table.domain.coerce(zeta)
        n = len(table.beta[0]) if table.beta else 0
        vec = [table.d_q * 0] * n
        vec[table.q - 1] = vec[table.q - 1] + 1
        zpow = 1
        for j in range(1, K + 1):
            zpow = zpow * z
            row = table.beta[j - 1]
            for r in range(n):
                vec[r] = vec[r] + zpow * row[r]
        return tuple(vec)


def coefficient_table_to_json(table: CoefficientTable) -> str:
    """{"q", "K", "c": ["p/q", ...]} with rationals kept exact as strings."""
    import json

    if table.domain.is_exact:
        cs = [format_rational(cj) for cj in table.c]
    else:
        import mpmath

        with table.domain.context():
            cs = [mpmath.nstr(cj, int(table.domain.precision_bits * 0.3010) + 2) for cj in table.c]
    return json.dumps({"q": table.q, "K": table.K, "c": cs})
