"""Euler summation of the degree-perturbation series and convergence diagnostics.

The Euler t-transform rewrites a Taylor series f0 + sum f_k z^k as

    f0 + sum_m [ sum_k C(m-1, k-1) f_k t^(m-k) ] (z / (1 + t z))^m,

with a tunable parameter t; it often converges where the plain series does
not.  Binomial coefficients come from an exact integer Pascal recurrence so
the transform stays exact in rational mode at any order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .domain import NumberDomain
from .eigen import accuracy_alpha
from .perturb import CoefficientTable, SeriesEvaluation

__all__ = [
    "EulerParams",
    "ConvergenceReport",
    "binomial",
    "pascal_row",
    "euler_series",
    "euler_series_t_minus_one",
    "euler_k4_estimate",
    "euler_transform_generic",
    "convergence_classify",
]

_PASCAL_ROWS: list = [[1]]


def pascal_row(m: int) -> list:
    """Row m of Pascal's triangle: [C(m, 0), ..., C(m, m)], exact integers."""
    while len(_PASCAL_ROWS) <= m:
        prev = _PASCAL_ROWS[-1]
        row = [1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1]
        _PASCAL_ROWS.append(row)
    return _PASCAL_ROWS[m]


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return pascal_row(n)[k]


@dataclass(frozen=True)
class EulerParams:
    """Tuning parameter t, perturbation parameter zeta, and term count.

    The transform weight z/(1 + t z) must stay finite: 1 + t*zeta == 0 is
    rejected (for zeta = -1 this is exactly t = 1).
    """

    t: object
    zeta: object = -1
    K_max: int = 30

    def __post_init__(self) -> None:
        if self.K_max < 2:
            raise ValueError("K_max must be at least 2")
        if 1 + self.t * self.zeta == 0:
            raise ValueError(f"singular transform: 1 + t*zeta = 0 (t={self.t}, zeta={self.zeta})")


def _inner_weight_sums(coeff_at, t, K_max: int):
    """Yield (m, sum_{k=2}^m C(m-1, k-1) t^(m-k) c_k) for m = 2..K_max."""
    for m in range(2, K_max + 1):
        row = pascal_row(m - 1)
        tpow = 1
        inner = None
        for k in range(m, 1, -1):  # t^(m-k) built incrementally from k = m down
            term = row[k - 1] * tpow * coeff_at(k)
            inner = term if inner is None else inner + term
            tpow = tpow * t
        yield m, inner


def euler_series(table: CoefficientTable, params: EulerParams) -> SeriesEvaluation:
    """Euler t-transform partial sums of the coefficient table's series.

    For zeta = -1 the weight (zeta/(1 + t*zeta))^m reduces to (1/(t-1))^m;
    the generic form is evaluated either way, and stays exact for rational
    t, zeta, and coefficients.
    """
    if params.K_max > table.K:
        raise ValueError(f"K_max = {params.K_max} exceeds table order {table.K}")
    domain = table.domain
    with domain.context():
        t = domain.coerce(params.t)
        zeta = domain.coerce(params.zeta)
        denom = 1 + t * zeta
        if denom == 0:
            raise ValueError("singular transform: 1 + t*zeta = 0")
        w = zeta / denom
        sums = {}
        acc = table.d_q
        wpow = w  # w^1
        for m, inner in _inner_weight_sums(table.c_at, t, params.K_max):
            wpow = wpow * w
            acc = acc + inner * wpow
            sums[m] = acc
        return SeriesEvaluation(
            q=table.q, zeta=zeta, kind="euler", partial_sums=sums, t=t
        )


def euler_series_t_minus_one(table: CoefficientTable, K_max: int) -> SeriesEvaluation:
    """Independent evaluation of the t = -1, zeta = -1 special case.

    Computes d_q + sum_m ( sum_k C(m-1, k-1) (-1)^k c_k ) / 2^m directly;
    kept as a second code path so the general transform can be checked
    bit-for-bit against it in exact mode.
    """
    if K_max > table.K:
        raise ValueError(f"K_max = {K_max} exceeds table order {table.K}")
    domain = table.domain
    with domain.context():
        sums = {}
        acc = table.d_q
        for m in range(2, K_max + 1):
            row = pascal_row(m - 1)
            inner = sum(row[k - 1] * (-1) ** k * table.c_at(k) for k in range(2, m + 1))
            if domain.is_exact:
                acc = acc + Fraction(1, 2**m) * inner
            else:
                acc = acc + inner / (domain.coerce(2) ** m)
            sums[m] = acc
        return SeriesEvaluation(
            q=table.q, zeta=domain.coerce(-1), kind="euler", partial_sums=sums,
            t=domain.coerce(-1),
        )


def euler_k4_estimate(g, q: int, domain: NumberDomain | None = None):
    """Four-term eigenvalue estimate d_q + 11 c2/16 - 5 c3/16 + c4/16.

    Equals euler_series at t = -1, K = 4 exactly; useful as a closed-form
    approximation of the Laplacian eigenvalue nearest to a unique degree.
    """
    from .perturb import default_domain, explicit_c2_c3_c4

    if domain is None:
        domain = default_domain(g)
    c2, c3, c4 = explicit_c2_c3_c4(g, q, domain)
    with domain.context():
        d_q = sum(domain.coerce(w) for w in g.weights[q - 1])
        if domain.is_exact:
            return d_q + Fraction(11, 16) * c2 - Fraction(5, 16) * c3 + Fraction(1, 16) * c4
        sixteen = domain.coerce(16)
        return d_q + 11 * c2 / sixteen - 5 * c3 / sixteen + c4 / sixteen


def euler_transform_generic(f0, coeffs, t, z, M: int) -> list:
    """Partial sums of the Euler t-transform of f0 + sum_k f_k z^k.

    ``coeffs`` supplies f_1..f_M; the result list has M + 1 entries, entry m
    being the transform truncated after the m-th outer term (entry 0 = f0).
    With t = 0 the m-th inner sum collapses to f_m, giving plain partial sums.
    """
    fs = list(coeffs)
    if len(fs) < M:
        raise ValueError(f"need {M} coefficients, got {len(fs)}")
    denom = 1 + t * z
    if denom == 0:
        raise ValueError("singular transform: 1 + t*z = 0")
    w = z / denom
    partials = [f0]
    acc = f0
    wpow = 1
    for m in range(1, M + 1):
        wpow = wpow * w
        row = pascal_row(m - 1)
        tpow = 1
        inner = None
        for k in range(m, 0, -1):
            term = row[k - 1] * tpow * fs[k - 1]
            inner = term if inner is None else inner + term
            tpow = tpow * t
        acc = acc + inner * wpow
        partials.append(acc)
    return partials


@dataclass(frozen=True)
class ConvergenceReport:
    """Outcome of matching a series against an oracle spectrum.

    ``matched_mu`` is the eigenvalue nearest to the partial sum at
    ``K_check`` (ties resolved toward the larger eigenvalue); ``alphas``
    maps each available order K to log10 |xi_K - matched_mu|.
    """

    q: int
    kind: str
    t: object
    zeta: object
    matched_mu: object
    matched_index: int
    alphas: dict = field(repr=False)
    alpha_threshold: float
    K_check: int
    converged: bool


def convergence_classify(
    series: SeriesEvaluation,
    oracle_eigenvalues,
    alpha_threshold: float = -4.0,
    K_check: int = 30,
) -> ConvergenceReport:
    """Classify a series as converged iff alpha(K_check) <= alpha_threshold."""
    mus = list(oracle_eigenvalues)
    if not mus:
        raise ValueError("oracle spectrum is empty")
    if any(mus[i] < mus[i + 1] for i in range(len(mus) - 1)):
        raise ValueError("oracle eigenvalues must be sorted descending")
    if K_check not in series.partial_sums:
        raise ValueError(f"series has no partial sum at K = {K_check}")

    xi_check = series.partial_sums[K_check]
    # nearest eigenvalue; first index wins a tie, i.e. the larger eigenvalue
    best = 0
    best_alpha = accuracy_alpha(xi_check, mus[0])
    for i in range(1, len(mus)):
        alpha_i = accuracy_alpha(xi_check, mus[i])
        if alpha_i < best_alpha:
            best, best_alpha = i, alpha_i
    matched = mus[best]

    alphas = {K: accuracy_alpha(xi, matched) for K, xi in series.partial_sums.items()}
    return ConvergenceReport(
        q=series.q,
        kind=series.kind,
        t=series.t,
        zeta=series.zeta,
        matched_mu=matched,
        matched_index=best + 1,
        alphas=alphas,
        alpha_threshold=alpha_threshold,
        K_check=K_check,
        converged=alphas[K_check] <= alpha_threshold,
    )
