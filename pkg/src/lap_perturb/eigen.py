"""Ground-truth dense symmetric eigensolver (cyclic Jacobi) and spectral bounds.

The solver runs either on float64 numpy arrays (precision_bits == 53) or on
mpmath reals at any higher precision; both paths use the same cyclic Jacobi
sweep so high-precision spectra are available for 30-digit comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath
import numpy as np

from .domain import to_mpf

__all__ = [
    "Spectrum",
    "SpectralBoundsReport",
    "symmetric_eigen",
    "accuracy_alpha",
    "spectral_bounds",
    "spectrum_to_json",
]

ALPHA_FLOOR = -300.0
MAX_SWEEPS = 50


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending with matching orthonormal eigenvectors.

    ``eigenvectors[k]`` is the column belonging to ``eigenvalues[k]``;
    ``residual`` is max_k ||M v_k - lambda_k v_k||_2 against the input matrix.
    """

    eigenvalues: tuple
    eigenvectors: tuple
    residual: float


def _as_rows(matrix):
    if isinstance(matrix, np.ndarray):
        return [[float(x) for x in row] for row in matrix]
    return [list(row) for row in matrix]


def _check_symmetric(rows, tol) -> None:
    n = len(rows)
    scale = max((abs(x) for row in rows for x in row), default=0)
    bound = tol * max(1, scale)
    for i in range(n):
        if len(rows[i]) != n:
            raise ValueError("matrix must be square")
        for j in range(i + 1, n):
            if abs(rows[i][j] - rows[j][i]) > bound:
                raise ValueError(f"matrix is not symmetric at ({i + 1}, {j + 1})")


def _off_norm_sq(a, n):
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += a[i][j] * a[i][j]
    return 2 * total


def _jacobi_mpf(rows, n, tol):
    a = [[to_mpf(x) for x in row] for row in rows]
    v = [[mpmath.mpf(1 if i == j else 0) for j in range(n)] for i in range(n)]
    one = mpmath.mpf(1)
    for _ in range(MAX_SWEEPS):
        if mpmath.sqrt(_off_norm_sq(a, n)) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0:
                    continue
                tau = (a[q][q] - a[p][p]) / (2 * apq)
                if tau >= 0:
                    t = one / (tau + mpmath.sqrt(1 + tau * tau))
                else:
                    t = -one / (-tau + mpmath.sqrt(1 + tau * tau))
                c = one / mpmath.sqrt(1 + t * t)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
    else:
        raise RuntimeError(f"Jacobi did not converge within {MAX_SWEEPS} sweeps")
    eigenvalues = [a[i][i] for i in range(n)]
    columns = [[v[i][k] for i in range(n)] for k in range(n)]
    return eigenvalues, columns


def _jacobi_numpy(rows, n, tol):
    a = np.array(rows, dtype=float)
    v = np.eye(n)
    for _ in range(MAX_SWEEPS):
        off = math.sqrt(float(2 * np.sum(np.triu(a, 1) ** 2)))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vcol_p, vcol_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vcol_p - s * vcol_q
                v[:, q] = s * vcol_p + c * vcol_q
    else:
        raise RuntimeError(f"Jacobi did not converge within {MAX_SWEEPS} sweeps")
    eigenvalues = [float(a[i, i]) for i in range(n)]
    columns = [[float(v[i, k]) for i in range(n)] for k in range(n)]
    return eigenvalues, columns


def symmetric_eigen(matrix, tol=None, precision_bits: int = 53) -> Spectrum:
    """Full spectrum of a symmetric matrix by cyclic Jacobi rotations.

    ``tol`` bounds the off-diagonal Frobenius mass at convergence; it
    defaults to 1e-12 in double mode and 1e-30 at 128 bits or more.
    Raises ValueError for non-symmetric input and RuntimeError if the sweep
    cap is hit.
    """
    rows = _as_rows(matrix)
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if tol is None:
        tol = 1e-12 if precision_bits <= 53 else mpmath.mpf(10) ** (-30)
    _check_symmetric(rows, 1e-12 if precision_bits <= 53 else Fraction(1, 10**12))

    if precision_bits <= 53:
        eigenvalues, columns = _jacobi_numpy(rows, n, float(tol))
    else:
        with mpmath.workprec(precision_bits):
            eigenvalues, columns = _jacobi_mpf(rows, n, to_mpf(tol))

    order = sorted(range(n), key=lambda k: eigenvalues[k], reverse=True)
    eigenvalues = [eigenvalues[k] for k in order]
    columns = [tuple(columns[k]) for k in order]

    def _residual():
        worst = 0
        for lam, col in zip(eigenvalues, columns):
            acc = 0
            for i in range(n):
                ri = sum(rows[i][j] * col[j] for j in range(n)) - lam * col[i]
                acc += ri * ri
            worst = max(worst, acc)
        return math.sqrt(float(worst))

    if precision_bits <= 53:
        residual = _residual()
    else:
        with mpmath.workprec(precision_bits):
            residual = _residual()
    return Spectrum(eigenvalues=tuple(eigenvalues), eigenvectors=tuple(columns), residual=residual)


def accuracy_alpha(xi, mu, floor: float = ALPHA_FLOOR) -> float:
    """log10 |xi - mu|, floored to represent exact hits.

    Rational inputs are differenced exactly before the log, so tiny gaps
    between exact series values and high-precision eigenvalues survive.
    """
    if isinstance(xi, Rational) and isinstance(mu, Rational):
        diff = Fraction(xi) - Fraction(mu)
        if diff == 0:
            return floor
        diff = abs(diff)
        alpha = float(mpmath.log10(mpmath.mpf(diff.numerator)) - mpmath.log10(diff.denominator))
    else:
        diff = abs(to_mpf(xi) - to_mpf(mu))
        if diff == 0:
            return floor
        alpha = float(mpmath.log10(diff))
    return max(alpha, floor)


@dataclass(frozen=True)
class SpectralBoundsReport:
    """Satisfaction report for three classical Laplacian eigenvalue bounds.

    The degree bound mu_k >= d_(k) - k + 2 carries its published exception:
    when G is a complete graph K_m plus isolated vertices the inequality
    fails at k = m (mu_m = 0 against a bound of 1) and that k is skipped.
    """

    eigenvalues: tuple
    degree_bound_ok: bool          # mu_k >= d_(k) - k + 2, exception k skipped
    largest_bound: float           # min(N, max over edges of endpoint degree sum)
    largest_bound_ok: bool
    interval_ok: bool              # every node has some eigenvalue in [0, 2 d_q]

    @property
    def all_ok(self) -> bool:
        return self.degree_bound_ok and self.largest_bound_ok and self.interval_ok


def spectral_bounds(g, spectrum: Spectrum | None = None, tol: float = 1e-9) -> SpectralBoundsReport:
    """Evaluate the classical bounds against the oracle Laplacian spectrum."""
    from .graph import laplacian  # local import to avoid a cycle

    if spectrum is None:
        spectrum = symmetric_eigen(laplacian(g))
    mu = [float(x) for x in spectrum.eigenvalues]
    d_sorted = sorted((float(d) for d in g.degrees), reverse=True)
    n = g.n

    # G = K_m plus isolated vertices is the one family where the degree bound
    # fails, exactly at k = m; detect it from the degree multiset
    m_nonzero = sum(1 for d in d_sorted if d != 0)
    if m_nonzero == 0:
        exception_k = 1
    elif all(d_sorted[i] == m_nonzero - 1 for i in range(m_nonzero)):
        exception_k = m_nonzero
    else:
        exception_k = None
    degree_bound_ok = all(
        mu[k] >= d_sorted[k] - (k + 1) + 2 - tol
        for k in range(n)
        if k + 1 != exception_k
    )

    edge_sums = [float(g.degrees[u - 1] + g.degrees[v - 1]) for u, v, _ in g.edges()]
    cap = max(edge_sums, default=0.0)
    largest_bound = min(float(n), cap) if not g.is_weighted else cap
    largest_bound_ok = (mu[0] if mu else 0.0) <= largest_bound + tol

    interval_ok = all(
        any(-tol <= m <= 2 * float(dq) + tol for m in mu) for dq in g.degrees
    )
    return SpectralBoundsReport(
        eigenvalues=tuple(mu),
        degree_bound_ok=degree_bound_ok,
        largest_bound=largest_bound,
        largest_bound_ok=largest_bound_ok,
        interval_ok=interval_ok,
    )


def spectrum_to_json(spectrum: Spectrum, digits: int = 30) -> str:
    import json

    vals = [mpmath.nstr(to_mpf(v), digits) for v in spectrum.eigenvalues]
    return json.dumps({"eigenvalues": vals, "residual": float(spectrum.residual)})
