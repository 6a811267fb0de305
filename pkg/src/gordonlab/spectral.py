"""Transfer matrices for u(n+1) + u(n-1) + V(n)u(n) = E u(n), the periodic
three-block norm inequality, truncated tridiagonal spectra with Dirichlet
ends, and localization diagnostics (inverse participation ratio, edge mass).

No spectral-type verdicts are ever claimed: finite truncations cannot decide
continuity of spectra, so outputs are defect values, inequality margins, and
descriptive statistics only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .potentials import PotentialWindow, WindowTooSmallError, gordon_gamma


class ConvergenceFailureError(RuntimeError):
    """The tridiagonal eigensolver failed to converge."""


class MissingVectorsError(ValueError):
    """The spectral report was built without eigenvectors."""


# ---------------------------------------------------------------------------
# transfer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransferProduct:
    """Ordered product of one-step matrices [[E - V(j), -1], [1, 0]] for
    j = n_lo..n_hi; maps (u(n_lo), u(n_lo-1)) to (u(n_hi+1), u(n_hi)).

    Every factor has determinant exactly 1; the product's determinant drifts
    only through float rounding, and only representably for bounded products.
    """

    entries: tuple[tuple[float, float], tuple[float, float]]
    energy: float
    n_lo: int
    n_hi: int

    def det(self) -> float:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def matvec(self, u) -> tuple[float, float]:
        (a, b), (c, d) = self.entries
        return (a * u[0] + b * u[1], c * u[0] + d * u[1])

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)


def transfer_block(window: PotentialWindow, energy: float, n_lo: int, n_hi: int) -> TransferProduct:
    """Transfer matrix of the difference equation across sites n_lo..n_hi."""
    if n_lo > n_hi:
        raise ValueError("n_lo must be <= n_hi")
    if window.n_min > n_lo or window.n_max < n_hi:
        raise WindowTooSmallError(
            f"transfer block [{n_lo}, {n_hi}] outside window [{window.n_min}, {window.n_max}]"
        )
    a, b, c, d = 1.0, 0.0, 0.0, 1.0
    values = window.values
    off = -window.n_min
    for j in range(n_lo, n_hi + 1):
        t = energy - float(values[off + j])
        # left-multiply by [[t, -1], [1, 0]]
        a, b, c, d = t * a - c, t * b - d, a, b
    return TransferProduct(((a, b), (c, d)), float(energy), n_lo, n_hi)


def _adjugate(entries):
    (a, b), (c, d) = entries
    return ((d, -b), (-c, a))


def _matmul(x, y):
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _norm2(u) -> float:
    return math.hypot(u[0], u[1])


@dataclass(frozen=True)
class ThreeBlockReport:
    """Norms of A u0, A^2 u0, A^-1 u0 for the period block A over [1, q].

    For exactly q-periodic V the characteristic equation of A (det A = 1)
    forces max of the three norms >= ||u0|| / 2; min_ratio is that max
    divided by ||u0||.  gamma reports how far the window is from exact
    q-periodicity, so near-periodic runs can be judged alongside it.
    """

    q: int
    energy: float
    norm_u0: float
    norm_plus: float
    norm_plus2: float
    norm_minus: float
    min_ratio: float
    gamma: float
    det_drift: float


def gordon_three_block_check(
    window: PotentialWindow, energy: float, q: int, u0
) -> ThreeBlockReport:
    """Evaluate the three-block inequality data at energy E and period q.

    The window must cover [1-q, 2q] (so gamma(q) is measurable alongside);
    A^-1 comes from the adjugate since det A = 1, avoiding inversion error.
    """
    u = (float(u0[0]), float(u0[1]))
    if u == (0.0, 0.0):
        raise ValueError("u0 must be a nontrivial vector")
    if q < 1:
        raise ValueError("q must be >= 1")
    block = transfer_block(window, energy, 1, q)
    a = block.entries
    a2 = _matmul(a, a)
    ainv = _adjugate(a)

    def apply(mat, vec):
        (p, r), (s, t) = mat
        return (p * vec[0] + r * vec[1], s * vec[0] + t * vec[1])

    n0 = _norm2(u)
    np_ = _norm2(apply(a, u))
    np2 = _norm2(apply(a2, u))
    nm = _norm2(apply(ainv, u))
    return ThreeBlockReport(
        q=q,
        energy=float(energy),
        norm_u0=n0,
        norm_plus=np_,
        norm_plus2=np2,
        norm_minus=nm,
        min_ratio=max(np_, np2, nm) / n0,
        gamma=gordon_gamma(window, q),
        det_drift=abs(block.det() - 1.0),
    )


# ---------------------------------------------------------------------------
# truncated spectra
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpectralReport:
    """Eigendata of the N x N Dirichlet truncation (off-diagonals 1).

    ipr[i] = sum u^4 / (sum u^2)^2 of the i-th eigenvector; edge_mass[i] is
    its mass on the outer 10% of sites.  Both are None when vectors were not
    requested.
    """

    size: int
    boundary: str
    eigenvalues: np.ndarray
    ipr: np.ndarray | None
    edge_mass: np.ndarray | None
    vectors: np.ndarray | None


def truncated_spectrum(
    window: PotentialWindow, n_sites: int, report_vectors: bool = False
) -> SpectralReport:
    """Spectrum of the truncation onto the first n_sites sites of the window."""
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    if window.n_max - window.n_min + 1 < n_sites:
        raise WindowTooSmallError(
            f"window holds {window.n_max - window.n_min + 1} sites, need {n_sites}"
        )
    diag = np.asarray(window.values[:n_sites], dtype=float)
    off = np.ones(max(0, n_sites - 1), dtype=float)
    try:
        if report_vectors:
            vals, vecs = eigh_tridiagonal(diag, off)
        else:
            vals = eigh_tridiagonal(diag, off, eigvals_only=True)
            vecs = None
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailureError(str(exc)) from exc
    ipr = edge = None
    if vecs is not None:
        norms2 = np.sum(vecs**2, axis=0)
        ipr = np.sum(vecs**4, axis=0) / norms2**2
        k = max(1, round(0.05 * n_sites))
        edge = (np.sum(vecs[:k] ** 2, axis=0) + np.sum(vecs[-k:] ** 2, axis=0)) / norms2
        if 2 * k >= n_sites:
            edge = np.minimum(edge, 1.0)
    return SpectralReport(
        size=n_sites,
        boundary="dirichlet",
        eigenvalues=np.sort(vals),
        ipr=ipr,
        edge_mass=edge,
        vectors=vecs,
    )


@dataclass(frozen=True, eq=False)
class LocalizationSummary:
    """Descriptive statistics only; never a spectral-type verdict."""

    median_ipr: float
    max_edge_mass: float
    ipr_histogram: tuple[np.ndarray, np.ndarray]


def localization_diagnostics(report: SpectralReport) -> LocalizationSummary:
    if report.ipr is None or report.edge_mass is None:
        raise MissingVectorsError("spectral report was computed without eigenvectors")
    counts, edges = np.histogram(report.ipr, bins=10, range=(0.0, 1.0))
    return LocalizationSummary(
        median_ipr=float(np.median(report.ipr)),
        max_edge_mass=float(np.max(report.edge_mass)),
        ipr_histogram=(counts, edges),
    )
