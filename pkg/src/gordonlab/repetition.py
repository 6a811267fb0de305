"""Repetition-time machinery: certificate search, the constructive skew-shift
repetition time built from continued-fraction convergents, the circle
obstruction that converts certificates into Diophantine witnesses, Monte Carlo
estimation of the repetition-set measure, and Veech tower search for interval
exchanges.

A repetition certificate for (epsilon, r) is a q with
dist(T^k w, T^{k+q} w) < epsilon for every k = 0..floor(r*q).  Searches return
the smallest such q, so results are canonical and reproducible.
"""

from __future__ import annotations

import hashlib
import math
import random
from bisect import bisect_left, insort
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arithmetic import SCALE, ContinuedFraction, FixedPointFrac, convergent_denominators
from .dynamics import (
    IET_TOL,
    Iet,
    Shift,
    SkewProduct,
    SkewShift,
    SystemSpec,
    TorusPoint,
    UnsupportedSystemError,
    iet_inverse_step,
    iet_step,
    iet_tables,
    step,
    system_dim,
)

_WILSON_Z = 1.959963984540054  # two-sided 95%


class InconsistentCertificateError(ValueError):
    """The certificate violates a precondition of the circle argument."""


def _floor_times(r: float, q: int) -> int:
    """floor(r*q) computed exactly from the binary value of r."""
    return math.floor(Fraction(r) * q)


def _strict_raw_threshold(epsilon: float) -> int:
    """t such that raw < t  <=>  raw/SCALE < epsilon (exact, strict)."""
    f = Fraction(epsilon) * SCALE
    t = f.numerator // f.denominator
    return t if f.denominator == 1 else t + 1


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepetitionCertificate:
    """Witness that dist(T^k w, T^{k+q} w) < epsilon for k = 0..k_max."""

    epsilon: float
    r: float
    q: int
    k_max: int
    max_dist: float
    omega: object
    max_dist_raw: int | None = None  # exact units for torus systems


@dataclass(frozen=True)
class RepetitionNotFound:
    """No q <= q_max certifies; best_q/best_dist record the closest miss."""

    epsilon: float
    r: float
    q_max: int
    best_q: int | None
    best_dist: float


def find_repetition_time(
    system: SystemSpec, omega, epsilon: float, r: float, q_max: int
) -> RepetitionCertificate | RepetitionNotFound:
    """Smallest q <= q_max whose certificate validates, else the best near-miss.

    Shifts use the isometry identity T^{k+q}w - T^k w = q*alpha (constant in k
    and w), skew-shifts the exact arithmetic-progression structure of the
    second coordinate; other systems fall back to orbit stepping with early
    exit.  All torus comparisons are exact in fixed point.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if r <= 0:
        raise ValueError("r must be positive")
    if q_max < 1:
        raise ValueError("q_max must be >= 1")

    if isinstance(system, Shift):
        return _find_shift(system, omega, epsilon, r, q_max)
    if isinstance(system, SkewShift):
        return _find_skewshift(system, omega, epsilon, r, q_max)
    if isinstance(system, (SkewProduct, Iet)):
        return _find_generic(system, omega, epsilon, r, q_max)
    raise UnsupportedSystemError(f"unknown system {type(system).__name__}")


def _certificate(epsilon, r, q, max_dist_raw, omega) -> RepetitionCertificate:
    return RepetitionCertificate(
        epsilon=epsilon,
        r=r,
        q=q,
        k_max=_floor_times(r, q),
        max_dist=max_dist_raw / SCALE,
        omega=omega,
        max_dist_raw=max_dist_raw,
    )


def _find_shift(system, omega, epsilon, r, q_max):
    thresh = _strict_raw_threshold(epsilon)
    vals = [a.value for a in system.alpha]
    acc = [0] * len(vals)
    best_q, best_raw = None, None
    for q in range(1, q_max + 1):
        raw = 0
        for i, v in enumerate(vals):
            acc[i] = (acc[i] + v) % SCALE
            raw = max(raw, min(acc[i], SCALE - acc[i]))
        if raw < thresh:
            return _certificate(epsilon, r, q, raw, omega)
        if best_raw is None or raw < best_raw:
            best_q, best_raw = q, raw
    return RepetitionNotFound(epsilon, r, q_max, best_q, best_raw / SCALE)


def _find_skewshift(system, omega, epsilon, r, q_max):
    thresh = _strict_raw_threshold(epsilon)
    a = system.alpha.value
    w1 = omega.coords[0].value
    u = 0  # 2*q*alpha
    s = 0  # q*w1 + (q^2 - q)*alpha, the k = 0 second-coordinate difference
    best_q, best_raw = None, None
    for q in range(1, q_max + 1):
        s = (s + w1 + u) % SCALE  # uses u at q-1: s_q = s_{q-1} + w1 + 2(q-1)a
        u = (u + 2 * a) % SCALE
        first = min(u, SCALE - u)
        observed = first
        if first < thresh:
            k_max = _floor_times(r, q)
            cur = s
            ok = True
            for _ in range(k_max + 1):
                d = min(cur, SCALE - cur)
                if d > observed:
                    observed = d
                    if d >= thresh:
                        ok = False
                        break
                cur = (cur + u) % SCALE
            if ok:
                return _certificate(epsilon, r, q, observed, omega)
        if best_raw is None or observed < best_raw:
            best_q, best_raw = q, observed
    return RepetitionNotFound(epsilon, r, q_max, best_q, best_raw / SCALE)


def _point_dist(x, y) -> float:
    if isinstance(x, TorusPoint):
        return x.dist(y)
    return abs(x - y)


def _find_generic(system, omega, epsilon, r, q_max):
    torus = not isinstance(system, Iet)
    thresh = _strict_raw_threshold(epsilon) if torus else None
    tables = iet_tables(system) if isinstance(system, Iet) else None
    points = [omega]

    def extend_to(n: int) -> None:
        while len(points) <= n:
            nxt = (
                iet_step(system, points[-1], tables)
                if tables is not None
                else step(system, points[-1])
            )
            points.append(nxt)

    best_q, best_dist = None, None
    for q in range(1, q_max + 1):
        k_max = _floor_times(r, q)
        extend_to(k_max + q)
        ok = True
        observed_raw = 0
        observed = 0.0
        for k in range(k_max + 1):
            if torus:
                d = points[k].dist_raw(points[k + q])
                observed_raw = max(observed_raw, d)
                if d >= thresh:
                    ok = False
                    break
            else:
                d = abs(points[k] - points[k + q])
                observed = max(observed, d)
                if d >= epsilon:
                    ok = False
                    break
        if torus:
            observed = observed_raw / SCALE
        if ok:
            if torus:
                return _certificate(epsilon, r, q, observed_raw, omega)
            return RepetitionCertificate(epsilon, r, q, k_max, observed, omega)
        if best_dist is None or observed < best_dist:
            best_q, best_dist = q, observed
    return RepetitionNotFound(epsilon, r, q_max, best_q, best_dist)


def repetition_distances(system: SystemSpec, omega, q: int, k_max: int) -> list:
    """dist(T^k w, T^{k+q} w) for k = 0..k_max, by stepping only.

    Returns exact raw integers for torus systems and floats for IETs; the
    independent cross-check oracle behind certificate verification.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    tables = iet_tables(system) if isinstance(system, Iet) else None
    points = [omega]
    for _ in range(k_max + q):
        nxt = (
            iet_step(system, points[-1], tables)
            if tables is not None
            else step(system, points[-1])
        )
        points.append(nxt)
    if isinstance(system, Iet):
        return [abs(points[k] - points[k + q]) for k in range(k_max + 1)]
    return [points[k].dist_raw(points[k + q]) for k in range(k_max + 1)]


def verify_certificate_against_definition(
    cert: RepetitionCertificate, system: SystemSpec
) -> bool:
    """Recompute every distance by stepping and confirm the strict inequality."""
    if cert.q < 1 or cert.epsilon <= 0 or cert.r <= 0:
        return False
    k_max = _floor_times(cert.r, cert.q)
    if cert.k_max != k_max:
        return False
    dists = repetition_distances(system, cert.omega, cert.q, k_max)
    if isinstance(system, Iet):
        return all(d < cert.epsilon for d in dists)
    thresh = _strict_raw_threshold(cert.epsilon)
    return all(d < thresh for d in dists)


# ---------------------------------------------------------------------------
# constructive skew-shift repetition times
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstructiveRepetition:
    """q = m * base_q with per-term sizes of the orbit-difference bound.

    reported_epsilon is the term-sum bound: the certificate (with epsilon set
    to it) always passes verification for the intended r, because the true
    distance never exceeds max(first-coordinate term, second-coordinate sum)
    which is strictly below the total.
    """

    q: int
    m: int
    base_q: int
    first_coord_dist: float
    omega_term_dist: float
    alpha_term_bound: float
    reported_epsilon: float
    certificate: RepetitionCertificate


@dataclass(frozen=True)
class ConstructiveNotAvailable:
    """No convergent is good enough at this depth/horizon."""

    reason: str
    best_product: float | None = None


def skewshift_constructive_q(
    alpha: FixedPointFrac,
    omega1: FixedPointFrac,
    epsilon: float,
    cf: ContinuedFraction,
    r: float = 1.0,
    max_base_q: int | None = None,
) -> ConstructiveRepetition | ConstructiveNotAvailable:
    """Repetition time m * q_k for the skew-shift from convergent structure.

    Takes the largest available convergent denominator q_k with
    q_k <q_k alpha> < epsilon * min(1, 1/r) (optionally capped by max_base_q,
    which bounds the verification cost), then chooses m in 1..floor(1/eps)+1
    minimizing the total bound
        <2 m q_k alpha>  +  <m q_k omega1>  +  (1+2r) m^2 q_k <q_k alpha>,
    i.e. first coordinate + omega term + worst-case quadratic term over
    k = 0..floor(r q).  The returned certificate uses that bound as epsilon.
    """
    if epsilon <= 0 or epsilon > 1:
        raise ValueError("epsilon must lie in (0, 1]")
    if r <= 0:
        raise ValueError("r must be positive")

    r_frac = Fraction(r)
    margin = Fraction(epsilon) * min(Fraction(1), 1 / r_frac)
    base_q = None
    base_raw = None
    best_product = None
    for q_k in convergent_denominators(cf):
        if max_base_q is not None and q_k > max_base_q:
            break
        raw = (q_k * alpha).norm_raw()
        product = Fraction(q_k * raw, SCALE)
        if best_product is None or product < best_product:
            best_product = product
        if product < margin:
            base_q, base_raw = q_k, raw
    if base_q is None:
        return ConstructiveNotAvailable(
            reason=(
                "no convergent denominator q with q<q*alpha> < "
                f"{float(margin):.6g} at the computed depth"
            ),
            best_product=None if best_product is None else float(best_product),
        )

    m_hi = int(1 / Fraction(epsilon)) + 1
    best = None  # (B_raw, m, t_first, t_omega, t_alpha)
    for m in range(1, m_hi + 1):
        t_first = ((2 * m * base_q) * alpha).norm_raw()
        t_omega = ((m * base_q) * omega1).norm_raw()
        alpha_bound = (1 + 2 * r_frac) * m * m * base_q * base_raw
        t_alpha = -((-alpha_bound.numerator) // alpha_bound.denominator)  # ceil
        total = t_first + t_omega + t_alpha
        if best is None or total < best[0]:
            best = (total, m, t_first, t_omega, t_alpha)
    total_raw, m, t_first, t_omega, t_alpha = best
    q = m * base_q

    # Smallest double whose exact value exceeds the raw bound, so the strict
    # fixed-point comparison in verification cannot be lost to rounding.
    eps_rep = total_raw / SCALE
    while Fraction(eps_rep) * SCALE <= total_raw:
        eps_rep = math.nextafter(eps_rep, math.inf)

    omega = TorusPoint((omega1, FixedPointFrac(0)))
    k_max = _floor_times(r, q)
    u = ((2 * q) * alpha).value
    cur = (q * omega1 + (q * q - q) * alpha).value
    max_raw = min(u, SCALE - u)
    for _ in range(k_max + 1):
        max_raw = max(max_raw, min(cur, SCALE - cur))
        cur = (cur + u) % SCALE
    cert = RepetitionCertificate(
        epsilon=eps_rep,
        r=r,
        q=q,
        k_max=k_max,
        max_dist=max_raw / SCALE,
        omega=omega,
        max_dist_raw=max_raw,
    )
    return ConstructiveRepetition(
        q=q,
        m=m,
        base_q=base_q,
        first_coord_dist=t_first / SCALE,
        omega_term_dist=t_omega / SCALE,
        alpha_term_bound=t_alpha / SCALE,
        reported_epsilon=eps_rep,
        certificate=cert,
    )


# ---------------------------------------------------------------------------
# the circle obstruction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    """Arithmetic-progression analysis of a skew-shift certificate.

    The second-coordinate differences step by exactly <2q*alpha> per unit n;
    when q steps cannot wrap the circle, <2nq*alpha> = n<2q*alpha> for all
    0 <= n <= q, so q<2q*alpha> stays below 2*epsilon and yields an explicit
    q' with small q'<q'*alpha> (the non-badly-approximable witness).
    """

    q: int
    n_max: int
    step_dist: float
    q_times_step: float
    epsilon: float
    within_two_eps: bool
    witness_q: int
    witness_product: float


def badly_approximable_obstruction(
    alpha: FixedPointFrac, epsilon: float, cert: RepetitionCertificate
) -> ObstructionReport:
    """Turn a skew-shift certificate into a Diophantine witness.

    Raises InconsistentCertificateError when the no-wrap condition
    q * <2q*alpha> <= 1/2 fails (epsilon too large for the argument).
    """
    if cert.r < 1:
        raise ValueError("the obstruction needs a certificate with r >= 1")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    q = cert.q
    u = ((2 * q) * alpha).value
    umin = min(u, SCALE - u)
    if q * umin > SCALE // 2:
        raise InconsistentCertificateError(
            f"q*<2q*alpha> = {q * umin / SCALE:.6g} > 1/2: the progression can wrap"
        )
    q_times_step = Fraction(q * umin, SCALE)
    within = q_times_step < 2 * Fraction(epsilon)

    aq = (q * alpha).value
    aqmin = min(aq, SCALE - aq)
    if aqmin <= SCALE // 4:
        witness_q = q  # <2q*alpha> = 2<q*alpha>, so q<q*alpha> = q<2q*alpha>/2
        witness_product = Fraction(q * aqmin, SCALE)
    else:
        witness_q = 2 * q  # <q*alpha> near 1/2; the doubled time is the witness
        witness_product = Fraction(2 * q * umin, SCALE)
    return ObstructionReport(
        q=q,
        n_max=q,
        step_dist=umin / SCALE,
        q_times_step=float(q_times_step),
        epsilon=epsilon,
        within_two_eps=bool(within),
        witness_q=witness_q,
        witness_product=float(witness_product),
    )


# ---------------------------------------------------------------------------
# Monte Carlo measure estimate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrpEstimate:
    """Fraction of sampled starting points admitting a certificate."""

    system: SystemSpec
    epsilon: float
    r: float
    q_max: int
    n_samples: int
    n_hits: int
    fraction: float
    wilson_ci: tuple[float, float]
    seed: int


def _sample_rng(seed: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _wilson_interval(hits: int, n: int) -> tuple[float, float]:
    z = _WILSON_Z
    phat = hits / n
    denom = 1 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def sample_start_point(system: SystemSpec, seed: int, index: int):
    """The index-th starting point of a seeded run (schedule-independent)."""
    rng = _sample_rng(seed, index)
    if isinstance(system, (Shift, SkewShift, SkewProduct)):
        d = system_dim(system)
        return TorusPoint(tuple(FixedPointFrac(rng.getrandbits(128)) for _ in range(d)))
    if isinstance(system, Iet):
        return rng.random() * float(iet_tables(system).total)
    raise UnsupportedSystemError(f"unknown system {type(system).__name__}")


def estimate_prp_fraction(
    system: SystemSpec,
    epsilon: float,
    r: float,
    q_max: int,
    n_samples: int,
    seed: int,
    threads: int = 1,
) -> PrpEstimate:
    """Monte Carlo frequency of certifiable starting points.

    Each sample's generator is derived from (seed, index) by hashing, so the
    result is bit-identical for a fixed seed regardless of thread count.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")

    def one(index: int) -> bool:
        omega = sample_start_point(system, seed, index)
        found = find_repetition_time(system, omega, epsilon, r, q_max)
        return isinstance(found, RepetitionCertificate)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(n_samples)))
    else:
        results = [one(i) for i in range(n_samples)]
    hits = sum(results)
    return PrpEstimate(
        system=system,
        epsilon=epsilon,
        r=r,
        q_max=q_max,
        n_samples=n_samples,
        n_hits=hits,
        fraction=hits / n_samples,
        wilson_ci=_wilson_interval(hits, n_samples),
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Veech towers for interval exchanges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VeechTower:
    """Height q and floor J with disjoint floors covering > 1 - eps of the
    space and return overlap Leb(J and T^q J) > (1 - eps) Leb(J)."""

    q: int
    interval: tuple
    coverage: float
    return_overlap: float


@dataclass(frozen=True)
class TowerNotFound:
    """No tower up to q_max; best partial scores among disjoint candidates."""

    epsilon: float
    q_max: int
    best_q: int | None
    best_coverage: float
    best_overlap_fraction: float


def _insert_cut(cuts: list, x, tol) -> None:
    pos = bisect_left(cuts, x)
    if pos < len(cuts) and cuts[pos] - x <= tol:
        return
    if pos > 0 and x - cuts[pos - 1] <= tol:
        return
    cuts.insert(pos, x)


def veech_tower_search(
    iet: Iet, epsilon: float, q_max: int
) -> VeechTower | TowerNotFound:
    """First (smallest q, leftmost J) tower, scanning continuity pieces of T^q.

    Pieces come from incrementally pulled-back breakpoints; a candidate piece
    must be long enough for the coverage bound, have iterates
    T^l J (1 <= l < q) disjoint from J (checked via its midpoint displacement,
    exact because T^q is a translation on J), and return with overlap
    Leb(J and T^q J) > (1-eps) Leb(J).
    """
    if not 0 <= epsilon < 1:
        raise ValueError("epsilon must lie in [0, 1)")
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    tables = iet_tables(iet)
    total = tables.total
    exact = not isinstance(total, float)
    tol = 0 if exact else IET_TOL * max(1.0, float(total))

    best_q, best_cov, best_ovf = None, 0.0, 0.0
    best_score = -1.0
    if epsilon == 0:
        return TowerNotFound(epsilon, q_max, best_q, best_cov, best_ovf)

    cuts = list(tables.beta)
    layer = list(tables.beta[1:-1])
    float_mode = not exact
    if float_mode:
        beta_arr = np.asarray([float(b) for b in tables.beta])
        jumps_arr = np.asarray([float(j) for j in tables.jumps])

    for q in range(1, q_max + 1):
        if q > 1:
            layer = [iet_inverse_step(iet, x, tables) for x in layer]
            for x in layer:
                _insert_cut(cuts, x, tol)
        lens = [hi - lo for lo, hi in zip(cuts, cuts[1:])]
        min_len = (1 - epsilon) * total / q
        max_len = total / q
        cand = [
            i
            for i, ln in enumerate(lens)
            if ln > min_len and ln <= max_len + (tol if float_mode else 0)
        ]
        if not cand:
            continue

        if float_mode:
            mids = np.asarray([(cuts[i] + cuts[i + 1]) / 2 for i in cand])
            clen = np.asarray([lens[i] for i in cand])
            x = mids.copy()
            alive = np.ones(len(cand), dtype=bool)
            for _ in range(1, q):
                idx = np.searchsorted(beta_arr, x, side="right") - 1
                x = x + jumps_arr[idx]
                alive &= np.abs(x - mids) >= clen - tol
                if not alive.any():
                    break
            if alive.any():
                idx = np.searchsorted(beta_arr, x, side="right") - 1
                x = x + jumps_arr[idx]
                disp = np.abs(x - mids)
                overlap = np.maximum(clen - disp, 0.0)
                coverage = q * clen / float(total)
                ok = alive & (overlap > (1 - epsilon) * clen) & (coverage > 1 - epsilon)
                for j in np.flatnonzero(alive):
                    score = min(float(coverage[j]), float(overlap[j] / clen[j]))
                    if score > best_score:
                        best_score = score
                        best_q, best_cov, best_ovf = q, float(coverage[j]), float(
                            overlap[j] / clen[j]
                        )
                if ok.any():
                    j = int(np.flatnonzero(ok)[0])
                    i = cand[j]
                    return VeechTower(
                        q=q,
                        interval=(cuts[i], cuts[i + 1]),
                        coverage=float(coverage[j]),
                        return_overlap=float(overlap[j]),
                    )
        else:
            for i in cand:
                lo, hi = cuts[i], cuts[i + 1]
                ln = hi - lo
                mid = (lo + hi) / 2
                x = mid
                disjoint = True
                for _ in range(1, q):
                    x = iet_step(iet, x, tables)
                    if abs(x - mid) < ln:
                        disjoint = False
                        break
                if not disjoint:
                    continue
                x = iet_step(iet, x, tables)
                overlap = max(ln - abs(x - mid), 0)
                coverage = q * ln / total
                score = min(float(coverage), float(overlap / ln))
                if score > best_score:
                    best_score = score
                    best_q, best_cov, best_ovf = q, float(coverage), float(overlap / ln)
                if overlap > (1 - epsilon) * ln and coverage > 1 - epsilon:
                    return VeechTower(
                        q=q,
                        interval=(lo, hi),
                        coverage=float(coverage),
                        return_overlap=float(overlap),
                    )
    return TowerNotFound(epsilon, q_max, best_q, best_cov, best_ovf)
