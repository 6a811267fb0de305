"""Sampling functions, potentials V(n) = lam * f(T^n w), and the defect

    gamma(q) = max over 1 <= n <= q of |V(n) - V(n+q)| and |V(n) - V(n-q)|,

with modulus-of-continuity bounds and finite-horizon decay verdicts.

The defect is computed from the unscaled samples and multiplied by |lam| at
the end, so coupling homogeneity gamma(lam*V, q) = |lam| * gamma(V, q) holds
exactly in floating point, including lam = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arithmetic import SCALE, FixedPointFrac
from .dynamics import (
    Iet,
    Shift,
    SkewProduct,
    SkewShift,
    SystemSpec,
    TorusPoint,
    orbit,
    system_dim,
)


class DimensionMismatchError(ValueError):
    """Sampling function and system disagree about the phase-space dimension."""


class WindowTooSmallError(ValueError):
    """The potential window does not cover the sites the defect needs."""


# ---------------------------------------------------------------------------
# sampling functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cosine:
    """f(x) = cos(2*pi*(k . x + phase)) for an integer frequency vector k."""

    frequency: tuple[int, ...] = (1,)
    phase: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "frequency", tuple(int(k) for k in self.frequency))


@dataclass(frozen=True)
class TrigPoly:
    """f(x) = sum of amplitude * cos(2*pi*(k . x + phase)) over terms.

    Each term is (frequency vector, amplitude, phase).  A zero frequency
    vector contributes the constant amplitude*cos(2*pi*phase).
    """

    terms: tuple[tuple[tuple[int, ...], float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "terms",
            tuple((tuple(int(k) for k in ks), float(a), float(p)) for ks, a, p in self.terms),
        )


@dataclass(frozen=True)
class PiecewiseConstant:
    """Cyclic coding of the circle: f(x) = values[j] on [breakpoints[j], next).

    Breakpoints are ascending in [0, 1); the last piece wraps around through 1.
    Points left of the first breakpoint belong to the wrapped last piece.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "breakpoints", tuple(float(b) for b in self.breakpoints))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.breakpoints) != len(self.values):
            raise ValueError("need one value per breakpoint")
        if len(self.breakpoints) < 1:
            raise ValueError("need at least one piece")
        if any(not 0 <= b < 1 for b in self.breakpoints):
            raise ValueError("breakpoints must lie in [0, 1)")
        if list(self.breakpoints) != sorted(self.breakpoints):
            raise ValueError("breakpoints must be ascending")


@dataclass(frozen=True)
class BourgainQuadratic:
    """f(w) = cos(2*pi*w2) on the skew-shift, producing the quadratic-phase
    potential cos(2*pi*(w1 + w2*n + alpha*n*(n-1))) when the orbit starts at
    the swapped point (w2, w1); see ``bourgain_start``."""


SamplingFunction = Cosine | TrigPoly | PiecewiseConstant | BourgainQuadratic


def bourgain_start(omega1: FixedPointFrac, omega2: FixedPointFrac) -> TorusPoint:
    """Skew-shift start point whose orbit realizes the quadratic phase
    w1 + w2*n + alpha*n*(n-1) in the second coordinate."""
    return TorusPoint((omega2, omega1))


def _phase_to_float(point: TorusPoint, freq: Sequence[int]) -> float:
    raw = sum(k * c.value for k, c in zip(freq, point.coords)) % SCALE
    return raw / SCALE


def evaluate_sampling(f: SamplingFunction, point) -> float:
    """f at a TorusPoint (torus variants) or a plain number (interval codings)."""
    if isinstance(f, Cosine):
        if isinstance(point, TorusPoint):
            if len(f.frequency) != point.dim:
                raise DimensionMismatchError(
                    f"frequency vector has {len(f.frequency)} entries, point has {point.dim}"
                )
            t = _phase_to_float(point, f.frequency)
        else:
            if len(f.frequency) != 1:
                raise DimensionMismatchError("interval points are one-dimensional")
            t = f.frequency[0] * float(point)
        return math.cos(2 * math.pi * (t + f.phase))
    if isinstance(f, TrigPoly):
        out = 0.0
        for freq, amp, phase in f.terms:
            if isinstance(point, TorusPoint):
                if len(freq) != point.dim:
                    raise DimensionMismatchError(
                        f"frequency vector has {len(freq)} entries, point has {point.dim}"
                    )
                t = _phase_to_float(point, freq)
            else:
                if len(freq) != 1:
                    raise DimensionMismatchError("interval points are one-dimensional")
                t = freq[0] * float(point)
            out += amp * math.cos(2 * math.pi * (t + phase))
        return out
    if isinstance(f, PiecewiseConstant):
        if isinstance(point, TorusPoint):
            if point.dim != 1:
                raise DimensionMismatchError("codings sample one-dimensional systems")
            x = point.coords[0].to_float()
            if x >= 1.0:
                # the exact coordinate is < 1; a just-below-1 value can round
                # up to 1.0 in double, which must stay in the last piece
                x = math.nextafter(1.0, 0.0)
        else:
            x = float(point)
            x -= math.floor(x)
        from bisect import bisect_right

        j = bisect_right(f.breakpoints, x) - 1  # -1 wraps into the last piece
        return f.values[j if j >= 0 else len(f.values) - 1]
    if isinstance(f, BourgainQuadratic):
        if not isinstance(point, TorusPoint) or point.dim < 2:
            raise DimensionMismatchError("quadratic-phase sampling needs a 2-D state")
        return math.cos(2 * math.pi * point.coords[1].to_float())
    raise TypeError(f"unknown sampling function {type(f).__name__}")


def _check_compat(system: SystemSpec, f: SamplingFunction) -> None:
    d = system_dim(system)
    if isinstance(f, Cosine) and not isinstance(system, Iet) and len(f.frequency) != d:
        raise DimensionMismatchError(
            f"frequency vector has {len(f.frequency)} entries, system is {d}-dimensional"
        )
    if isinstance(f, TrigPoly) and not isinstance(system, Iet):
        for freq, _, _ in f.terms:
            if len(freq) != d:
                raise DimensionMismatchError(
                    f"frequency vector has {len(freq)} entries, system is {d}-dimensional"
                )
    if isinstance(f, PiecewiseConstant) and not isinstance(system, Iet) and d != 1:
        raise DimensionMismatchError("codings sample one-dimensional systems")
    if isinstance(f, BourgainQuadratic) and d < 2:
        raise DimensionMismatchError("quadratic-phase sampling needs a 2-D system")


# ---------------------------------------------------------------------------
# potential windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PotentialWindow:
    """V(n) = lam * f(T^n omega) for n in [n_min, n_max].

    ``values`` holds the coupled samples; ``base_values`` the lam-free ones
    (the defect works on base_values so coupling scales it exactly).
    """

    system: SystemSpec
    f: SamplingFunction
    lam: float
    omega: object
    n_min: int
    n_max: int
    values: np.ndarray
    base_values: np.ndarray

    def value_at(self, n: int) -> float:
        if not self.n_min <= n <= self.n_max:
            raise WindowTooSmallError(f"site {n} outside window [{self.n_min}, {self.n_max}]")
        return float(self.values[n - self.n_min])


def sample_potential(
    system: SystemSpec,
    f: SamplingFunction,
    lam: float,
    omega,
    n_min: int,
    n_max: int,
) -> PotentialWindow:
    """Evaluate the potential along the orbit (exact dynamics, float samples)."""
    if n_min > n_max:
        raise ValueError("n_min must be <= n_max")
    _check_compat(system, f)
    points = orbit(system, omega, n_min, n_max)
    base = np.array([evaluate_sampling(f, p) for p in points], dtype=float)
    return PotentialWindow(
        system=system,
        f=f,
        lam=float(lam),
        omega=omega,
        n_min=n_min,
        n_max=n_max,
        values=float(lam) * base,
        base_values=base,
    )


def explicit_window(values, n_min: int) -> PotentialWindow:
    """Window from values given directly (periodic arrays, corpora).

    Dynamical sampling cannot produce an exactly q-periodic potential from a
    coding function unless 1/q is a dyadic rational: the fixed-point rounding
    of 1/q lands on the coding discontinuity and flips the piece at the wrap
    site.  Direct values stand in for those cases; coupling is taken as 1.
    """
    base = np.array([float(v) for v in values], dtype=float)
    if base.size == 0:
        raise ValueError("values must be nonempty")
    return PotentialWindow(
        system=None,
        f=None,
        lam=1.0,
        omega=None,
        n_min=n_min,
        n_max=n_min + base.size - 1,
        values=base.copy(),
        base_values=base,
    )


# ---------------------------------------------------------------------------
# the defect gamma(q)
# ---------------------------------------------------------------------------


def gordon_gamma(window: PotentialWindow, q: int) -> float:
    """max over n in [1, q] of |V(n) - V(n+q)| and |V(n) - V(n-q)|.

    Needs the window to cover [1-q, 2q].  Computed from the unscaled samples
    and multiplied by |lam| last, so it is exactly |lam|-homogeneous.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if window.n_min > 1 - q or window.n_max < 2 * q:
        raise WindowTooSmallError(
            f"defect at q={q} needs sites [{1 - q}, {2 * q}], window is "
            f"[{window.n_min}, {window.n_max}]"
        )
    base = window.base_values
    off = -window.n_min
    mid = base[off + 1 : off + q + 1]
    plus = base[off + 1 + q : off + 2 * q + 1]
    minus = base[off + 1 - q : off + 1]
    raw = max(
        float(np.max(np.abs(mid - plus))),
        float(np.max(np.abs(mid - minus))),
    )
    return abs(window.lam) * raw


@dataclass(frozen=True)
class GordonProfile:
    """gamma(q) along a q-schedule plus a finite-horizon decay verdict.

    verdict is DECAY_CONSISTENT with c_max = the largest tested C whose
    log-space sequence log gamma(q) + q log C is non-increasing along the
    schedule (gamma = 0 entries count as the floor), else
    NO_DECAY_AT_HORIZON.  Horizon evidence only, never a proof.
    """

    entries: tuple[tuple[int, float], ...]
    verdict: str
    c_max: float | None


DECAY_CONSISTENT = "DECAY_CONSISTENT"
NO_DECAY_AT_HORIZON = "NO_DECAY_AT_HORIZON"


def _decay_consistent(entries: Sequence[tuple[int, float]], c: float) -> bool:
    log_c = math.log(c)
    for (q1, g1), (q2, g2) in zip(entries, entries[1:]):
        if g2 == 0.0:
            continue  # zero defect is the floor; any C is consistent with it
        if g1 == 0.0:
            return False  # rose from exact repetition back to a positive defect
        if math.log(g2) + q2 * log_c > math.log(g1) + q1 * log_c:
            return False
    return True


def gordon_profile(
    system: SystemSpec,
    f: SamplingFunction,
    lam: float,
    omega,
    q_list: Sequence[int],
    c_list: Sequence[float],
) -> GordonProfile:
    """Defect profile over q_list and the largest C consistent with decay.

    One orbit window [1 - max(q), 2 max(q)] serves every q.  The comparison
    runs in log space (log gamma + q log C) to dodge underflow of C**-q.
    """
    q_list = list(q_list)
    if not q_list:
        raise ValueError("q_list must be nonempty")
    if any(q < 1 for q in q_list):
        raise ValueError("q values must be >= 1")
    if any(b <= a for a, b in zip(q_list, q_list[1:])):
        raise ValueError("q_list must be strictly increasing")
    if not c_list or any(c <= 0 for c in c_list):
        raise ValueError("c_list must be nonempty and positive")
    q_top = q_list[-1]
    window = sample_potential(system, f, lam, omega, 1 - q_top, 2 * q_top)
    entries = tuple((q, gordon_gamma(window, q)) for q in q_list)
    consistent = [c for c in c_list if _decay_consistent(entries, c)]
    if consistent:
        return GordonProfile(entries, DECAY_CONSISTENT, max(consistent))
    return GordonProfile(entries, NO_DECAY_AT_HORIZON, None)


def modulus_bound(f: SamplingFunction, delta: float) -> float:
    """Upper bound on |f(x) - f(y)| over dist(x, y) <= delta (max metric).

    Trigonometric variants use the Lipschitz bound 2*pi*|k|_1*delta per term,
    capped at the term's oscillation.  Piecewise-constant codings have no
    modulus near a jump; their oscillation sup is returned instead.
    """
    if delta < 0:
        raise ValueError("delta must be >= 0")
    if isinstance(f, Cosine):
        k1 = sum(abs(k) for k in f.frequency)
        return min(2.0, 2 * math.pi * k1 * delta)
    if isinstance(f, TrigPoly):
        return sum(
            abs(amp) * min(2.0, 2 * math.pi * sum(abs(k) for k in freq) * delta)
            for freq, amp, _ in f.terms
        )
    if isinstance(f, BourgainQuadratic):
        return min(2.0, 2 * math.pi * delta)
    if isinstance(f, PiecewiseConstant):
        return max(f.values) - min(f.values)
    raise TypeError(f"unknown sampling function {type(f).__name__}")
