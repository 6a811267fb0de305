"""Exact circle arithmetic: fixed-point fractional parts, torus distance,
continued fractions, and badly-approximable classification.

All points on the circle R/Z are stored as unsigned 128-bit fixed-point
integers (``value / 2**128``), so addition, subtraction, and integer
multiples wrap mod 1 with zero drift.  Distances below the fixed-point
resolution (2**-128) are indistinguishable from zero; continued-fraction
expansion therefore stops once remainders sink below 2**-100, reporting
how many partial quotients are trustworthy instead of fabricating more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, isfinite, isqrt

FRAC_BITS = 128
SCALE = 1 << FRAC_BITS

# Remainders below this raw value (2**-100 in absolute terms) are noise:
# they are dominated by the initial rounding of alpha into fixed point.
_NOISE_FLOOR = 1 << (FRAC_BITS - 100)


def _round_div(num: int, den: int) -> int:
    """Round num/den to the nearest integer, halves away from zero (num >= 0)."""
    q, r = divmod(num, den)
    return q + (1 if 2 * r >= den else 0)


@dataclass(frozen=True)
class FixedPointFrac:
    """A point of R/Z stored as ``value / 2**128`` with value in [0, 2**128)."""

    value: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % SCALE)

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_float(cls, x: float) -> "FixedPointFrac":
        """Exact binary value of the double x, reduced mod 1 and rounded to 2**-128."""
        if not isfinite(x):
            raise ValueError(f"x must be finite, got {x!r}")
        f = Fraction(x)
        f -= floor(f)
        return cls(_round_div(f.numerator * SCALE, f.denominator))

    @classmethod
    def from_fraction(cls, numerator, denominator: int | None = None) -> "FixedPointFrac":
        """Nearest fixed-point value to the rational numerator/denominator mod 1."""
        f = Fraction(numerator) if denominator is None else Fraction(numerator, denominator)
        f -= floor(f)
        return cls(_round_div(f.numerator * SCALE, f.denominator))

    # -- conversions ------------------------------------------------------

    def to_float(self) -> float:
        return self.value / SCALE

    def to_fraction(self) -> Fraction:
        return Fraction(self.value, SCALE)

    def __float__(self) -> float:
        return self.to_float()

    # -- exact mod-1 arithmetic -------------------------------------------

    def __add__(self, other: "FixedPointFrac") -> "FixedPointFrac":
        return FixedPointFrac(self.value + other.value)

    def __sub__(self, other: "FixedPointFrac") -> "FixedPointFrac":
        return FixedPointFrac(self.value - other.value)

    def __neg__(self) -> "FixedPointFrac":
        return FixedPointFrac(-self.value)

    def __mul__(self, n: int) -> "FixedPointFrac":
        if not isinstance(n, int):
            return NotImplemented
        return FixedPointFrac(self.value * n)

    __rmul__ = __mul__

    # -- metric -----------------------------------------------------------

    def dist_raw(self, other: "FixedPointFrac") -> int:
        """Circle distance to other, in raw fixed-point units (exact)."""
        d = (self.value - other.value) % SCALE
        return min(d, SCALE - d)

    def dist(self, other: "FixedPointFrac") -> float:
        return self.dist_raw(other) / SCALE

    def norm_raw(self) -> int:
        """Distance to 0, i.e. <x> in raw units."""
        return min(self.value, SCALE - self.value)

    def norm(self) -> float:
        return self.norm_raw() / SCALE

    def __repr__(self) -> str:  # keeps long raw integers out of test output
        return f"FixedPointFrac({self.to_float():.17g})"


ZERO = FixedPointFrac(0)

# Named irrationals, correct to within one unit of the last (128th) bit.
# golden: (sqrt(5)-1)/2; sqrt2: sqrt(2)-1; liouville10: sum of 10**-k! for k=1..4
# (later terms of the series are far below fixed-point resolution).
GOLDEN = FixedPointFrac((isqrt(5 << (2 * FRAC_BITS)) - SCALE) >> 1)
SQRT2_MINUS_1 = FixedPointFrac(isqrt(2 << (2 * FRAC_BITS)) - SCALE)
LIOUVILLE10 = FixedPointFrac.from_fraction(10**23 + 10**22 + 10**18 + 1, 10**24)

ALPHA_PRESETS: dict[str, FixedPointFrac] = {
    "golden": GOLDEN,
    "sqrt2": SQRT2_MINUS_1,
    "liouville10": LIOUVILLE10,
}


class PrecisionExhausted(ArithmeticError):
    """An operation would need partial quotients beyond the trustworthy range.

    Carries the last trustworthy index; cf_expand itself reports exhaustion as
    data (``exhausted_at``) so partial results stay usable.
    """

    def __init__(self, message: str, last_trustworthy_index: int | None = None):
        super().__init__(message)
        self.last_trustworthy_index = last_trustworthy_index


def frac_dist(x: FixedPointFrac, y: FixedPointFrac) -> float:
    """Distance on the circle: min(|x-y| mod 1, 1 - |x-y| mod 1), in [0, 1/2]."""
    return x.dist(y)


def frac_dist_raw(x: FixedPointFrac, y: FixedPointFrac) -> int:
    return x.dist_raw(y)


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients a_1..a_K and convergents (p_k, q_k) of alpha.

    ``exhausted_at`` is None when all requested entries were computed (or the
    expansion terminated exactly); otherwise it is the number of trustworthy
    partial quotients before the remainder sank below the 2**-100 noise floor.
    """

    alpha: FixedPointFrac
    partial_quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    exhausted_at: int | None = None


def cf_expand(alpha: FixedPointFrac, depth: int) -> ContinuedFraction:
    """Continued-fraction expansion of alpha to at most ``depth`` quotients.

    Runs the Euclidean algorithm on the exact integers (2**128, raw value).
    Stops early with ``exhausted_at`` set when the remainder drops below the
    noise floor, and silently when the expansion terminates exactly.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    quotients: list[int] = []
    convergents: list[tuple[int, int]] = []
    p_prev2, q_prev2 = 1, 0  # (p_-1, q_-1)
    p_prev, q_prev = 0, 1  # (p_0, q_0)
    prev, cur = SCALE, alpha.value
    exhausted_at: int | None = None
    for k in range(1, depth + 1):
        if cur == 0:
            break  # exact rational termination: expansion is complete
        if cur < _NOISE_FLOOR:
            exhausted_at = k - 1
            break
        a, rem = divmod(prev, cur)
        quotients.append(a)
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        convergents.append((p, q))
        p_prev2, q_prev2, p_prev, q_prev = p_prev, q_prev, p, q
        prev, cur = cur, rem
    return ContinuedFraction(alpha, tuple(quotients), tuple(convergents), exhausted_at)


def convergent_denominators(cf: ContinuedFraction) -> list[int]:
    """The q_k sequence of the expansion (Fibonacci numbers for the golden ratio)."""
    return [q for _, q in cf.convergents]


@dataclass(frozen=True)
class DiophantineVerdict:
    """Bounded-horizon classification of alpha against <q*alpha> > c/q.

    ``verdict`` is "BADLY_APPROXIMABLE_UP_TO_BOUND" when no q <= q_max violates
    the lower bound, else "NOT_BADLY_APPROXIMABLE_WITNESS" with the first
    witness q (then <q*alpha> <= c/q holds, checked in exact fixed point).
    ``criterion`` records which decision path fired.  Never a proof: the true
    property quantifies over all q.
    """

    alpha: FixedPointFrac
    c: float
    q_max: int
    verdict: str
    witness_q: int | None = None
    witness_dist: float | None = None
    criterion: str = "exhaustive-scan"


BADLY_APPROXIMABLE_UP_TO_BOUND = "BADLY_APPROXIMABLE_UP_TO_BOUND"
NOT_BADLY_APPROXIMABLE_WITNESS = "NOT_BADLY_APPROXIMABLE_WITNESS"


def classify_badly_approximable(
    alpha: FixedPointFrac, c: float, q_max: int, method: str = "auto"
) -> DiophantineVerdict:
    """First q <= q_max with <q*alpha> <= c/q, or a bounded-horizon pass.

    method="scan" walks q = 1..q_max accumulating q*alpha exactly.
    method="convergents" tests only q=1 and the convergent denominators, which
    give the same first witness because q<q*alpha> is minimized at convergents;
    it is used only when the computed expansion covers q_max.  method="auto"
    picks "scan" below one million and falls back to it whenever the
    convergent path cannot cover the horizon.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    if method not in ("auto", "scan", "convergents"):
        raise ValueError(f"unknown method: {method!r}")

    c_frac = Fraction(c)
    # Witness test, exact: umin/S <= c/q  <=>  umin * q * c.den <= c.num * S.
    def is_witness(q: int, umin: int) -> bool:
        return umin * q * c_frac.denominator <= c_frac.numerator * SCALE

    if method in ("auto", "convergents") and (method == "convergents" or q_max > 10**6):
        cf = cf_expand(alpha, depth=200)
        denoms = [1] + convergent_denominators(cf)
        covered = (cf.exhausted_at is None and len(cf.partial_quotients) < 200) or (
            denoms and denoms[-1] > q_max
        )
        if method == "convergents" and not covered:
            raise PrecisionExhausted(
                f"expansion trustworthy only up to q={denoms[-1]}, horizon is {q_max}",
                last_trustworthy_index=cf.exhausted_at,
            )
        if covered or method == "convergents":
            for q in denoms:
                if q > q_max:
                    break
                umin = (alpha * q).norm_raw()
                if is_witness(q, umin):
                    return DiophantineVerdict(
                        alpha, c, q_max, NOT_BADLY_APPROXIMABLE_WITNESS,
                        witness_q=q, witness_dist=umin / SCALE,
                        criterion="convergent-minima",
                    )
            return DiophantineVerdict(
                alpha, c, q_max, BADLY_APPROXIMABLE_UP_TO_BOUND,
                criterion="convergent-minima",
            )

    u = 0
    v = alpha.value
    for q in range(1, q_max + 1):
        u = (u + v) % SCALE
        umin = min(u, SCALE - u)
        if is_witness(q, umin):
            return DiophantineVerdict(
                alpha, c, q_max, NOT_BADLY_APPROXIMABLE_WITNESS,
                witness_q=q, witness_dist=umin / SCALE,
                criterion="exhaustive-scan",
            )
    return DiophantineVerdict(
        alpha, c, q_max, BADLY_APPROXIMABLE_UP_TO_BOUND, criterion="exhaustive-scan"
    )
