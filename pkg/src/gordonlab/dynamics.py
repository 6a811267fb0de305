"""Dynamical systems on tori and intervals: rotations, the quadratic
skew-shift, d-dimensional triangular skew-products, and interval exchange
transformations (IETs).

Torus systems run on exact 128-bit fixed-point coordinates, so stepping and
closed-form iteration agree bit-for-bit.  IETs run on plain floats (or
``fractions.Fraction`` end-to-end for exact tests) because their breakpoints
are sums of arbitrary reals.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass

from .arithmetic import SCALE, FixedPointFrac, frac_dist

# Float IET breakpoints closer than this are treated as one cut.
IET_TOL = 1e-12


class OutOfDomainError(ValueError):
    """An IET was evaluated outside [0, |lambda|)."""


class UnsupportedSystemError(TypeError):
    """The requested operation is not defined for this system variant."""


# ---------------------------------------------------------------------------
# points and permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusPoint:
    """A point of T^d; distances use the max metric over coordinates."""

    coords: tuple[FixedPointFrac, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) < 1:
            raise ValueError("TorusPoint needs at least one coordinate")

    @classmethod
    def from_floats(cls, *xs: float) -> "TorusPoint":
        return cls(tuple(FixedPointFrac.from_float(x) for x in xs))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> FixedPointFrac:
        return self.coords[i]

    def dist_raw(self, other: "TorusPoint") -> int:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch between torus points")
        return max(a.dist_raw(b) for a, b in zip(self.coords, other.coords))

    def dist(self, other: "TorusPoint") -> float:
        return self.dist_raw(other) / SCALE


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1..m}; images[j-1] is the image of j."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for j, i in enumerate(self.images, start=1):
            inv[i - 1] = j
        return Permutation(tuple(inv))

    def is_irreducible(self) -> bool:
        """No proper prefix {1..k} is mapped onto itself."""
        prefix_max = 0
        for k, image in enumerate(self.images[:-1], start=1):
            prefix_max = max(prefix_max, image)
            if prefix_max == k:
                return False
        return True


# ---------------------------------------------------------------------------
# system descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Shift:
    """Rotation of T^d by the vector alpha."""

    alpha: tuple[FixedPointFrac, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", tuple(self.alpha))
        if len(self.alpha) < 1:
            raise ValueError("Shift needs at least one rotation number")

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def minimality_advisory(self, max_coeff: int = 10) -> bool:
        """Shallow rational-independence scan of (alpha_1..alpha_d, 1).

        Looks for a nonzero integer vector k with |k_i| <= max_coeff whose
        combination k.alpha is within fixed-point noise of an integer.  Cost
        grows like (2*max_coeff+1)**d; advisory only, never enforced.
        """
        noise = 1 << 28  # same 2**-100 resolution as the continued fractions
        coeffs = [0] * self.dim

        def rec(i: int) -> bool:
            if i == self.dim:
                if all(c == 0 for c in coeffs):
                    return True
                raw = sum(c * a.value for c, a in zip(coeffs, self.alpha)) % SCALE
                return min(raw, SCALE - raw) >= noise
            for c in range(-max_coeff, max_coeff + 1):
                coeffs[i] = c
                if not rec(i + 1):
                    return False
            return True

        return rec(0)


@dataclass(frozen=True)
class SkewShift:
    """T(w1, w2) = (w1 + 2*alpha, w1 + w2) on T^2."""

    alpha: FixedPointFrac

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class SkewProduct:
    """T(w)_1 = w1 + alpha, T(w)_i = w1 + ... + wi (i >= 2) on T^d."""

    dim: int
    alpha: FixedPointFrac

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("SkewProduct dimension must be >= 1")


@dataclass(frozen=True)
class Iet:
    """Exchange of m > 1 subintervals of [0, sum(lengths)) by perm.

    Lengths may be floats or ``fractions.Fraction`` (exact mode); all derived
    quantities stay in the same arithmetic.
    """

    lengths: tuple
    perm: Permutation

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if len(self.lengths) != self.perm.size:
            raise ValueError("lengths and permutation sizes differ")
        if len(self.lengths) < 2:
            raise ValueError("an interval exchange needs m > 1 intervals")
        if any(not length > 0 for length in self.lengths):
            raise ValueError("all interval lengths must be positive")


SystemSpec = Shift | SkewShift | SkewProduct | Iet


def system_dim(system: SystemSpec) -> int:
    if isinstance(system, (Shift, SkewShift, SkewProduct)):
        return system.dim
    if isinstance(system, Iet):
        return 1
    raise UnsupportedSystemError(f"unknown system {type(system).__name__}")


def random_point(system: SystemSpec, rng: random.Random):
    """Lebesgue-uniform sample of the system's phase space."""
    if isinstance(system, (Shift, SkewShift, SkewProduct)):
        d = system_dim(system)
        return TorusPoint(tuple(FixedPointFrac(rng.getrandbits(128)) for _ in range(d)))
    if isinstance(system, Iet):
        total = iet_tables(system).total
        return rng.random() * float(total)
    raise UnsupportedSystemError(f"unknown system {type(system).__name__}")


# ---------------------------------------------------------------------------
# IET tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IetTables:
    """Breakpoints of the source/image partitions and per-interval jumps.

    beta[j] is the j-th source breakpoint (beta[0] = 0, beta[m] = total);
    beta_pi are the image-partition breakpoints; interval j translates by
    jumps[j-1] = beta_pi[perm(j)-1] - beta[j-1].
    """

    beta: tuple
    beta_pi: tuple
    total: object
    jumps: tuple


def iet_tables(iet: Iet) -> IetTables:
    m = iet.perm.size
    inv = iet.perm.inverse()
    beta = [0]
    for length in iet.lengths:
        beta.append(beta[-1] + length)
    lengths_pi = [iet.lengths[inv(j) - 1] for j in range(1, m + 1)]
    beta_pi = [0]
    for length in lengths_pi:
        beta_pi.append(beta_pi[-1] + length)
    jumps = tuple(beta_pi[iet.perm(j) - 1] - beta[j - 1] for j in range(1, m + 1))
    return IetTables(tuple(beta), tuple(beta_pi), beta[-1], jumps)


def _iet_interval_index(tables: IetTables, x) -> int:
    """1-based j with beta[j-1] <= x < beta[j]; raises outside [0, total)."""
    if not (0 <= x < tables.total):
        raise OutOfDomainError(f"IET point {x!r} outside [0, {tables.total!r})")
    return bisect_right(tables.beta, x)


def iet_step(iet: Iet, x, tables: IetTables | None = None):
    tables = tables or iet_tables(iet)
    j = _iet_interval_index(tables, x)
    y = x + tables.jumps[j - 1]
    if isinstance(y, float) and y >= tables.total:
        y = math.nextafter(float(tables.total), 0.0)  # guard rounding onto the right edge
    return y


def iet_inverse_step(iet: Iet, y, tables: IetTables | None = None):
    tables = tables or iet_tables(iet)
    if not (0 <= y < tables.total):
        raise OutOfDomainError(f"IET point {y!r} outside [0, {tables.total!r})")
    i = bisect_right(tables.beta_pi, y)
    j = iet.perm.inverse()(i)
    x = y - tables.jumps[j - 1]
    if isinstance(x, float):
        if x < 0.0:
            x = 0.0
        elif x >= tables.total:
            x = math.nextafter(float(tables.total), 0.0)
    return x


# ---------------------------------------------------------------------------
# stepping and closed forms
# ---------------------------------------------------------------------------


def step(system: SystemSpec, omega):
    """One application of T."""
    if isinstance(system, Shift):
        _check_torus_point(system, omega)
        return TorusPoint(tuple(w + a for w, a in zip(omega.coords, system.alpha)))
    if isinstance(system, SkewShift):
        _check_torus_point(system, omega)
        w1, w2 = omega.coords
        return TorusPoint((w1 + 2 * system.alpha, w1 + w2))
    if isinstance(system, SkewProduct):
        _check_torus_point(system, omega)
        out = [omega.coords[0] + system.alpha]
        running = omega.coords[0]
        for w in omega.coords[1:]:
            running = running + w
            out.append(running)
        return TorusPoint(tuple(out))
    if isinstance(system, Iet):
        return iet_step(system, omega)
    raise UnsupportedSystemError(f"unknown system {type(system).__name__}")


def _check_torus_point(system, omega) -> None:
    if not isinstance(omega, TorusPoint):
        raise TypeError("torus systems take TorusPoint states")
    if omega.dim != system_dim(system):
        raise ValueError(
            f"point dimension {omega.dim} does not match system dimension {system_dim(system)}"
        )


def _skewproduct_affine(d: int, n: int) -> tuple[list[list[int]], list[int]]:
    """Integer pair (A, k) with T^n(w) = A.w + alpha*k, by repeated squaring.

    The one-step map is w -> L.w + alpha*e1 with L the lower-triangular
    all-ones matrix; its inverse is the (1, -1) bidiagonal matrix.  All
    arithmetic is exact integer arithmetic.
    """
    ident = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    if n == 0:
        return ident, [0] * d
    if n > 0:
        base = [[1 if j <= i else 0 for j in range(d)] for i in range(d)]
        kbase = [1] + [0] * (d - 1)
    else:
        base = [
            [1 if i == j else (-1 if j == i - 1 else 0) for j in range(d)] for i in range(d)
        ]
        # T^-1(w) = Linv.w - alpha*Linv.e1; the first column of Linv is (1, -1, 0, ...)
        kbase = [-1, 1] + [0] * (d - 2) if d >= 2 else [-1]

    def compose(a2, k2, a1, k1):
        a = [
            [sum(a2[i][t] * a1[t][j] for t in range(d)) for j in range(d)]
            for i in range(d)
        ]
        k = [sum(a2[i][t] * k1[t] for t in range(d)) + k2[i] for i in range(d)]
        return a, k

    result_a, result_k = ident, [0] * d
    power_a, power_k = base, kbase
    e = abs(n)
    while e:
        if e & 1:
            result_a, result_k = compose(power_a, power_k, result_a, result_k)
        e >>= 1
        if e:
            power_a, power_k = compose(power_a, power_k, power_a, power_k)
    return result_a, result_k


def iterate_closed_form(system: SystemSpec, omega, n: int):
    """T^n in one exact evaluation (any integer n); IETs are unsupported."""
    if isinstance(system, Shift):
        _check_torus_point(system, omega)
        return TorusPoint(tuple(w + n * a for w, a in zip(omega.coords, system.alpha)))
    if isinstance(system, SkewShift):
        _check_torus_point(system, omega)
        w1, w2 = omega.coords
        first = w1 + (2 * n) * system.alpha
        second = w2 + n * w1 + (n * (n - 1)) * system.alpha
        return TorusPoint((first, second))
    if isinstance(system, SkewProduct):
        _check_torus_point(system, omega)
        mat, kvec = _skewproduct_affine(system.dim, n)
        coords = []
        for i in range(system.dim):
            raw = sum(mat[i][j] * omega.coords[j].value for j in range(system.dim))
            raw += kvec[i] * system.alpha.value
            coords.append(FixedPointFrac(raw))
        return TorusPoint(tuple(coords))
    if isinstance(system, Iet):
        raise UnsupportedSystemError("interval exchanges have no closed-form iterate")
    raise UnsupportedSystemError(f"unknown system {type(system).__name__}")


def orbit(system: SystemSpec, omega, n_min: int, n_max: int) -> list:
    """[T^n omega for n in n_min..n_max], two-sided."""
    if n_min > n_max:
        raise ValueError("n_min must be <= n_max")
    if isinstance(system, Iet):
        tables = iet_tables(system)
        cur = omega
        if n_min >= 0:
            for _ in range(n_min):
                cur = iet_step(system, cur, tables)
        else:
            for _ in range(-n_min):
                cur = iet_inverse_step(system, cur, tables)
        points = [cur]
        for _ in range(n_max - n_min):
            cur = iet_step(system, cur, tables)
            points.append(cur)
        return points
    cur = iterate_closed_form(system, omega, n_min)
    points = [cur]
    for _ in range(n_max - n_min):
        cur = step(system, cur)
        points.append(cur)
    return points


def skewshift_pair_difference(
    alpha: FixedPointFrac, omega1: FixedPointFrac, n: int, q: int
) -> tuple[FixedPointFrac, FixedPointFrac]:
    """T^{n+q}(w) - T^n(w) for the skew-shift: (2q*alpha, q*w1 + (q^2+2nq-q)*alpha).

    Independent of w2; matches n-fold composition of the one-step map.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    first = (2 * q) * alpha
    second = q * omega1 + (q * q + 2 * n * q - q) * alpha
    return first, second


# ---------------------------------------------------------------------------
# IET continuity refinement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IetContinuityPiece:
    """A maximal interval [lo, hi) on which T^q acts as x -> x + translation."""

    lo: object
    hi: object
    translation: object

    @property
    def length(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2


def iet_refine_continuity(iet: Iet, q: int) -> list[IetContinuityPiece]:
    """Maximal intervals on which T^q is a translation (at most q(m-1)+1).

    Pulls the internal breakpoints back through T^-l for l = 0..q-1, splits
    [0, total) at those cuts, measures each piece's translation by stepping
    its midpoint q times, and merges adjacent pieces whose translations agree
    exactly.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    tables = iet_tables(iet)
    exact = not isinstance(tables.total, float)
    tol = 0 if exact else IET_TOL * max(1.0, float(tables.total))

    cuts = list(tables.beta)  # includes 0 and total
    layer = list(tables.beta[1:-1])
    for _ in range(q - 1):
        layer = [iet_inverse_step(iet, x, tables) for x in layer]
        cuts.extend(layer)
    cuts.sort()
    merged_cuts = [cuts[0]]
    for c in cuts[1:]:
        if c - merged_cuts[-1] > tol:
            merged_cuts.append(c)
    if merged_cuts[-1] != tables.total:
        merged_cuts[-1] = tables.total  # the right edge is always a cut

    def same_translation(a, b) -> bool:
        # cyclic permutations make some neighbours genuinely continuous;
        # in float mode their measured translations agree only up to rounding
        return a == b if exact else abs(a - b) <= tol

    pieces: list[IetContinuityPiece] = []
    for lo, hi in zip(merged_cuts, merged_cuts[1:]):
        mid = (lo + hi) / 2
        image = mid
        for _ in range(q):
            image = iet_step(iet, image, tables)
        translation = image - mid
        if pieces and pieces[-1].hi == lo and same_translation(pieces[-1].translation, translation):
            pieces[-1] = IetContinuityPiece(pieces[-1].lo, hi, translation)
        else:
            pieces.append(IetContinuityPiece(lo, hi, translation))
    return pieces
