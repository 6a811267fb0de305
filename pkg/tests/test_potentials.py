import math
import random

import numpy as np
import pytest

from gordonlab.arithmetic import (
    GOLDEN,
    LIOUVILLE10,
    SCALE,
    SQRT2_MINUS_1 as SQRT2,
    ZERO,
    FixedPointFrac,
)
from gordonlab.dynamics import Iet, Permutation, Shift, SkewShift, TorusPoint, orbit
from gordonlab.potentials import (
    DECAY_CONSISTENT,
    NO_DECAY_AT_HORIZON,
    BourgainQuadratic,
    Cosine,
    DimensionMismatchError,
    PiecewiseConstant,
    TrigPoly,
    WindowTooSmallError,
    bourgain_start,
    evaluate_sampling,
    explicit_window,
    gordon_gamma,
    gordon_profile,
    modulus_bound,
    sample_potential,
)

from oracles import brute_defect

QUARTER = FixedPointFrac.from_fraction(1, 4)
THIRD = FixedPointFrac.from_fraction(1, 3)


def torus1(x: FixedPointFrac) -> TorusPoint:
    return TorusPoint((x,))


class TestSamplingFunctions:
    def test_cosine_quarter_rotation_values(self):
        window = sample_potential(Shift((QUARTER,)), Cosine((1,)), 1.0, torus1(ZERO), 0, 3)
        assert window.values == pytest.approx([1.0, 0.0, -1.0, 0.0], abs=1e-15)

    def test_cosine_two_dim_frequency(self):
        point = TorusPoint((QUARTER, THIRD))
        got = evaluate_sampling(Cosine((2, 3)), point)
        assert got == pytest.approx(math.cos(2 * math.pi * (2 / 4 + 3 / 3)), abs=1e-12)

    def test_cosine_phase(self):
        assert evaluate_sampling(Cosine((1,), phase=0.25), torus1(ZERO)) == pytest.approx(
            0.0, abs=1e-15
        )

    def test_cosine_on_interval_point(self):
        assert evaluate_sampling(Cosine((2,)), 0.25) == pytest.approx(-1.0)

    def test_trig_poly_is_the_sum_of_its_terms(self):
        f = TrigPoly((((1,), 0.5, 0.0), ((3,), -0.25, 0.1), ((0,), 0.75, 0.0)))
        x = torus1(FixedPointFrac.from_float(0.37))
        t = 0.37
        expected = (
            0.5 * math.cos(2 * math.pi * t)
            - 0.25 * math.cos(2 * math.pi * (3 * t + 0.1))
            + 0.75
        )
        assert evaluate_sampling(f, x) == pytest.approx(expected, abs=1e-12)

    def test_piecewise_constant_pieces_and_cyclic_wrap(self):
        f = PiecewiseConstant((0.25, 0.75), (10.0, 20.0))
        assert evaluate_sampling(f, torus1(FixedPointFrac.from_float(0.5))) == 10.0
        assert evaluate_sampling(f, torus1(FixedPointFrac.from_float(0.8))) == 20.0
        # left of the first breakpoint -> wrapped last piece
        assert evaluate_sampling(f, torus1(FixedPointFrac.from_float(0.1))) == 20.0
        assert evaluate_sampling(f, torus1(ZERO)) == 20.0
        # plain floats are reduced mod 1 first
        assert evaluate_sampling(f, 1.5) == 10.0
        assert evaluate_sampling(f, -0.1) == 20.0

    def test_piecewise_constant_top_of_circle_stays_in_last_piece(self):
        # the largest representable coordinate rounds to 1.0 as a double but
        # is exactly 1 - 2**-128 on the circle: it belongs to the last piece
        f = PiecewiseConstant((0.0, 0.5), (-3.0, 7.0))
        assert evaluate_sampling(f, torus1(FixedPointFrac(SCALE - 1))) == 7.0
        g = PiecewiseConstant((0.25, 0.75), (10.0, 20.0))
        assert evaluate_sampling(g, torus1(FixedPointFrac(SCALE - 1))) == 20.0

    def test_piecewise_constant_validation(self):
        with pytest.raises(ValueError):
            PiecewiseConstant((0.5, 0.25), (1.0, 2.0))
        with pytest.raises(ValueError):
            PiecewiseConstant((0.0, 1.0), (1.0, 2.0))
        with pytest.raises(ValueError):
            PiecewiseConstant((0.0,), (1.0, 2.0))
        with pytest.raises(ValueError):
            PiecewiseConstant((), ())

    def test_bourgain_quadratic_realizes_the_quadratic_phase(self):
        alpha = FixedPointFrac.from_float(0.1357)
        w1 = FixedPointFrac.from_float(0.21)
        w2 = FixedPointFrac.from_float(0.68)
        window = sample_potential(
            SkewShift(alpha), BourgainQuadratic(), 1.0, bourgain_start(w1, w2), 0, 40
        )
        a, b, c = 0.21, 0.68, 0.1357
        for n in range(41):
            direct = math.cos(2 * math.pi * (a + b * n + c * n * (n - 1)))
            assert window.value_at(n) == pytest.approx(direct, abs=1e-10)

    def test_dimension_mismatches(self):
        with pytest.raises(DimensionMismatchError):
            evaluate_sampling(Cosine((1, 1)), torus1(ZERO))
        with pytest.raises(DimensionMismatchError):
            evaluate_sampling(Cosine((1, 1)), 0.5)
        with pytest.raises(DimensionMismatchError):
            evaluate_sampling(PiecewiseConstant((0.0,), (1.0,)), TorusPoint((ZERO, ZERO)))
        with pytest.raises(DimensionMismatchError):
            evaluate_sampling(BourgainQuadratic(), torus1(ZERO))
        with pytest.raises(DimensionMismatchError):
            sample_potential(SkewShift(GOLDEN), Cosine((1,)), 1.0, TorusPoint((ZERO, ZERO)), 0, 3)
        with pytest.raises(DimensionMismatchError):
            sample_potential(Shift((GOLDEN,)), BourgainQuadratic(), 1.0, torus1(ZERO), 0, 3)


class TestPotentialWindow:
    def test_fields_and_value_at(self):
        window = sample_potential(Shift((GOLDEN,)), Cosine((1,)), 2.5, torus1(ZERO), -3, 5)
        assert (window.n_min, window.n_max) == (-3, 5)
        assert len(window.values) == 9
        assert window.value_at(-3) == window.values[0]
        assert window.value_at(5) == window.values[-1]
        assert window.value_at(0) == pytest.approx(2.5)  # lam * cos(0)
        with pytest.raises(WindowTooSmallError):
            window.value_at(6)
        with pytest.raises(WindowTooSmallError):
            window.value_at(-4)

    def test_values_are_lam_times_base(self):
        window = sample_potential(Shift((GOLDEN,)), Cosine((1,)), -1.75, torus1(ZERO), 0, 20)
        assert np.array_equal(window.values, -1.75 * window.base_values)

    def test_reversed_bounds_rejected(self):
        with pytest.raises(ValueError):
            sample_potential(Shift((GOLDEN,)), Cosine((1,)), 1.0, torus1(ZERO), 3, 0)

    def test_iet_sampling(self):
        beta = float(GOLDEN)
        iet = Iet((1 - beta, beta), Permutation((2, 1)))
        window = sample_potential(iet, Cosine((1,)), 1.0, 0.2, 0, 5)
        pts = orbit(iet, 0.2, 0, 5)
        for n, p in enumerate(pts):
            assert window.value_at(n) == pytest.approx(math.cos(2 * math.pi * p), abs=1e-12)

    def test_explicit_window(self):
        window = explicit_window([1.0, 0.0, -1.0, 0.0] * 3, n_min=-4)
        assert (window.n_min, window.n_max) == (-4, 7)
        assert window.system is None and window.f is None and window.omega is None
        assert window.lam == 1.0
        assert window.value_at(-4) == 1.0
        assert window.value_at(0) == 1.0
        with pytest.raises(ValueError):
            explicit_window([], 0)


class TestGordonGamma:
    def golden_window(self, lam=1.0, q_top=8):
        return sample_potential(
            Shift((GOLDEN,)), Cosine((1,)), lam, torus1(ZERO), 1 - q_top, 2 * q_top
        )

    def test_golden_frozen_value_and_rotation_bound(self):
        window = self.golden_window()
        gamma = gordon_gamma(window, 8)
        assert gamma == 0.34703002961845153
        step = (8 * GOLDEN).norm()
        assert gamma <= modulus_bound(Cosine((1,)), step)
        assert modulus_bound(Cosine((1,)), step) == pytest.approx(
            0.35014991629046716, rel=1e-12
        )

    def test_matches_brute_force_reference(self):
        window = self.golden_window(lam=1.3, q_top=8)
        table = {n: window.value_at(n) for n in range(window.n_min, window.n_max + 1)}
        for q in (1, 2, 3, 5, 8):
            assert gordon_gamma(window, q) == pytest.approx(brute_defect(table, q), rel=1e-12)

    def test_uses_both_directions(self):
        # forward pairs match exactly; the defect must still see the backward
        # mismatch at n - q
        vals = {-1: 0.5, 0: 0.0, 1: 0.0, 2: 0.0, 3: 0.0, 4: 0.0}
        window = explicit_window([vals[n] for n in range(-1, 5)], n_min=-1)
        assert gordon_gamma(window, 2) == 0.5

    def test_exactly_periodic_array_has_zero_defect(self):
        window = explicit_window([0.0, 1.0, 0.0, -1.0] * 3, n_min=-3)
        assert gordon_gamma(window, 4) == 0.0

    def test_window_too_small(self):
        window = self.golden_window(q_top=8)
        with pytest.raises(WindowTooSmallError):
            gordon_gamma(window, 9)
        with pytest.raises(ValueError):
            gordon_gamma(window, 0)

    def test_coupling_homogeneity_is_exact(self):
        base = self.golden_window(lam=1.0)
        g1 = gordon_gamma(base, 8)
        for lam in (-2.5, 3.7, 1e3, 1e-7):
            scaled = self.golden_window(lam=lam)
            assert gordon_gamma(scaled, 8) == abs(lam) * g1  # exact, not approx
        assert gordon_gamma(self.golden_window(lam=0.0), 8) == 0.0


class TestGordonProfile:
    def test_liouville_cosine_frozen_profile(self):
        profile = gordon_profile(
            Shift((LIOUVILLE10,)),
            Cosine((1,)),
            1.0,
            torus1(ZERO),
            [9, 100],
            [1.01, 1.05, 2.0],
        )
        assert profile.verdict == DECAY_CONSISTENT
        assert profile.c_max == 1.05
        (q1, g1), (q2, g2) = profile.entries
        assert (q1, q2) == (9, 100)
        assert g1 == 0.06248601712479675
        assert g2 == 0.0006283185126311026

    def test_large_c_alone_is_rejected(self):
        # gamma(q) tracks 2*pi*<q*alpha>, far above 2**-q: C=2 cannot hold
        profile = gordon_profile(
            Shift((LIOUVILLE10,)), Cosine((1,)), 1.0, torus1(ZERO), [9, 100], [2.0]
        )
        assert profile.verdict == NO_DECAY_AT_HORIZON
        assert profile.c_max is None

    def test_coding_never_decays(self):
        profile = gordon_profile(
            Shift((GOLDEN,)),
            PiecewiseConstant((0.0, 0.5), (0.0, 1.0)),
            1.0,
            torus1(ZERO),
            [1, 2, 3, 5, 8],
            [1.01],
        )
        assert profile.verdict == NO_DECAY_AT_HORIZON
        assert all(g == 1.0 for _, g in profile.entries)

    def test_zero_coupling_is_consistent_with_any_c(self):
        profile = gordon_profile(
            Shift((GOLDEN,)), Cosine((1,)), 0.0, torus1(ZERO), [1, 2, 3], [2.0]
        )
        assert profile.verdict == DECAY_CONSISTENT
        assert profile.c_max == 2.0
        assert all(g == 0.0 for _, g in profile.entries)

    def test_validation(self):
        args = (Shift((GOLDEN,)), Cosine((1,)), 1.0, torus1(ZERO))
        with pytest.raises(ValueError):
            gordon_profile(*args, [], [1.5])
        with pytest.raises(ValueError):
            gordon_profile(*args, [3, 3], [1.5])
        with pytest.raises(ValueError):
            gordon_profile(*args, [5, 2], [1.5])
        with pytest.raises(ValueError):
            gordon_profile(*args, [0, 4], [1.5])
        with pytest.raises(ValueError):
            gordon_profile(*args, [1, 2], [])
        with pytest.raises(ValueError):
            gordon_profile(*args, [1, 2], [-1.0])


class TestModulusBound:
    def test_cosine_lipschitz_and_cap(self):
        assert modulus_bound(Cosine((1,)), 0.1) == pytest.approx(
            0.6283185307179586, rel=1e-15
        )
        assert modulus_bound(Cosine((3,)), 0.5) == 2.0  # capped at the oscillation
        assert modulus_bound(Cosine((2, -3)), 0.01) == pytest.approx(
            2 * math.pi * 5 * 0.01, rel=1e-12
        )
        assert modulus_bound(Cosine((1,)), 0.0) == 0.0

    def test_trig_poly_sums_per_term_caps(self):
        f = TrigPoly((((1,), 0.25, 0.0),))
        assert modulus_bound(f, 0.1) == pytest.approx(0.15707963267948966, rel=1e-15)
        g = TrigPoly((((1,), 0.5, 0.0), ((4,), 0.125, 0.3)))
        assert modulus_bound(g, 10.0) == pytest.approx(0.5 * 2 + 0.125 * 2, rel=1e-15)

    def test_piecewise_constant_returns_oscillation(self):
        f = PiecewiseConstant((0.0, 0.25, 0.5), (3.0, -1.0, 2.0))
        assert modulus_bound(f, 1e-9) == 4.0
        assert modulus_bound(f, 0.3) == 4.0

    def test_bourgain_matches_unit_cosine(self):
        assert modulus_bound(BourgainQuadratic(), 0.07) == modulus_bound(Cosine((1,)), 0.07)

    def test_negative_delta_rejected(self):
        with pytest.raises(ValueError):
            modulus_bound(Cosine((1,)), -0.1)

    def test_bound_dominates_sampled_oscillation(self):
        rng = random.Random(23)
        funcs = [
            Cosine((1,)),
            Cosine((3,), phase=0.2),
            TrigPoly((((1,), 0.5, 0.0), ((2,), -0.3, 0.45), ((5,), 0.1, 0.9))),
        ]
        for f in funcs:
            for _ in range(200):
                delta = rng.uniform(0.0, 0.2)
                x = rng.random()
                y = (x + rng.uniform(-delta, delta)) % 1.0
                px = torus1(FixedPointFrac.from_float(x))
                py = torus1(FixedPointFrac.from_float(y))
                if px.dist(py) > delta:
                    continue  # mod-1 jump: circle distance exceeds delta
                diff = abs(evaluate_sampling(f, px) - evaluate_sampling(f, py))
                assert diff <= modulus_bound(f, delta) + 1e-12

    def test_bound_dominates_gamma_via_repetition_distance(self):
        # the chain: orbit pairs at lag q sit within <q*alpha>, so the defect
        # is at most the modulus at that distance
        for f in (Cosine((1,)), TrigPoly((((1,), 0.6, 0.1), ((2,), 0.2, 0.0)))):
            window = sample_potential(
                Shift((SQRT2,)), f, 1.0, torus1(FixedPointFrac.from_float(0.3)), -28, 58
            )
            for q in (1, 2, 5, 12, 29):
                step = (q * SQRT2).norm()
                assert gordon_gamma(window, q) <= modulus_bound(f, step) + 1e-15
