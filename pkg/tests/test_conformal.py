import math

import numpy as np
import pytest

from gibbsaccel.catalog import log2_series, make_lorentzian, make_sws
from gibbsaccel.conformal import (
    MOBIUS2,
    MobiusMap,
    PowerSeries,
    abel_extend_eval,
    accelerate_sum,
    estimate_radius,
    euler_equivalence_check,
    mobius_forward,
    recoefficient,
)
from gibbsaccel.filters import FilterSpec
from gibbsaccel.rates import zeta_image_modulus
from gibbsaccel.series import filtered_partial_sum


def brute_force_composition(a, zc, N):
    """Oracle: expand sum a_n * Z(w)^n by nested polynomial multiplies."""
    out = np.zeros(N + 1, dtype=complex)
    out[0] = a[0]
    power = np.zeros(N + 1, dtype=complex)
    power[0] = 1.0
    for n in range(1, len(a)):
        full = np.convolve(power, zc)[: N + 1]
        power = np.zeros(N + 1, dtype=complex)
        power[: len(full)] = full
        out += a[n] * power
    return out


class TestMobiusMap:
    def test_forward_endpoints(self):
        assert mobius_forward(1.0) == pytest.approx(1.0, abs=1e-15)
        assert mobius_forward(0.0) == 0.0

    def test_round_trip(self):
        z = 0.3 + 0.4j
        w = 2 * z / (1 + z)
        assert mobius_forward(w) == pytest.approx(z, abs=1e-14)
        assert MOBIUS2.inverse(mobius_forward(0.7 - 0.2j)) == pytest.approx(
            0.7 - 0.2j, abs=1e-14
        )

    def test_pole_rejected(self):
        with pytest.raises(ZeroDivisionError):
            mobius_forward(2.0)

    def test_general_map_endpoints(self):
        m = MobiusMap(3.0)
        assert m.forward(1.0) == pytest.approx(1.0, abs=1e-15)
        assert m.forward(0.0) == 0.0

    def test_series_coeffs_exact(self):
        zc = MOBIUS2.series_coeffs(8)
        assert zc[0] == 0.0
        for k in range(1, 9):
            assert zc[k] == 0.5**k
        zc3 = MobiusMap(3.0).series_coeffs(5)
        for k in range(1, 6):
            assert zc3[k] == pytest.approx(2.0 / 3.0**k, rel=1e-15)


class TestRecoefficient:
    def test_log2_leading_coefficients(self):
        b = recoefficient(log2_series(16), MOBIUS2, 16).coeffs
        assert b[0] == 0.0
        assert b[1] == pytest.approx(0.5, abs=1e-14)
        assert b[2] == pytest.approx(0.125, abs=1e-14)
        assert b[3] == pytest.approx(1.0 / 24.0, abs=1e-14)

    def test_log2_closed_form_window(self):
        # re-expansion of log(1+z) under the c=2 map is -log(1 - w/2)
        b = recoefficient(log2_series(40), MOBIUS2, 40).coeffs
        for n in range(1, 41):
            assert b[n] == pytest.approx(0.5**n / n, rel=1e-12)

    def test_constant_series_invariant(self):
        b = recoefficient(PowerSeries((1.0, 0.0, 0.0, 0.0)), MOBIUS2, 3).coeffs
        assert b == (1.0, 0.0, 0.0, 0.0)

    def test_composition_against_brute_force_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            deg = int(rng.integers(1, 21))
            a = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
            mapping = MOBIUS2 if rng.random() < 0.5 else MobiusMap(3.0)
            N = int(rng.integers(1, deg + 1))
            got = np.array(recoefficient(PowerSeries(tuple(a)), mapping, N).coeffs)
            want = brute_force_composition(a, mapping.series_coeffs(N), N)
            scale = max(np.abs(want).max(), 1.0)
            assert np.abs(got - want).max() <= 1e-13 * scale

    def test_prefix_property(self):
        series_short = log2_series(24)
        series_long = log2_series(96)
        short = recoefficient(series_short, MOBIUS2, 24).coeffs
        long = recoefficient(series_long, MOBIUS2, 96).coeffs
        assert short == long[:25]

    def test_range_check(self):
        with pytest.raises(ValueError):
            recoefficient(log2_series(10), MOBIUS2, 11)


class TestAccelerateSum:
    def test_log2_geometric_error(self):
        err = abs(accelerate_sum(log2_series(20), MOBIUS2, 20) - math.log(2))
        assert err < 3.0 * 2.0**-20

    def test_log2_balanced_map(self):
        err = abs(accelerate_sum(log2_series(20), MobiusMap(3.0), 20) - math.log(2))
        assert err < 3.0 * 3.0**-20

    def test_constant_series_exact(self):
        c = 2.5 - 0.5j
        assert accelerate_sum(PowerSeries((c, 0.0, 0.0)), MOBIUS2, 2) == c


class TestEulerEquivalence:
    def test_log2_example(self):
        series = log2_series(16)
        total = sum(abs(c) for c in series.coeffs)
        assert euler_equivalence_check(series, 16) <= 1e-12 * total

    def test_constant_series(self):
        assert euler_equivalence_check(PowerSeries((1.0, 0.0, 0.0)), 2) == 0.0

    def test_random_sequences(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            a = rng.uniform(-1, 1, 33) + 1j * rng.uniform(-1, 1, 33)
            series = PowerSeries(tuple(a))
            assert euler_equivalence_check(series, 32) <= 1e-11 * np.abs(a).sum()

    def test_random_sequences_degree_64(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            a = rng.uniform(-1, 1, 65) + 1j * rng.uniform(-1, 1, 65)
            series = PowerSeries(tuple(a))
            assert euler_equivalence_check(series, 64) <= 1e-11 * np.abs(a).sum()


class TestAbelExtend:
    def test_center_value(self):
        sws = make_sws().series
        assert abel_extend_eval(sws, 1.0, 0.0) == 0.0

    def test_sawtooth_closed_form(self):
        sws = make_sws(n_max=5000).series
        for z in (0.3, 0.5, 0.6, 0.9):
            for x in (math.pi / 4, math.pi / 2, 3 * math.pi / 4):
                closed = (
                    x
                    - math.pi
                    + 2 * math.atan((1 - z) / (1 + z) / math.tan(x / 2))
                )
                value = abel_extend_eval(sws, x, z)
                assert value.real == pytest.approx(closed, abs=1e-10)
                assert abs(value.imag) < 1e-12

    def test_delta_closed_form(self):
        from gibbsaccel.catalog import make_delta

        delta = make_delta(n_max=5000).series
        x, z = math.pi / 3, 0.5
        closed = (1 - z * z) / ((1 + z * z) - 2 * z * math.cos(x))
        assert closed == pytest.approx(1.0, abs=1e-15)
        assert abel_extend_eval(delta, x, z).real == pytest.approx(closed, abs=1e-12)

    def test_divergence_outside_disk(self):
        sws = make_sws().series
        with pytest.raises(ValueError):
            abel_extend_eval(sws, 0.5, 1.2)


class TestEstimateRadius:
    def test_pure_geometric(self):
        series = PowerSeries(tuple(0.5**n for n in range(61)))
        assert 1.98 <= estimate_radius(series) <= 2.02

    def test_log2_image_radius(self):
        # verified against recoefficient on its clean double-precision
        # window (test_log2_closed_form_window); extended by closed form
        # so the root test can reach its asymptotic regime
        b = [0.0] + [0.5**n / n for n in range(1, 401)]
        assert 1.95 <= estimate_radius(PowerSeries(tuple(b)), None) <= 2.05

    def test_balanced_map_radius(self):
        # re-expansion of log(1+z) under the c=3 map is log((1+w/3)/(1-w/3)):
        # odd coefficients 2/(n 3^n), even ones vanish
        b = [0.0] + [
            (2.0 / (n * 3.0**n) if n % 2 else 0.0) for n in range(1, 401)
        ]
        got = recoefficient(log2_series(40), MobiusMap(3.0), 40).coeffs
        for n in range(1, 41):
            assert got[n] == pytest.approx(b[n], rel=1e-9, abs=2e-15)
        assert 2.9 <= estimate_radius(PowerSeries(tuple(b)), None) <= 3.1

    def test_lorentzian_image_matches_rate_theory(self):
        tau = 0.2
        fn = make_lorentzian(p=math.exp(-tau), phi=math.pi, n_max=500).series
        x = math.pi
        a = tuple(fn.coeff(n) * np.exp(1j * n * x) for n in range(451))
        b = recoefficient(PowerSeries(a), MOBIUS2, 450)
        predicted = zeta_image_modulus(math.exp(tau), x - math.pi)
        assert estimate_radius(b) == pytest.approx(predicted, rel=0.02)

    def test_needs_enough_coefficients(self):
        with pytest.raises(ValueError):
            estimate_radius(PowerSeries(tuple(0.5**n for n in range(10))))

    def test_all_zero_tail_rejected(self):
        coeffs = (1.0,) + (0.0,) * 40
        with pytest.raises(ValueError):
            estimate_radius(PowerSeries(coeffs))


class TestRegularity:
    def test_acceleration_preserves_convergent_series(self):
        # a geometrically convergent series stays convergent under the
        # Euler weights: the filtered sums approach the closed form
        fn = make_lorentzian(p=0.3, phi=0.0, n_max=10_000).series
        spec = FilterSpec("euler")
        for x in (0.5, 1.5, 2.5):
            exact = fn.exact_eval(x)
            err = abs(exact - filtered_partial_sum(fn, x, 220, spec))
            assert err < 1e-10
