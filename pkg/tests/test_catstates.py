import numpy as np
import pytest

from cvbell import catstates, wavefunc
from cvbell.bell import chsh_max, momentum_overlap, position_overlap
from cvbell.catstates import (
    CatFamilySpec,
    cat2,
    envelope_cat,
    flat_cat,
    min_paws,
    optimize_alpha,
    state_chsh,
    table1,
)
from cvbell.wavefunc import evaluate, norm_squared

SQRT_PI = np.sqrt(np.pi)


class TestCat2:
    def test_reference_quantities_at_a10(self):
        f, g = cat2(10.0)
        v = position_overlap(f, g)
        w = momentum_overlap(f, g)
        s, _ = chsh_max(v, w)
        assert v == pytest.approx(1.0, abs=1e-6)
        assert w == pytest.approx(2 / np.pi, abs=1e-4)
        assert s == pytest.approx(1.895, abs=2e-3)

    def test_small_a_limit_stays_normalizable_and_odd(self):
        _, g = cat2(1e-4)
        assert norm_squared(g) == pytest.approx(1.0, abs=1e-9)
        assert g.parity == "odd"

    def test_parities(self):
        f, g = cat2(2.5)
        assert f.parity == "even"
        assert g.parity == "odd"


class TestFlatFamily:
    def test_four_peak_weights(self):
        f, g = flat_cat(4, 15.0)
        wf = [t.amp.real for t in sorted(f.terms, key=lambda t: t.center)]
        wg = [t.amp.real for t in sorted(g.terms, key=lambda t: t.center)]
        base = abs(wf[0])
        assert np.allclose(np.array(wf) / base, [-1, 1, 1, -1])
        assert np.allclose(np.array(wg) / base, [-1, -1, 1, 1])
        centers = [t.center for t in sorted(f.terms, key=lambda t: t.center)]
        assert np.allclose(centers, [-22.5, -7.5, 7.5, 22.5])

    def test_four_peak_s(self):
        f, g = flat_cat(4, 15.0)
        assert state_chsh(f, g)[0] == pytest.approx(2.417, abs=5e-3)

    def test_twelve_peak_s(self):
        f, g = flat_cat(12, 15.0)
        assert state_chsh(f, g)[0] == pytest.approx(2.681, abs=5e-3)

    def test_table1_middle_rows(self):
        rows = dict(table1())
        assert rows[6] == pytest.approx(2.529, abs=5e-3)
        assert rows[8] == pytest.approx(2.611, abs=5e-3)
        assert rows[10] == pytest.approx(2.649, abs=5e-3)

    def test_s_increases_with_n_below_tsirelson(self):
        vals = [s for _, s in table1()]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 2 * np.sqrt(2)


class TestEnvelopeFamily:
    def test_pointwise_direct_evaluation(self):
        # the built terms must agree with the defining form
        #   exp(-q^2 s^2 / 2) * sum_j w_j exp(-(q - T_j)^2 / (2 s^2))
        # up to one global normalization constant
        n, alpha, s = 8, 1.9, 0.45
        f, _ = envelope_cat(n, alpha, s)
        j = np.arange(-n // 2, n // 2)
        teeth = (j + 0.5) * alpha
        w = np.cos(np.pi * (2 * j + 1) / 4)

        def direct(q):
            return np.exp(-q * q * s * s / 2) * (
                w * np.exp(-((q - teeth) ** 2) / (2 * s * s))).sum()

        q_ref = 0.31
        ref_ratio = evaluate(f, q_ref).real / direct(q_ref)
        for q in np.linspace(-6, 6, 41):
            assert evaluate(f, q).real == pytest.approx(direct(q) * ref_ratio, abs=1e-10)

    def test_self_fourier_point(self, envelope12):
        s, v, w, _ = state_chsh(*envelope12)
        # converged honest value; the published rounding is 0.01%
        assert s == pytest.approx(2.8281023, abs=2e-6)
        assert (2 * np.sqrt(2) - s) / (2 * np.sqrt(2)) < 2e-4
        assert v == pytest.approx(w, abs=1e-4)

    def test_unit_s_weights_follow_gaussian_profile(self):
        n, alpha = 6, 8.0
        f, _ = envelope_cat(n, alpha, 1.0)
        terms = sorted(f.terms, key=lambda t: t.center)
        j = np.arange(-n // 2, n // 2)
        teeth = (j + 0.5) * alpha
        expected = np.cos(np.pi * (2 * j + 1) / 4) * np.exp(-teeth**2 / 4)
        amps = np.array([t.amp.real for t in terms])
        assert np.allclose(amps / amps[-1], expected / expected[-1], atol=1e-12)
        assert np.allclose([t.width for t in terms], 1 / np.sqrt(2))

    def test_truncation_stability(self):
        base = min_paws(0.01, SQRT_PI, 0.3)
        s0 = state_chsh(*envelope_cat(base, SQRT_PI, 0.3))[0]
        s1 = state_chsh(*envelope_cat(base + 2, SQRT_PI, 0.3))[0]
        assert abs(s1 - s0) < 1e-4

    def test_parity(self, envelope12):
        f, g = envelope12
        assert f.parity == "even"
        assert g.parity == "odd"


class TestMinPaws:
    def test_reference_case(self):
        assert min_paws(0.01, SQRT_PI, 0.3) == 12

    def test_wider_teeth(self):
        assert min_paws(0.01, SQRT_PI, 0.6) == 6

    def test_epsilon_one_limit(self):
        assert min_paws(1.0, 1.0, 1.0) == 2

    def test_strict_inequality(self):
        # bound exactly even: the next even number is required
        alpha = 2 * np.sqrt(2 * abs(np.log(0.01))) / (6.0 * 0.5)
        assert min_paws(0.01, alpha, 0.5) == 8


class TestOptimizeAlpha:
    def test_ten_peaks(self):
        alpha_opt, s = optimize_alpha(10, 0.3)
        assert alpha_opt == pytest.approx(1.8, abs=0.1)
        assert s == pytest.approx(2.828, abs=5e-3)

    def test_edge_maximum_rejected(self):
        with pytest.raises(ValueError, match="bracket"):
            optimize_alpha(10, 0.3, bracket=(0.5, 1.2))


class TestDuality:
    @pytest.mark.parametrize("alpha", [1.2, 1.5])
    def test_s_symmetric_under_alpha_inversion(self, alpha):
        s = 0.1
        dual = np.pi / alpha
        s1 = state_chsh(*envelope_cat(min_paws(0.01, alpha, s), alpha, s))[0]
        s2 = state_chsh(*envelope_cat(min_paws(0.01, dual, s), dual, s))[0]
        assert s1 == pytest.approx(s2, abs=1e-3)


class TestSpecValidation:
    def test_odd_paw_count_rejected(self):
        with pytest.raises(ValueError):
            CatFamilySpec("flat", 3, 1.0)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            CatFamilySpec("comb", 4, 1.0)

    def test_build_dispatch(self):
        f, g = CatFamilySpec("envelope", 6, 2.0, 0.4).build()
        assert f.parity == "even" and g.parity == "odd"
        assert CatFamilySpec("envelope", 12, SQRT_PI, 0.3).sufficient_paws()
        assert not CatFamilySpec("envelope", 6, SQRT_PI, 0.3).sufficient_paws()
