import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvbell.binning import (
    MINUS,
    PLUS,
    SignedPartition,
    classify,
    positive_negative_binning,
    root_binning,
)
from cvbell.catstates import cat2, flat_cat
from cvbell.wavefunc import GaussianTerm, Wavefunction, evaluate_real, normalize


@pytest.fixture(scope="module")
def four_paw():
    # half-spacing a = 7.5, full spacing 15
    return flat_cat(4, 15.0)


class TestRootBinning:
    def test_two_peak_cat_splits_at_zero(self):
        f, g = cat2(4.0)
        part = root_binning(f, g)
        assert len(part.breakpoints) == 1
        assert part.breakpoints[0] == pytest.approx(0.0, abs=1e-9)
        # f g > 0 iff q > 0
        assert part.signs == (MINUS, PLUS)

    def test_identical_functions_all_plus(self):
        f, _ = cat2(3.0)
        part = root_binning(f, f)
        assert part.breakpoints == ()
        assert part.signs == (PLUS,)

    def test_four_paw_breakpoints(self, four_paw):
        f, g = four_paw
        a = 7.5
        part = root_binning(f, g)
        assert len(part.breakpoints) == 3
        assert np.allclose(part.breakpoints, [-2 * a, 0.0, 2 * a], atol=1e-3)
        assert part.signs == (PLUS, MINUS, PLUS, MINUS)

    def test_four_paw_against_dense_sampling(self, four_paw):
        f, g = four_paw
        part = root_binning(f, g)
        q = np.linspace(-30, 30, 10001)
        prod = evaluate_real(f, q) * evaluate_real(g, q)
        labeled = np.array([classify(part, x) for x in q])
        mask = np.abs(prod) > 1e-12
        assert np.array_equal(labeled[mask], np.sign(prod[mask]))

    def test_sign_agreement_on_random_points(self, rng):
        f, g = flat_cat(6, 8.0)
        part = root_binning(f, g)
        q = rng.uniform(-30, 30, 10_000)
        prod = evaluate_real(f, q) * evaluate_real(g, q)
        mask = np.abs(prod) > 1e-12
        labels = np.array([classify(part, x) for x in q[mask]])
        assert np.array_equal(labels, np.sign(prod[mask]))

    def test_antisymmetry_for_even_odd_pair(self, rng):
        f, g = flat_cat(6, 5.0)
        part = root_binning(f, g)
        q = rng.uniform(0.01, 18, 300)
        prod = np.abs(evaluate_real(f, q) * evaluate_real(g, q))
        keep = q[prod > 1e-10]
        for x in keep:
            assert classify(part, x) == -classify(part, -x)

    def test_non_real_input_rejected(self):
        cplx = normalize(Wavefunction(terms=(GaussianTerm(1.0, 0.0, 1.0, 2.0),)))
        f, _ = cat2(2.0)
        with pytest.raises(ValueError, match="real"):
            root_binning(cplx, f)

    def test_window_too_small_rejected(self):
        f, g = cat2(6.0)
        with pytest.raises(ValueError, match="window"):
            root_binning(f, g, window=4.0)

    def test_touching_zero_is_not_a_breakpoint(self):
        # f g = f^2 touches zero between opposite-sign peaks without crossing
        f = normalize(Wavefunction(terms=(
            GaussianTerm(1.0, -3.0, 1.0, 0.0), GaussianTerm(-1.0, 3.0, 1.0, 0.0))))
        part = root_binning(f, f)
        assert part.breakpoints == ()
        assert part.signs == (PLUS,)


class TestPositiveNegative:
    def test_positive_point(self):
        assert classify(positive_negative_binning(), 1.0) == PLUS

    def test_negative_point(self):
        assert classify(positive_negative_binning(), -0.5) == MINUS

    def test_boundary_goes_to_plus(self):
        assert classify(positive_negative_binning(), 0.0) == PLUS


class TestClassify:
    def test_simple_partition(self):
        part = SignedPartition(breakpoints=(0.0,), signs=(MINUS, PLUS))
        assert classify(part, 3.0) == PLUS

    def test_four_paw_peak_labels(self, four_paw):
        part = root_binning(*four_paw)
        assert classify(part, 7.5) == PLUS
        assert classify(part, -7.5) == MINUS

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(st.floats(-50, 50, allow_nan=False, allow_infinity=False),
                 min_size=0, max_size=6, unique=True),
        st.integers(0, 2**7 - 1),
        st.floats(-60, 60, allow_nan=False, allow_infinity=False),
    )
    def test_completeness(self, breaks, sign_bits, q):
        breaks = tuple(sorted(breaks))
        signs = tuple(PLUS if sign_bits >> i & 1 else MINUS for i in range(len(breaks) + 1))
        part = SignedPartition(breakpoints=breaks, signs=signs)
        label = classify(part, q)
        assert label in (PLUS, MINUS)
        # label must match interval membership
        idx = sum(1 for b in breaks if q >= b)
        assert label == signs[idx]


class TestValidation:
    def test_signs_length(self):
        with pytest.raises(ValueError):
            SignedPartition(breakpoints=(0.0,), signs=(PLUS,))

    def test_monotone_breakpoints(self):
        with pytest.raises(ValueError):
            SignedPartition(breakpoints=(1.0, 0.0), signs=(PLUS, MINUS, PLUS))

    def test_sign_values(self):
        with pytest.raises(ValueError):
            SignedPartition(breakpoints=(), signs=(0,))
