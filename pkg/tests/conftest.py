import numpy as np
import pytest
from hypothesis import assume
from hypothesis import strategies as st

from cvbell import catstates, wavefunc
from cvbell.wavefunc import GaussianTerm, Wavefunction

finite = dict(allow_nan=False, allow_infinity=False)


@st.composite
def gaussian_sums(draw, max_terms=8, complex_amps=True, phases=True):
    """Random normalized Gaussian-sum wavefunctions."""
    n = draw(st.integers(1, max_terms))
    terms = []
    for _ in range(n):
        amp = draw(st.floats(-2, 2, **finite))
        if complex_amps:
            amp = amp + 1j * draw(st.floats(-2, 2, **finite))
        terms.append(GaussianTerm(
            amp,
            draw(st.floats(-5, 5, **finite)),
            draw(st.floats(0.3, 2.5, **finite)),
            draw(st.floats(-3, 3, **finite)) if phases else 0.0,
        ))
    psi = Wavefunction(terms=tuple(terms))
    assume(wavefunc.norm_squared(psi) > 1e-4)
    return wavefunc.normalize(psi)


@st.composite
def symmetric_sums(draw, parity, max_terms=4):
    """Random normalized real wavefunctions of definite parity."""
    n = draw(st.integers(1, max_terms))
    sign = 1.0 if parity == "even" else -1.0
    terms = []
    for _ in range(n):
        amp = draw(st.floats(-2, 2, **finite))
        c = draw(st.floats(0.2, 5, **finite))
        w = draw(st.floats(0.3, 2.5, **finite))
        terms.append(GaussianTerm(amp, c, w, 0.0))
        terms.append(GaussianTerm(sign * amp, -c, w, 0.0))
    psi = Wavefunction(terms=tuple(terms))
    assume(wavefunc.norm_squared(psi) > 1e-4)
    return wavefunc.normalize(psi)


@pytest.fixture(scope="session")
def flat4():
    return catstates.flat_cat(4, 15.0)


@pytest.fixture(scope="session")
def envelope12():
    return catstates.envelope_cat(12, np.sqrt(np.pi), 0.3)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240309)
