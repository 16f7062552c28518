"""One-dimensional wavefunctions as Gaussian sums or Fock expansions.

A wavefunction is either a finite sum of Gaussian terms

    psi(q) = sum_j  A_j exp(-(q - c_j)^2 / (2 sigma_j^2)) exp(i kappa_j q)

or a number-basis expansion psi(q) = sum_n c_n phi_n(q) with phi_n the
n-th Hermite function.  Both families are closed under the unitary Fourier
transform, so norms, overlaps and transforms are available in closed form.
All values are immutable; every operation returns a new wavefunction.

Conventions: hbar = 1, dimensionless quadratures, and the symmetric
Fourier transform psi~(p) = (2 pi)^(-1/2) * integral psi(q) e^{-iqp} dq.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import special
from scipy.integrate import quad

__all__ = [
    "GaussianTerm",
    "Wavefunction",
    "evaluate",
    "evaluate_real",
    "fourier_transform",
    "normalize",
    "norm_squared",
    "inner_product",
    "evaluation_window",
    "superpose",
    "pair_product_integrals",
]

# Tail clearance used for evaluation windows and sampling grids; a Gaussian
# of width sigma is below 1e-21 of its peak at 10 sigma from its center.
WINDOW_SIGMAS = 10.0
_REAL_TOL = 1e-9
_ZERO_AMP = 1e-14


@dataclass(frozen=True)
class GaussianTerm:
    """A single Gaussian peak with an optional linear phase.

    amp * exp(-(q - center)^2 / (2 width^2)) * exp(i * phase * q)
    """

    amp: complex
    center: float
    width: float = 1.0
    phase: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")


@dataclass(frozen=True)
class Wavefunction:
    """Immutable 1-D wavefunction in one of two representations.

    Exactly one of `terms` (Gaussian sum) and `fock_coeffs` (number-basis
    coefficients c_0..c_nmax) is set.  `parity` is detected on construction:
    "even" if psi(-q) = psi(q), "odd" if psi(-q) = -psi(q), else "none".
    """

    terms: tuple[GaussianTerm, ...] | None = None
    fock_coeffs: tuple[complex, ...] | None = None

    def __post_init__(self):
        if (self.terms is None) == (self.fock_coeffs is None):
            raise ValueError("exactly one of terms / fock_coeffs must be given")
        if self.terms is not None and len(self.terms) == 0:
            raise ValueError("empty Gaussian sum")
        if self.fock_coeffs is not None and len(self.fock_coeffs) == 0:
            raise ValueError("empty Fock expansion")

    @property
    def is_gaussian(self) -> bool:
        return self.terms is not None

    @cached_property
    def parity(self) -> str:
        return _detect_parity(self)

    def scaled(self, factor: complex) -> "Wavefunction":
        if self.is_gaussian:
            return Wavefunction(terms=tuple(
                GaussianTerm(t.amp * factor, t.center, t.width, t.phase)
                for t in self.terms))
        return Wavefunction(fock_coeffs=tuple(c * factor for c in self.fock_coeffs))


def from_arrays(amps, centers, widths, phases) -> Wavefunction:
    """Build a Gaussian-sum wavefunction from parallel parameter arrays."""
    terms = tuple(
        GaussianTerm(complex(a), float(c), float(w), float(k))
        for a, c, w, k in zip(amps, centers, widths, phases)
        if abs(a) > 0.0
    )
    return Wavefunction(terms=terms)


def _term_arrays(psi: Wavefunction):
    t = psi.terms
    amp = np.array([x.amp for x in t], dtype=complex)
    center = np.array([x.center for x in t], dtype=float)
    width = np.array([x.width for x in t], dtype=float)
    phase = np.array([x.phase for x in t], dtype=float)
    return amp, center, width, phase


def evaluation_window(psi: Wavefunction) -> float:
    """Half-width of the interval outside which |psi| is numerically zero."""
    if psi.is_gaussian:
        _, c, w, _ = _term_arrays(psi)
        return float(np.max(np.abs(c)) + WINDOW_SIGMAS * np.max(w))
    n_max = len(psi.fock_coeffs) - 1
    # classical turning point of phi_n plus tail clearance
    return float(np.sqrt(2 * n_max + 1) + WINDOW_SIGMAS)


def evaluate(psi: Wavefunction, q) -> np.ndarray | complex:
    """psi(q) for scalar or array q."""
    scalar = np.isscalar(q)
    qa = np.atleast_1d(np.asarray(q, dtype=float))
    if psi.is_gaussian:
        amp, c, w, k = _term_arrays(psi)
        ex = -((qa[:, None] - c) ** 2) / (2 * w**2)
        if np.all(k == 0.0) and np.all(amp.imag == 0.0):
            val = (np.exp(ex) * amp.real).sum(axis=1).astype(complex)
        else:
            val = (amp * np.exp(ex + 1j * k * qa[:, None])).sum(axis=1)
    else:
        from . import fock

        coeffs = np.asarray(psi.fock_coeffs, dtype=complex)
        table = fock.hermite_table(len(coeffs) - 1, qa)
        val = (coeffs[:, None] * table).sum(axis=0)
    return val[0] if scalar else val


def evaluate_real(psi: Wavefunction, q) -> np.ndarray | float:
    """Evaluate a real-valued wavefunction; rejects significant imaginary parts."""
    val = evaluate(psi, q)
    if np.max(np.abs(np.atleast_1d(val).imag)) > _REAL_TOL:
        raise ValueError("wavefunction is not real-valued")
    return val.real


def real_pair_fn(psi1: Wavefunction, psi2: Wavefunction):
    """Fast vectorized q -> (psi1(q), psi2(q)) for real-valued functions.

    Precomputes term parameters once and shares the Gaussian kernel matrix
    when both functions have identical (center, width, phase) layouts, as
    the cat families do.  Raises on significantly complex values.
    """
    if not (psi1.is_gaussian and psi2.is_gaussian):
        return lambda q: (evaluate_real(psi1, q), evaluate_real(psi2, q))
    a1, c1, w1, k1 = _term_arrays(psi1)
    a2, c2, w2, k2 = _term_arrays(psi2)
    plain = not (k1.any() or k2.any() or a1.imag.any() or a2.imag.any())
    shared = (
        len(c1) == len(c2)
        and np.array_equal(c1, c2)
        and np.array_equal(w1, w2)
        and np.array_equal(k1, k2)
    )

    def fn(q):
        q = np.asarray(q, dtype=float)
        qc = q[:, None]
        if plain:
            kern1 = np.exp(-((qc - c1) ** 2) / (2.0 * w1**2))
            kern2 = kern1 if shared else np.exp(-((qc - c2) ** 2) / (2.0 * w2**2))
            return kern1 @ a1.real, kern2 @ a2.real
        kern1 = np.exp(-((qc - c1) ** 2) / (2.0 * w1**2) + 1j * k1 * qc)
        kern2 = kern1 if shared else np.exp(-((qc - c2) ** 2) / (2.0 * w2**2) + 1j * k2 * qc)
        v1 = kern1 @ a1
        v2 = kern2 @ a2
        bound = max(np.abs(v1).max(initial=0.0), np.abs(v2).max(initial=0.0), 1.0)
        if max(np.abs(v1.imag).max(initial=0.0), np.abs(v2.imag).max(initial=0.0)) > _REAL_TOL * bound:
            raise ValueError("wavefunction is not real-valued")
        return v1.real, v2.real

    return fn


def _detect_parity(psi: Wavefunction) -> str:
    if not psi.is_gaussian:
        c = np.asarray(psi.fock_coeffs, dtype=complex)
        n = np.arange(len(c))
        live = np.abs(c) > 1e-12 * max(1.0, np.abs(c).max())
        if not live.any():
            return "none"
        if np.all(n[live] % 2 == 0):
            return "even"
        if np.all(n[live] % 2 == 1):
            return "odd"
        return "none"
    w = evaluation_window(psi)
    # offbeat sample points avoid accidental symmetry of the grid itself
    qs = np.linspace(0.05, 1.0, 31) ** 1.3 * w
    left = np.asarray(evaluate(psi, -qs))
    right = np.asarray(evaluate(psi, qs))
    scale = max(np.abs(right).max(), np.abs(left).max(), 1e-300)
    if np.abs(left - right).max() < _REAL_TOL * scale:
        return "even"
    if np.abs(left + right).max() < _REAL_TOL * scale:
        return "odd"
    return "none"


# ---------------------------------------------------------------------------
# closed-form Gaussian pair integrals
#
# The product of two terms (the first optionally conjugated) is
#     amp * exp(-A q^2 + beta q - C),   A = a1 + a2 real,  beta complex,
# so every integral reduces to the shifted Gaussian
#     int exp(-A (q - z)^2) dq,   z = beta / (2A).
# Finite limits need erf at complex arguments; for large linear phases this
# is evaluated through erfcx (scaled complementary error function) so that
# every exponential carries a non-positive real exponent.
# ---------------------------------------------------------------------------


def _pair_quadratic(t1, t2, conj1: bool):
    amp1, c1, w1, k1 = t1
    amp2, c2, w2, k2 = t2
    if conj1:
        amp1, k1 = amp1.conj(), -k1
    a1 = 1.0 / (2.0 * w1**2)
    a2 = 1.0 / (2.0 * w2**2)
    A = a1[:, None] + a2[None, :]
    B = a1[:, None] * c1[:, None] + a2[None, :] * c2[None, :]
    C = a1[:, None] * c1[:, None] ** 2 + a2[None, :] * c2[None, :] ** 2
    kk = k1[:, None] + k2[None, :]
    beta = 2.0 * B + 1j * kk
    P = -C + beta**2 / (4.0 * A)
    amp = amp1[:, None] * amp2[None, :]
    return A, beta, P, amp


def _pair_full_integral(t1, t2, conj1: bool) -> complex:
    """Full-line integral of t1(q) * t2(q) summed over all term pairs."""
    A, _, P, amp = _pair_quadratic(t1, t2, conj1)
    return complex((amp * np.sqrt(np.pi / A) * np.exp(P)).sum())


def _pair_interval_integrals(t1, t2, edges, conj1: bool) -> np.ndarray:
    """Integrals of t1(q) * t2(q) over the intervals bounded by `edges`.

    `edges` is an increasing array that may start/end with +-inf.  Returns a
    complex array of length len(edges) - 1, summed over all term pairs.
    """
    A, beta, P, amp = _pair_quadratic(t1, t2, conj1)
    # drop pairs whose product is zero everywhere on the line; the peak of
    # |t1 t2| is exp(Re P + Im(beta)^2 / 4A), phases excluded
    peak = P.real + beta.imag**2 / (4.0 * A)
    live = (peak > -150.0) & (np.abs(amp) > 0.0)
    if not live.any():
        return np.zeros(len(edges) - 1, dtype=complex)
    A, beta, P, amp = A[live], beta[live], P[live], amp[live]
    z = beta / (2.0 * A)
    sA = np.sqrt(A)
    expP = np.exp(P)

    edges = np.asarray(edges, dtype=float)
    finite = np.isfinite(edges)
    # antiderivative endpoint value  e^P erf(sqrt(A)(q - z))  per (pair, edge)
    E = np.empty((A.size, edges.size), dtype=complex)
    if (~finite).any():
        E[:, ~finite] = np.sign(edges[~finite])[None, :] * expP[:, None]
    if finite.any():
        t = sA[:, None] * (edges[finite][None, :] - z[:, None])
        sgn = np.where(t.real >= 0.0, 1.0, -1.0)
        E[:, finite] = sgn * (expP[:, None] - special.erfcx(sgn * t) * np.exp(P[:, None] - t * t))
    pieces = (amp * np.sqrt(np.pi / A) / 2.0)[:, None] * (E[:, 1:] - E[:, :-1])
    return pieces.sum(axis=0)


def pair_product_integrals(psi1: Wavefunction, psi2: Wavefunction, edges) -> np.ndarray:
    """Real integrals of psi1(q) * psi2(q) (no conjugation) per interval.

    Closed form for Gaussian pairs; adaptive quadrature (abs tol 1e-9) when a
    Fock representation is involved.  Both functions must be real-valued.
    """
    edges = np.asarray(edges, dtype=float)
    if psi1.is_gaussian and psi2.is_gaussian:
        vals = _pair_interval_integrals(_term_arrays(psi1), _term_arrays(psi2), edges, conj1=False)
        if np.abs(vals.imag).max(initial=0.0) > _REAL_TOL:
            raise ValueError("product integrals are not real; non-real input")
        return vals.real
    window = max(evaluation_window(psi1), evaluation_window(psi2))
    lo = np.where(np.isfinite(edges), edges, np.sign(edges) * window)
    out = np.empty(len(edges) - 1)
    for i, (a, b) in enumerate(zip(lo[:-1], lo[1:])):
        if b <= a:
            out[i] = 0.0
            continue
        out[i] = quad(
            lambda q: (evaluate_real(psi1, q) * evaluate_real(psi2, q)),
            a, b, epsabs=1e-12, epsrel=1e-12, limit=400,
        )[0]
    return out


def inner_product(psi1: Wavefunction, psi2: Wavefunction) -> complex:
    """<psi1|psi2> with conjugation on the first argument."""
    if psi1.is_gaussian and psi2.is_gaussian:
        return _pair_full_integral(_term_arrays(psi1), _term_arrays(psi2), conj1=True)
    if not psi1.is_gaussian and not psi2.is_gaussian:
        c1 = np.asarray(psi1.fock_coeffs, dtype=complex)
        c2 = np.asarray(psi2.fock_coeffs, dtype=complex)
        n = min(len(c1), len(c2))
        return complex(np.vdot(c1[:n], c2[:n]))
    # mixed representations: quadrature fallback
    window = max(evaluation_window(psi1), evaluation_window(psi2))
    integrand = lambda q: np.conj(evaluate(psi1, q)) * evaluate(psi2, q)
    re = quad(lambda q: integrand(q).real, -window, window, epsabs=1e-12, limit=400)[0]
    im = quad(lambda q: integrand(q).imag, -window, window, epsabs=1e-12, limit=400)[0]
    return complex(re + 1j * im)


def norm_squared(psi: Wavefunction) -> float:
    return inner_product(psi, psi).real


def normalize(psi: Wavefunction) -> Wavefunction:
    """Scale to unit L2 norm.  Raises on numerically zero norm."""
    n2 = norm_squared(psi)
    if n2 < 1e-28:
        raise ValueError("degenerate wavefunction: zero norm")
    return psi.scaled(1.0 / np.sqrt(n2))


def fourier_transform(psi: Wavefunction) -> Wavefunction:
    """Unitary Fourier transform, psi~(p) = (2 pi)^(-1/2) int psi(q) e^{-iqp} dq.

    Gaussian terms map in closed form: a term (amp, c, sigma, kappa) becomes
    (amp sigma e^{i kappa c}, kappa, 1/sigma, -c).  Fock coefficients pick up
    the eigenvalue (-i)^n.
    """
    if psi.is_gaussian:
        amp, c, w, k = _term_arrays(psi)
        return from_arrays(amp * w * np.exp(1j * k * c), k, 1.0 / w, -c)
    c = np.asarray(psi.fock_coeffs, dtype=complex)
    n = np.arange(len(c))
    return Wavefunction(fock_coeffs=tuple(c * (-1j) ** n))


def superpose(parts: list[tuple[complex, Wavefunction]]) -> Wavefunction:
    """Linear combination sum_i coeff_i * psi_i of Gaussian-sum wavefunctions."""
    terms = []
    for coeff, psi in parts:
        if not psi.is_gaussian:
            raise ValueError("superpose requires Gaussian-sum wavefunctions")
        for t in psi.terms:
            terms.append(GaussianTerm(t.amp * coeff, t.center, t.width, t.phase))
    return combine_terms(terms)


def combine_terms(terms) -> Wavefunction:
    """Merge terms sharing (center, width, phase) and drop negligible ones."""
    buckets: dict[tuple[float, float, float], complex] = {}
    order: list[tuple[float, float, float]] = []
    for t in terms:
        key = (round(t.center, 12), round(t.width, 12), round(t.phase, 12))
        if key not in buckets:
            buckets[key] = 0.0
            order.append(key)
        buckets[key] += complex(t.amp)
    scale = max((abs(a) for a in buckets.values()), default=0.0)
    kept = [
        GaussianTerm(buckets[k], k[0], k[1], k[2])
        for k in sorted(order, key=lambda k: (k[0], k[1], k[2]))
        if abs(buckets[k]) > _ZERO_AMP * max(scale, 1.0)
    ]
    if not kept:
        raise ValueError("degenerate wavefunction: all terms cancel")
    return Wavefunction(terms=tuple(kept))
