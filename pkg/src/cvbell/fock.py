"""Hermite-function machinery and number-basis decompositions.

phi_n(q) = (2^n n! sqrt(pi))^(-1/2) H_n(q) e^{-q^2/2} is evaluated through
the three-term recurrence on phi_n itself,

    phi_n = sqrt(2/n) q phi_{n-1} - sqrt((n-1)/n) phi_{n-2},

which stays stable where the direct H_n formula overflows.  Under the
Fourier convention used here, phi_n maps to (-i)^n phi_n, so expansions
supported on n = 0 (mod 4) are transform eigenstates with eigenvalue 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss

from . import bell, binning, wavefunc
from .wavefunc import Wavefunction

__all__ = ["FockExpansion", "hermite_function", "hermite_table", "fock_decompose", "fock_pair_chsh"]

CAPTURE_THRESHOLD = 0.99


@dataclass(frozen=True)
class FockExpansion:
    """Real number-basis coefficients c_0..c_nmax of a decomposed state.

    `captured` is sum c_n^2, the probability weight recovered below the
    truncation order; `low_capture` flags captured < 0.99.
    """

    coeffs: tuple[float, ...]
    captured: float

    @property
    def low_capture(self) -> bool:
        return self.captured < CAPTURE_THRESHOLD

    def probabilities(self) -> np.ndarray:
        return np.asarray(self.coeffs) ** 2

    def normalized_probabilities(self) -> np.ndarray:
        """Probabilities of the truncated expansion renormalized to 1."""
        p = self.probabilities()
        return p / p.sum()

    def wavefunction(self) -> Wavefunction:
        psi = Wavefunction(fock_coeffs=tuple(complex(c) for c in self.coeffs))
        return wavefunc.normalize(psi)


def hermite_table(n_max: int, q) -> np.ndarray:
    """phi_n(q) for all n = 0..n_max; shape (n_max + 1, len(q))."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    out = np.empty((n_max + 1, q.size))
    out[0] = np.pi**-0.25 * np.exp(-q * q / 2.0)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * q * out[0]
    for n in range(2, n_max + 1):
        out[n] = np.sqrt(2.0 / n) * q * out[n - 1] - np.sqrt((n - 1.0) / n) * out[n - 2]
    return out


def hermite_function(n: int, q) -> np.ndarray | float:
    """phi_n(q) for scalar or array q."""
    if n < 0:
        raise ValueError("n must be >= 0")
    val = hermite_table(n, q)[n]
    return float(val[0]) if np.isscalar(q) else val


def fock_decompose(psi: Wavefunction, n_max: int, nodes: int | None = None) -> FockExpansion:
    """Coefficients c_n = <phi_n|psi> of a real normalized wavefunction.

    Uses Gauss-Hermite quadrature with the e^{x^2} weight folded back in;
    the node count defaults to max(4 (n_max + 1), 250), ample for states
    whose support lies within the node span.
    """
    if abs(wavefunc.norm_squared(psi) - 1.0) > 1e-6:
        raise ValueError("decompose expects a normalized wavefunction")
    if nodes is None:
        nodes = max(4 * (n_max + 1), 250)
    x, w = hermgauss(nodes)
    folded = np.exp(np.log(w) + x * x)
    vals = wavefunc.evaluate_real(psi, x)
    coeffs = hermite_table(n_max, x) @ (folded * vals)
    captured = float((coeffs**2).sum())
    return FockExpansion(coeffs=tuple(float(c) for c in coeffs), captured=captured)


def _support_residues(coeffs: np.ndarray, residue: int) -> bool:
    n = np.arange(len(coeffs))
    live = np.abs(coeffs) > 1e-9
    return bool(np.all(n[live] % 4 == residue))


def fock_pair_chsh(f_coeffs, g_coeffs) -> tuple[float, float, float]:
    """(S, V, W) for a state pair given directly by Fock coefficients.

    f must be supported on even n and g on odd n.  When the supports are
    purely 0 (mod 4) and 1 (mod 4) both functions are Fourier-transform
    eigenstates, which forces W = V and S = 2 sqrt(2) V^2; this identity is
    asserted to 1e-6 as an internal consistency check.
    """
    cf = np.asarray(getattr(f_coeffs, "coeffs", f_coeffs), dtype=float)
    cg = np.asarray(getattr(g_coeffs, "coeffs", g_coeffs), dtype=float)
    f = wavefunc.normalize(Wavefunction(fock_coeffs=tuple(map(complex, cf))))
    g = wavefunc.normalize(Wavefunction(fock_coeffs=tuple(map(complex, cg))))
    if f.parity != "even" or g.parity != "odd":
        raise ValueError("parity violation: f must be even-n, g odd-n")
    part = binning.root_binning(f, g)
    v = bell.position_overlap(f, g, part)
    w = bell.momentum_overlap(f, g)
    s, _ = bell.chsh_max(v, w)
    if _support_residues(cf, 0) and _support_residues(cg, 1):
        assert abs(w - v) < 1e-6, f"Fourier eigenstates must give W = V, got {v} vs {w}"
        assert abs(s - 2.0 * np.sqrt(2.0) * v * v) < 1e-6
    return float(s), float(v), float(w)
