"""Multi-peak cat-state families and the CHSH tables they generate.

Both families place N Gaussian peaks at (j + 1/2) alpha for
j = -N/2 .. N/2 - 1 with weights cos(pi (2j+1) / 4) for the even member f
and sin(pi (2j+1) / 4) for the odd member g, so every nonzero weight has
the same magnitude.  The "flat" family keeps unit-width peaks; the
"envelope" family widens a Dirac comb into width-s teeth and multiplies by
a width-1/s Gaussian envelope, which in closed form rescales each tooth to

    amp    w_j exp(-s^2 T_j^2 / (2 (1 + s^4)))
    center T_j / (1 + s^4)
    width  s / sqrt(1 + s^4)

with T_j = (j + 1/2) alpha.  Peak spacing alpha is the full distance
between neighbouring peaks (twice the half-spacing a used for the 2-peak
cat, so alpha = 2a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bell, wavefunc
from .wavefunc import Wavefunction, from_arrays

__all__ = [
    "CatFamilySpec",
    "cat2",
    "flat_cat",
    "envelope_cat",
    "min_paws",
    "optimize_alpha",
    "state_chsh",
    "table1",
    "table2",
    "TABLE1_ALPHA",
    "TABLE2_S",
]

TABLE1_ALPHA = 15.0
TABLE1_N = (2, 4, 6, 8, 10, 12)
TABLE2_N = (4, 6, 8, 10, 12)
TABLE2_S = 0.3


@dataclass(frozen=True)
class CatFamilySpec:
    """Parameters selecting one member of the cat families."""

    kind: str  # "flat" or "envelope"
    n_paws: int
    alpha: float
    s: float = 1.0

    def __post_init__(self):
        if self.kind not in ("flat", "envelope"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.n_paws < 2 or self.n_paws % 2:
            raise ValueError("n_paws must be an even integer >= 2")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.s <= 0:
            raise ValueError("s must be positive")

    def build(self) -> tuple[Wavefunction, Wavefunction]:
        if self.kind == "flat":
            return flat_cat(self.n_paws, self.alpha)
        return envelope_cat(self.n_paws, self.alpha, self.s)

    def sufficient_paws(self, epsilon: float = 0.01) -> bool:
        """Whether n_paws meets the truncation bound at tolerance epsilon."""
        if self.kind == "flat":
            return True
        return self.n_paws >= min_paws(epsilon, self.alpha, self.s)


def _weights(n_paws: int):
    j = np.arange(-n_paws // 2, n_paws // 2)
    teeth = (j + 0.5)
    return teeth, np.cos(np.pi * (2 * j + 1) / 4.0), np.sin(np.pi * (2 * j + 1) / 4.0)


def cat2(a: float) -> tuple[Wavefunction, Wavefunction]:
    """Even/odd two-peak cats with peaks at +-a, normalized."""
    if a <= 0:
        raise ValueError("a must be positive")
    return flat_cat(2, 2.0 * a)


def flat_cat(n_paws: int, alpha: float) -> tuple[Wavefunction, Wavefunction]:
    """Equal-height N-peak pair with unit-width peaks spaced by alpha."""
    spec = CatFamilySpec("flat", n_paws, alpha)
    half, wf, wg = _weights(spec.n_paws)
    centers = half * alpha
    ones = np.ones_like(centers)
    zeros = np.zeros_like(centers)
    f = wavefunc.normalize(from_arrays(wf, centers, ones, zeros))
    g = wavefunc.normalize(from_arrays(wg, centers, ones, zeros))
    return f, g


def envelope_cat(n_paws: int, alpha: float, s: float) -> tuple[Wavefunction, Wavefunction]:
    """Gaussian-envelope N-peak pair (teeth width s, envelope width 1/s)."""
    spec = CatFamilySpec("envelope", n_paws, alpha, s)
    half, wf, wg = _weights(spec.n_paws)
    teeth = half * alpha
    d = 1.0 + s**4
    damp = np.exp(-(s**2) * teeth**2 / (2.0 * d))
    centers = teeth / d
    widths = np.full_like(centers, s / np.sqrt(d))
    zeros = np.zeros_like(centers)
    f = wavefunc.normalize(from_arrays(wf * damp, centers, widths, zeros))
    g = wavefunc.normalize(from_arrays(wg * damp, centers, widths, zeros))
    return f, g


def min_paws(epsilon: float, alpha: float, s: float) -> int:
    """Smallest even N with N > 2 sqrt(2 |ln eps|) / (alpha s)."""
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must be in (0, 1]")
    bound = 2.0 * np.sqrt(2.0 * abs(np.log(epsilon))) / (alpha * s)
    return max(2, 2 * (int(np.floor(bound / 2.0)) + 1))


def state_chsh(f: Wavefunction, g: Wavefunction) -> tuple[float, float, float, float]:
    """(S, V, W, theta_m) for a normalized even/odd pair."""
    v = bell.position_overlap(f, g)
    w = bell.momentum_overlap(f, g)
    s, theta_m = bell.chsh_max(v, w)
    return s, v, w, theta_m


def _envelope_s(n_paws: int, alpha: float, s: float) -> float:
    f, g = envelope_cat(n_paws, alpha, s)
    return state_chsh(f, g)[0]


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def optimize_alpha(
    n_paws: int,
    s: float,
    bracket: tuple[float, float] = (0.5, 5.0),
    grid_step: float = 0.02,
    alpha_tol: float = 1e-4,
) -> tuple[float, float]:
    """Best peak spacing for the envelope family: (alpha_opt, S(alpha_opt)).

    Coarse scan at `grid_step` locates the bracket, golden-section refines
    it to |delta alpha| < alpha_tol.  Raises if the maximum sits on the
    bracket edge.
    """
    lo, hi = bracket
    grid = np.arange(lo, hi + grid_step / 2.0, grid_step)
    vals = [_envelope_s(n_paws, a, s) for a in grid]
    i = int(np.argmax(vals))
    if i == 0 or i == len(grid) - 1:
        raise ValueError(f"bracket too small: maximum at edge alpha={grid[i]:.3f}")
    a, c = grid[i - 1], grid[i + 1]
    x1 = c - _GOLDEN * (c - a)
    x2 = a + _GOLDEN * (c - a)
    f1 = _envelope_s(n_paws, x1, s)
    f2 = _envelope_s(n_paws, x2, s)
    while c - a > alpha_tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (c - a)
            f2 = _envelope_s(n_paws, x2, s)
        else:
            c, x2, f2 = x2, x1, f1
            x1 = c - _GOLDEN * (c - a)
            f1 = _envelope_s(n_paws, x1, s)
    alpha_opt = 0.5 * (a + c)
    return float(alpha_opt), _envelope_s(n_paws, alpha_opt, s)


def table1() -> list[tuple[int, float]]:
    """(N, S) for the flat family at alpha = 15, N = 2..12."""
    rows = []
    for n in TABLE1_N:
        f, g = flat_cat(n, TABLE1_ALPHA)
        rows.append((n, state_chsh(f, g)[0]))
    return rows


def table2(n_values: tuple[int, ...] = TABLE2_N) -> list[tuple[int, float, float]]:
    """(N, alpha_opt, S) for the envelope family at s = 0.3."""
    return [(n, *optimize_alpha(n, TABLE2_S)) for n in n_values]
