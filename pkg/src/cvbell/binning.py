"""Signed partitions of the real line for binarizing quadrature outcomes.

A homodyne measurement returns a continuous value; a Bell test needs "+" or
"-".  The partitions here assign one of the two labels to every interval
between consecutive sign changes of a reference function.  "Root binning"
uses the sign of the product f(q) g(q): "+" exactly where f g >= 0.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .wavefunc import Wavefunction, evaluate_real, evaluation_window, real_pair_fn

__all__ = ["SignedPartition", "classify", "positive_negative_binning", "root_binning"]

PLUS = 1
MINUS = -1

# products below this magnitude count as zero and join a "+" region
ZERO_TOL = 1e-12
ROOT_TOL = 1e-10
DEFAULT_RESOLUTION = 20001


@dataclass(frozen=True)
class SignedPartition:
    """Intervals (-inf, b1), (b1, b2), ..., (bm, +inf), each labeled +1 or -1.

    Adjacent intervals may share a label; completeness and disjointness are
    guaranteed by construction.
    """

    breakpoints: tuple[float, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one sign per interval")
        if any(s not in (PLUS, MINUS) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    def edges(self) -> np.ndarray:
        return np.concatenate(([-np.inf], self.breakpoints, [np.inf]))


def classify(part: SignedPartition, q: float) -> int:
    """Label of the interval containing q; a breakpoint is labeled by the
    interval to its right."""
    return part.signs[bisect.bisect_right(part.breakpoints, q)]


def positive_negative_binning() -> SignedPartition:
    """The baseline split: "+" iff q >= 0."""
    return SignedPartition(breakpoints=(0.0,), signs=(MINUS, PLUS))


def root_binning(
    f: Wavefunction,
    g: Wavefunction,
    window: float | None = None,
    resolution: int = DEFAULT_RESOLUTION,
) -> SignedPartition:
    """Partition with "+" exactly where f(q) g(q) >= 0.

    Sign changes are located by dense sampling at `resolution` points
    followed by bisection to 1e-10.  Regions where |f g| stays below 1e-12
    produce no breakpoints and are absorbed into a "+" label, matching the
    ">= 0" convention.  Touching (non-crossing) zeros are not breakpoints.
    """
    auto = max(evaluation_window(f), evaluation_window(g))
    if window is None:
        window = auto
    else:
        _check_window_covers(f, g, window, auto)

    pair = real_pair_fn(f, g)  # raises on non-real input when evaluated
    q = np.linspace(-window, window, resolution)
    vf, vg = pair(q)
    v = vf * vg
    s = np.where(np.abs(v) < ZERO_TOL, 0, np.sign(v)).astype(int)

    nz = np.nonzero(s)[0]
    if nz.size == 0:
        return SignedPartition(breakpoints=(), signs=(PLUS,))
    flips = np.nonzero(s[nz][:-1] * s[nz][1:] < 0)[0]
    lo = q[nz[flips]]
    hi = q[nz[flips + 1]]
    roots = _bisect_roots(pair, lo, hi)

    edges = np.concatenate(([-window], roots, [window]))
    signs = []
    for a, b in zip(edges[:-1], edges[1:]):
        inside = nz[(q[nz] > a) & (q[nz] < b)]
        if inside.size == 0:
            signs.append(PLUS)
        else:
            signs.append(int(s[inside[np.argmax(np.abs(v[inside]))]]))
    return _merged(roots, signs)


def _bisect_roots(pair, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Refine all bracketed sign changes of the sampled product at once."""
    if lo.size == 0:
        return lo
    vf, vg = pair(lo)
    flo = vf * vg
    for _ in range(52):  # bracket width shrinks below 1e-15 * initial
        mid = 0.5 * (lo + hi)
        vf, vg = pair(mid)
        fm = vf * vg
        left = flo * fm > 0
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
        if np.max(hi - lo) < ROOT_TOL * 1e-3:
            break
    return 0.5 * (lo + hi)


def _merged(roots, signs) -> SignedPartition:
    """Drop breakpoints between equal-labeled neighbors."""
    kept_b, kept_s = [], [signs[0]]
    for b, s in zip(roots, signs[1:]):
        if s == kept_s[-1]:
            continue
        kept_b.append(float(b))
        kept_s.append(s)
    return SignedPartition(breakpoints=tuple(kept_b), signs=tuple(kept_s))


def _check_window_covers(f, g, window: float, auto: float) -> None:
    """Reject windows that leave |f g| mass outside."""
    if window >= auto:
        return
    x, w = np.polynomial.legendre.leggauss(200)
    outside = 0.0
    for a, b in ((window, auto), (-auto, -window)):
        qs = 0.5 * (b - a) * x + 0.5 * (a + b)
        vals = np.abs(evaluate_real(f, qs) * evaluate_real(g, qs))
        outside += 0.5 * (b - a) * float((w * vals).sum())
    if outside > 1e-9:
        raise ValueError(
            f"window {window} too small: |f g| mass {outside:.2e} outside"
        )
