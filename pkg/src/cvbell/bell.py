"""CHSH quantities for two-mode states (|ff> + e^{i theta}|gg>)/sqrt(2).

With f real even and g real odd, root binning reduces all four quadrature
correlators to two overlap integrals,

    V = int |f(q) g(q)| dq        (position side)
    W = int |f~(p) h~(p)| dp      (momentum side, FT(g) = i h~),

through E_qq = V^2 cos(theta), E_pp = -W^2 cos(theta) and
E_qp = E_pq = -V W sin(theta).  The CHSH combination with the minus sign on
the (p, p) setting is then |cos(theta)(V^2 + W^2) - 2 sin(theta) V W|, with
maximum sqrt(V^4 + W^4 + 6 V^2 W^2) at tan(theta_m) = -2VW / (V^2 + W^2).

`brute_force_correlator` provides the independent check: it integrates the
joint quadrature probability density over the signed-domain products and
never touches the overlap formulas above.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import binning, wavefunc
from .binning import SignedPartition, root_binning
from .wavefunc import Wavefunction

__all__ = [
    "TwoModeState",
    "CorrelatorReport",
    "position_overlap",
    "momentum_overlap",
    "momentum_pair",
    "chsh_value",
    "chsh_max",
    "correlators",
    "brute_force_probabilities",
    "brute_force_correlator",
]

TSIRELSON = 2.0 * np.sqrt(2.0)


@dataclass(frozen=True)
class TwoModeState:
    """(|ff> + e^{i theta} |gg>)/sqrt(2) with f even, g odd, both normalized."""

    f: Wavefunction
    g: Wavefunction
    theta: float

    def __post_init__(self):
        if self.f.parity != "even":
            raise ValueError("f must have even parity")
        if self.g.parity != "odd":
            raise ValueError("g must have odd parity")
        for name, psi in (("f", self.f), ("g", self.g)):
            if abs(wavefunc.norm_squared(psi) - 1.0) > 1e-9:
                raise ValueError(f"{name} must be normalized")


@dataclass(frozen=True)
class CorrelatorReport:
    v: float
    w: float
    e_qq: float
    e_pp: float
    e_qp: float
    e_pq: float
    theta_m: float
    s_at_theta: float
    s_max: float


def position_overlap(f: Wavefunction, g: Wavefunction, part: SignedPartition | None = None) -> float:
    """int_{D+} f g dq - int_{D-} f g dq for the given signed partition.

    With the root-binning partition this equals int |f g| dq.
    """
    if part is None:
        part = root_binning(f, g)
    vals = wavefunc.pair_product_integrals(f, g, part.edges())
    return float((np.asarray(part.signs) * vals).sum())


def momentum_pair(f: Wavefunction, g: Wavefunction) -> tuple[Wavefunction, Wavefunction]:
    """(f~, h~): the momentum-space counterparts of an even/odd real pair.

    FT(f) is real even; FT(g) = i h~ with h~ real odd, so h~ = -i FT(g).
    Raises if FT(g) is not purely imaginary (g not odd real).
    """
    ft = wavefunc.fourier_transform(f)
    gt = wavefunc.fourier_transform(g)
    ht = gt.scaled(-1j)
    window = wavefunc.evaluation_window(ht)
    probe = np.linspace(-window, window, 257)
    if np.max(np.abs(np.asarray(wavefunc.evaluate(ht, probe)).imag)) > 1e-9:
        raise ValueError("FT(g) is not purely imaginary; g must be real and odd")
    return ft, ht


def momentum_overlap(f: Wavefunction, g: Wavefunction, part: SignedPartition | None = None) -> float:
    """Momentum-side analogue of `position_overlap`, equal to int |f~ h~| dp
    under root binning of (f~, h~)."""
    ft, ht = momentum_pair(f, g)
    if part is None:
        part = root_binning(ft, ht)
    vals = wavefunc.pair_product_integrals(ft, ht, part.edges())
    return float((np.asarray(part.signs) * vals).sum())


def chsh_value(v: float, w: float, theta: float) -> float:
    """|cos(theta)(V^2 + W^2) - 2 sin(theta) V W|."""
    return abs(np.cos(theta) * (v * v + w * w) - 2.0 * np.sin(theta) * v * w)


def chsh_max(v: float, w: float) -> tuple[float, float]:
    """(S, theta_m): the theta-optimized CHSH value and its optimizer.

    S = sqrt(V^4 + W^4 + 6 V^2 W^2); theta_m = atan2(-2VW, V^2 + W^2) lies
    on the branch with cos(theta_m) > 0 and tends to -pi/4 as V, W -> 1.
    """
    s = float(np.sqrt(v**4 + w**4 + 6.0 * v * v * w * w))
    theta_m = float(np.arctan2(-2.0 * v * w, v * v + w * w))
    return s, theta_m


def correlators(state: TwoModeState) -> CorrelatorReport:
    """All four closed-form correlators plus the optimized CHSH data."""
    v = position_overlap(state.f, state.g)
    w = momentum_overlap(state.f, state.g)
    ct, st = np.cos(state.theta), np.sin(state.theta)
    s_max, theta_m = chsh_max(v, w)
    return CorrelatorReport(
        v=v,
        w=w,
        e_qq=v * v * ct,
        e_pp=-w * w * ct,
        e_qp=-v * w * st,
        e_pq=-v * w * st,
        theta_m=theta_m,
        s_at_theta=chsh_value(v, w, state.theta),
        s_max=s_max,
    )


# ---------------------------------------------------------------------------
# brute-force correlators
#
# The joint density for any basis pair is bilinear in three one-sided
# profiles; writing u, v for the side functions (f, g in position, f~, h~ in
# momentum) the densities are
#     P(q1, q2) = [u1^2 u2^2 + v1^2 v2^2 + 2 cos(theta) u1 v1 u2 v2] / 2
#     P(p1, p2) = [u1^2 u2^2 + v1^2 v2^2 - 2 cos(theta) u1 v1 u2 v2] / 2
#     P(q1, p2) = [u1^2 u2^2 + v1^2 v2^2 - 2 sin(theta) u1 v1 u2 v2] / 2
# (the sign flips come from FT(g) = i h~).  The P_{+-...} integrals are
# tensor products of per-interval quadratures, evaluated adaptively and
# independently of the closed forms.
# ---------------------------------------------------------------------------

_MAX_NODES = 4096


def _adaptive_panel(fn, a: float, b: float, tol: float) -> float:
    nodes = 24
    x, w = np.polynomial.legendre.leggauss(nodes)
    prev = 0.5 * (b - a) * float(w @ fn(0.5 * (b - a) * x + 0.5 * (a + b)))
    while True:
        nodes *= 2
        x, w = np.polynomial.legendre.leggauss(nodes)
        cur = 0.5 * (b - a) * float(w @ fn(0.5 * (b - a) * x + 0.5 * (a + b)))
        if abs(cur - prev) < tol:
            return cur
        if nodes >= _MAX_NODES:
            raise RuntimeError(
                f"quadrature did not converge on [{a}, {b}]: achieved {abs(cur - prev):.2e}, wanted {tol:.2e}"
            )
        prev = cur


@lru_cache(maxsize=128)
def _side_data(u: Wavefunction, v: Wavefunction, tol: float):
    """Per-interval integrals of u^2, v^2 and u v over the root binning of u v.

    Independent of theta, so cached per function pair.
    """
    part = root_binning(u, v)
    window = max(wavefunc.evaluation_window(u), wavefunc.evaluation_window(v))
    edges = np.clip(part.edges(), -window, window)
    uu = np.empty(len(part.signs))
    vv = np.empty(len(part.signs))
    uv = np.empty(len(part.signs))
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        uvals = lambda q: wavefunc.evaluate_real(u, q)
        vvals = lambda q: wavefunc.evaluate_real(v, q)
        uu[i] = _adaptive_panel(lambda q: uvals(q) ** 2, a, b, tol)
        vv[i] = _adaptive_panel(lambda q: vvals(q) ** 2, a, b, tol)
        uv[i] = _adaptive_panel(lambda q: uvals(q) * vvals(q), a, b, tol)
    signs = np.asarray(part.signs)
    return {
        "uu": (uu[signs == 1].sum(), uu[signs == -1].sum()),
        "vv": (vv[signs == 1].sum(), vv[signs == -1].sum()),
        "uv": (uv[signs == 1].sum(), uv[signs == -1].sum()),
    }


def brute_force_probabilities(state: TwoModeState, bases: tuple[str, str], tol: float = 1e-10) -> dict:
    """P_{s1 s2} for s1, s2 in {+1, -1}, by direct domain integration."""
    if tol < 1e-10:
        raise ValueError("tol must be >= 1e-10")
    b1, b2 = bases
    if b1 not in ("q", "p") or b2 not in ("q", "p"):
        raise ValueError("basis labels must be 'q' or 'p'")
    sides = {}
    if "q" in bases:
        sides["q"] = _side_data(state.f, state.g, tol)
    if "p" in bases:
        ft, ht = momentum_pair(state.f, state.g)
        sides["p"] = _side_data(ft, ht, tol)
    # cross-term weight per basis pair; position-position carries +cos(theta)
    if bases == ("q", "q"):
        cross = np.cos(state.theta)
    elif bases == ("p", "p"):
        cross = -np.cos(state.theta)
    else:
        cross = -np.sin(state.theta)
    d1, d2 = sides[b1], sides[b2]
    probs = {}
    for i1, s1 in enumerate((1, -1)):
        for i2, s2 in enumerate((1, -1)):
            probs[(s1, s2)] = 0.5 * (
                d1["uu"][i1] * d2["uu"][i2]
                + d1["vv"][i1] * d2["vv"][i2]
                + 2.0 * cross * d1["uv"][i1] * d2["uv"][i2]
            )
    return probs


def brute_force_correlator(state: TwoModeState, bases: tuple[str, str], tol: float = 1e-10) -> float:
    """E(bases) = P_++ + P_-- - P_+- - P_-+ from the joint density."""
    p = brute_force_probabilities(state, bases, tol)
    return float(p[(1, 1)] + p[(-1, -1)] - p[(1, -1)] - p[(-1, 1)])


def brute_force_chsh(state: TwoModeState, tol: float = 1e-10) -> float:
    """CHSH combination E_qq + E_qp + E_pq - E_pp from brute-force correlators."""
    e = {b: brute_force_correlator(state, b, tol) for b in (("q", "q"), ("q", "p"), ("p", "q"), ("p", "p"))}
    return abs(e[("q", "q")] + e[("q", "p")] + e[("p", "q")] - e[("p", "p")])
