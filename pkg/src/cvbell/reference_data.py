"""Published reference values with per-value tolerances.

Single source of truth shared by the CLI's built-in checks and the
acceptance test suite.  Tolerances are absolute unless stated otherwise.
"""

import numpy as np

REFERENCE_VERSION = "1.0"

# flat family at peak spacing 15: N -> (S, tol)
TABLE1 = {
    2: (1.895, 0.005),
    4: (2.417, 0.005),
    6: (2.529, 0.005),
    8: (2.611, 0.005),
    10: (2.649, 0.005),
    12: (2.681, 0.005),
}

# envelope family at s = 0.3: N -> (alpha_opt, alpha_tol, S, S_tol)
TABLE2 = {
    4: (2.6, 0.1, 2.764, 0.01),
    6: (2.3, 0.1, 2.823, 0.01),
    8: (2.0, 0.1, 2.826, 0.01),
    10: (1.8, 0.1, 2.828, 0.01),
    12: (1.8, 0.1, 2.828, 0.01),
}

# closed-form overlap limits
TWO_PEAK_W = (2.0 / np.pi, 1e-4)          # at half-spacing a = 10
FOUR_PEAK_W = (8.0 / (3.0 * np.pi), 1e-3)  # at half-spacing a = 5
FOUR_PEAK_S = (2.417, 1e-3)

# number-basis pairs: (f coefficients, g coefficients, S, S_tol)
FOCK_PAIRS = {
    "truncated-14": (
        {0: np.sqrt(0.459), 4: -np.sqrt(0.491), 8: -np.sqrt(0.008), 12: -np.sqrt(0.042)},
        {1: np.sqrt(0.729), 5: np.sqrt(0.155), 9: -np.sqrt(0.107), 13: -np.sqrt(0.009)},
        2.81,
        0.02,
    ),
    "two-term": (
        {0: np.sqrt(0.585), 4: -np.sqrt(0.415)},
        {1: np.sqrt(0.848), 5: np.sqrt(0.152)},
        2.68,
        0.01,
    ),
    "minimal": (
        {0: np.sqrt(0.67), 4: -np.sqrt(0.33)},
        {1: 1.0},
        2.3,
        0.01,
    ),
}

# decomposition of the envelope pair at alpha = sqrt(pi), s = 0.4,
# N from the truncation bound, orders <= 14: n -> (probability, tol)
FOCK_PROBS_F = {0: (0.459, 0.005), 4: (0.491, 0.005), 8: (0.008, 0.005), 12: (0.042, 0.005)}
FOCK_PROBS_G = {1: (0.729, 0.005), 5: (0.155, 0.005), 9: (0.107, 0.005), 13: (0.009, 0.005)}


def fock_coeff_array(spec: dict) -> np.ndarray:
    out = np.zeros(max(spec) + 1)
    for n, c in spec.items():
        out[n] = c
    return out
