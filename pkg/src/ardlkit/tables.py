"""Embedded critical-value tables and the interpolation helpers that read them.

Provenance
----------
MACKINNON_TAU
    MacKinnon, J. G. (2010), "Critical values for cointegration tests",
    Queen's Economics Department Working Paper 1227, Table 2 (one variable).
    Critical value at sample size n is b0 + b1/n + b2/n**2 + b3/n**3.
PSS_CASE_III
    Pesaran, Shin and Smith (2001), "Bounds testing approaches to the analysis
    of level relationships", J. Applied Econometrics 16, Table CI(iii):
    asymptotic F bounds, unrestricted intercept and no trend, k = 0..10.
PAPER_TABLE4
    The four bound pairs printed for k = 5 in the emissions study this package
    was built to reproduce. They differ from PSS_CASE_III and are kept verbatim.
DFGLS
    Finite-sample left-tail quantiles of the zero-lag DF-GLS t-ratio under a
    driftless random walk, generated by ``tools/generate_tables.py``
    (ardlkit.montecarlo.null_statistics, 200 000 replications per cell,
    seed 20100 + n). ``n`` is the effective regression sample. The ``inf`` row is
    the asymptotic value: the no-constant Dickey-Fuller quantiles (MacKinnon 2010)
    for the constant case and the Elliott-Rothenberg-Stock (1996) Table 1
    asymptotic row for the trend case. The simulated trend rows agree with
    ERS Table 1 (T = 50, 100, 200) to within 0.03.
CUSUMSQ_C0
    Two-sided 5% values c0 with P(max_t |S_t - t/r| > c0) = 0.05 for the
    CUSUM-of-squares path of r = n - k i.i.d. normal recursive residuals. This
    is the null distribution tabulated by Durbin (1969) and used by Brown,
    Durbin and Evans (1975); the numbers here were regenerated by
    ``tools/generate_tables.py`` (200 000 replications per r, seed 30000 + r).
"""

from __future__ import annotations

import math
import warnings

import numpy as np

MACKINNON_TAU: dict[str, dict[str, tuple[float, float, float, float]]] = {
    "n": {
        "1%": (-2.56574, -2.2358, -3.627, 0.0),
        "5%": (-1.94100, -0.2686, -3.365, 31.223),
        "10%": (-1.61682, 0.2656, -2.714, 25.364),
    },
    "c": {
        "1%": (-3.43035, -6.5393, -16.786, -79.433),
        "5%": (-2.86154, -2.8903, -4.234, -40.040),
        "10%": (-2.56677, -1.5384, -2.809, 0.0),
    },
    "ct": {
        "1%": (-3.95877, -9.0531, -28.428, -134.155),
        "5%": (-3.41049, -4.3904, -9.036, -45.374),
        "10%": (-3.12705, -2.5856, -3.925, -22.380),
    },
}

BOUNDS_LEVELS = ("10%", "5%", "2.5%", "1%")

# k -> {level: (I(0) bound, I(1) bound)}
PSS_CASE_III: dict[int, dict[str, tuple[float, float]]] = {
    0: {"10%": (6.58, 6.58), "5%": (8.21, 8.21), "2.5%": (9.80, 9.80), "1%": (11.79, 11.79)},
    1: {"10%": (4.04, 4.78), "5%": (4.94, 5.73), "2.5%": (5.77, 6.68), "1%": (6.84, 7.84)},
    2: {"10%": (3.17, 4.14), "5%": (3.79, 4.85), "2.5%": (4.41, 5.52), "1%": (5.15, 6.36)},
    3: {"10%": (2.72, 3.77), "5%": (3.23, 4.35), "2.5%": (3.69, 4.89), "1%": (4.29, 5.61)},
    4: {"10%": (2.45, 3.52), "5%": (2.86, 4.01), "2.5%": (3.25, 4.49), "1%": (3.74, 5.06)},
    5: {"10%": (2.26, 3.35), "5%": (2.62, 3.79), "2.5%": (2.96, 4.18), "1%": (3.41, 4.68)},
    6: {"10%": (2.12, 3.23), "5%": (2.45, 3.61), "2.5%": (2.75, 3.99), "1%": (3.15, 4.43)},
    7: {"10%": (2.03, 3.13), "5%": (2.32, 3.50), "2.5%": (2.60, 3.84), "1%": (2.96, 4.26)},
    8: {"10%": (1.95, 3.06), "5%": (2.22, 3.39), "2.5%": (2.48, 3.70), "1%": (2.79, 4.10)},
    9: {"10%": (1.88, 2.99), "5%": (2.14, 3.30), "2.5%": (2.37, 3.60), "1%": (2.65, 3.97)},
    10: {"10%": (1.83, 2.94), "5%": (2.06, 3.24), "2.5%": (2.28, 3.50), "1%": (2.54, 3.86)},
}

PAPER_TABLE4: dict[int, dict[str, tuple[float, float]]] = {
    5: {"10%": (2.07, 3.00), "5%": (2.43, 3.27), "2.5%": (2.81, 3.84), "1%": (3.10, 4.20)},
}

BOUNDS_TABLES = {"general": PSS_CASE_III, "paper-table4": PAPER_TABLE4}

# -- generated by tools/generate_tables.py; do not edit by hand -------------------------
# BEGIN GENERATED
DFGLS: dict[str, dict[float, tuple[float, float, float]]] = {
    'constant': {
        15: (-3.4789, -2.7554, -2.4299),
        20: (-3.2775, -2.5859, -2.2751),
        25: (-3.1552, -2.4921, -2.1815),
        30: (-3.0574, -2.4223, -2.1169),
        40: (-2.9579, -2.3259, -2.0202),
        50: (-2.8984, -2.2623, -1.9536),
        75: (-2.7832, -2.1692, -1.8636),
        100: (-2.7425, -2.1289, -1.8141),
        150: (-2.6867, -2.0792, -1.7617),
        200: (-2.6692, -2.0486, -1.7307),
        300: (-2.6354, -2.0173, -1.7004),
        500: (-2.6073, -1.9862, -1.6648),
        1000: (-2.5912, -1.9643, -1.6405),
        math.inf: (-2.56574, -1.941, -1.61682),
    },
    'constant_trend': {
        15: (-4.8107, -3.8613, -3.4430),
        20: (-4.3951, -3.6287, -3.2589),
        25: (-4.1842, -3.4835, -3.1428),
        30: (-4.0523, -3.3743, -3.0520),
        40: (-3.8868, -3.2532, -2.9483),
        50: (-3.7988, -3.1794, -2.8759),
        75: (-3.6647, -3.0726, -2.7776),
        100: (-3.5999, -3.0209, -2.7305),
        150: (-3.5438, -2.9601, -2.6680),
        200: (-3.5003, -2.9355, -2.6474),
        300: (-3.4803, -2.9115, -2.6162),
        500: (-3.4522, -2.8851, -2.5991),
        1000: (-3.4246, -2.8673, -2.5783),
        math.inf: (-3.48, -2.89, -2.57),
    },
}
CUSUMSQ_C0: dict[int, float] = {
    4: 0.60281,
    5: 0.56979,
    6: 0.55362,
    7: 0.52787,
    8: 0.50883,
    9: 0.49142,
    10: 0.47398,
    11: 0.45866,
    12: 0.44463,
    13: 0.43233,
    14: 0.42086,
    15: 0.41037,
    16: 0.40053,
    17: 0.39012,
    18: 0.38265,
    19: 0.37433,
    20: 0.36742,
    21: 0.35868,
    22: 0.35188,
    23: 0.34625,
    24: 0.34076,
    25: 0.33544,
    26: 0.32951,
    27: 0.32377,
    28: 0.31993,
    29: 0.31395,
    30: 0.31023,
    35: 0.29118,
    40: 0.27419,
    45: 0.26024,
    50: 0.24760,
    60: 0.22810,
    70: 0.21293,
    80: 0.20008,
    90: 0.18952,
    100: 0.18055,
    125: 0.16288,
    150: 0.14969,
    200: 0.13042,
    250: 0.11694,
    300: 0.10722,
    400: 0.09348,
    500: 0.08363,
    750: 0.06878,
    1000: 0.05967,
}
# END GENERATED


def interpolate_inverse_n(table: dict[float, tuple[float, float, float]], n: int) -> dict[str, float]:
    """Linear interpolation in 1/n across rows keyed by n (``math.inf`` allowed)."""
    keys = sorted(table)
    inv = np.array([0.0 if math.isinf(k) else 1.0 / k for k in keys])
    vals = np.array([table[k] for k in keys])
    order = np.argsort(inv)
    inv, vals = inv[order], vals[order]
    x = 1.0 / n
    if x > inv[-1]:
        raise ValueError(f"n={n} is below the smallest tabulated sample size {min(keys)}")
    out = [float(np.interp(x, inv, vals[:, j])) for j in range(3)]
    return {"1%": out[0], "5%": out[1], "10%": out[2]}


def cusumsq_c0(r: int) -> float:
    """5% CUSUM-of-squares half-width for ``r`` recursive residuals.

    Linear interpolation in r inside the table; beyond the largest r the value
    is extrapolated with the asymptotic 1/sqrt(r) rate, which raises a warning.
    """
    keys = sorted(CUSUMSQ_C0)
    if r < keys[0]:
        raise ValueError(f"CUSUMSQ bounds need at least {keys[0]} recursive residuals, got {r}")
    if r > keys[-1]:
        warnings.warn(
            f"r={r} beyond the CUSUMSQ table (max {keys[-1]}); extrapolating as 1/sqrt(r)",
            stacklevel=2,
        )
        return CUSUMSQ_C0[keys[-1]] * math.sqrt(keys[-1] / r)
    return float(np.interp(r, keys, [CUSUMSQ_C0[k] for k in keys]))
