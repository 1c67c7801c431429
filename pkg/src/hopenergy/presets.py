"""Named experiment presets for the figure-style sweeps.

Each preset pins the parameter block of one figure-style experiment; the
preset self-test in the test suite asserts these blocks stay intact.
Failure targets are stored as ``eps`` (success probabilities converted at
definition time), sweep grids as explicit values or (lo, hi, points,
scale) ranges.

Grids over the failure target default to 50 log-spaced points per decade,
descending from eps = 0.1 (success 0.9) to eps = 1e-3; the exact grids
behind the published figures are not recorded anywhere, so this density is
an artifact convention.
"""

import math

# (lo, hi, points, scale) or ("values", (v1, v2, ...))
_EPS_SWEEP = ("eps", 0.1, 1e-3, 101, "geometric")
_NT_SWEEP = ("nt", 1, 32, 32, "linear")
_NR_SWEEP = ("nr", 1, 32, 32, "linear")

PRESETS = {
    "fig-sublinear-n4": {
        "command": "line-compare",
        "alpha": 2.0, "nt": 2, "nr": 2, "n": 4, "rate": 4.0,
        "sweep": _EPS_SWEEP,
    },
    "fig-sublinear-n3": {
        "command": "line-compare",
        "alpha": 2.0, "nt": 2, "nr": 2, "n": 3, "rate": 4.0,
        "sweep": _EPS_SWEEP,
    },
    "fig-rate-effect": {
        "command": "line-compare",
        "alpha": 2.0, "nt": 2, "nr": 2, "n": 4,
        "sweep": _EPS_SWEEP,
        "family": ("rate", (4.0, 8.0, 16.0)),
    },
    "fig-loose-qos": {
        "command": "line-compare",
        "alpha": 2.0, "nr": 2, "rate": 4.0, "n": 5,
        "sweep": _NT_SWEEP,
        # success targets 0.90, 0.92, 0.93
        "family": ("eps", (0.10, 0.08, 0.07)),
    },
    "fig-strict-qos": {
        "command": "line-compare",
        "alpha": 2.0, "nr": 2, "rate": 4.0, "n": 5,
        "sweep": _NT_SWEEP,
        # success targets 0.98, 0.99, 0.995
        "family": ("eps", (0.02, 0.01, 0.005)),
    },
    "fig-rx-antennas": {
        "command": "line-compare",
        "alpha": 2.0, "nt": 2, "rate": 4.0, "n": 5,
        "sweep": _NR_SWEEP,
        # success targets 0.92, 0.99
        "family": ("eps", (0.08, 0.01)),
    },
    "fig-mult-short-line": {
        "command": "line-compare",
        "alpha": 2.0, "nr": 2, "rate": 4.0, "n": 2,
        "sweep": _NT_SWEEP,
        # success targets 0.95, 0.97, 0.99
        "family": ("eps", (0.05, 0.03, 0.01)),
    },
    "fig-mult-short-line2": {
        "command": "line-compare",
        "alpha": 2.0, "nr": 4, "rate": 4.0, "n": 2,
        "sweep": _NT_SWEEP,
        "family": ("eps", (0.05, 0.03, 0.01)),
    },
    "fig-mult-short-rand": {
        "command": "rand-compare",
        "alpha": 2.0, "nr": 2, "rate": 4.0, "n": 5, "phi": math.pi / 2,
        "sweep": _NT_SWEEP,
        "family": ("eps", (0.05, 0.03, 0.01)),
    },
    "fig-energy-ppp": {
        "command": "ppp-sim",
        "alpha": 2.0, "nt": 2, "nr": 2, "rate": 2.0, "eps": 0.08,
        "phi": math.pi / 2, "nodes": 30, "trials": 10000,
        "sweep": ("n", "values", (2, 3, 4, 5)),
    },
    "mc-fidelity": {
        "command": "mc-validate",
        "nt": 2, "nr": 2, "trials": 100000, "rate_quantile": 0.999,
        "sweep": ("rho", "values", (1.0, 5.0, 10.0, 20.0)),
    },
}
