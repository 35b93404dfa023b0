"""Printed reference values, keyed by group name, for side-by-side diffs.

These are seven-decimal published figures; anything computed by this
package is compared against them, never substituted for them.
"""

from __future__ import annotations

ENTROPY = {
    "A_3": 1.0986123, "S_3": 0.5493061,
    "C(4)": 1.3862944, "E(4)": 1.3862944, "D(4)": 1.0397208, "A_4": 0.4620981, "S_4": 0.5776227,
    "C(5)": 1.6094379, "D(5)": 0.8047190, "F(5)": 0.4023595, "A_5": 0.5962179, "S_5": 0.5727620,
    "C(6)": 1.7917595, "D_6(6)": 1.7917595, "D(6)": 1.2424533, "A_4(6)": 1.2424533,
    "F_18(6)": 1.3296613, "2A_4(6)": 1.3143738, "S_4(6d)": 0.9678003, "S_4(6c)": 0.9678003,
    "F_18(6):2": 1.0114043, "F_36(6)": 1.0114043, "2S_4(6)": 1.0037605, "L(6)": 0.5257495,
    "F_36(6):2": 0.9678003, "L(6):2": 0.6094484, "A_6": 0.5693535, "S_6": 0.5734881,
}

GAMMA_THETA_ONE = {
    "A_3": 0.0035671, "C(4)": 0.0265166, "E(4)": 0.0265166, "D(4)": 0.0006060,
    "C(5)": 0.0417891, "C(6)": 0.0505865, "D_6(6)": 0.0505865, "D(6)": 0.0104233,
    "A_4(6)": 0.0104233, "F_18(6)": 0.0170657, "2A_4(6)": 0.0157592,
    "F_18(6):2": 0.0000529, "F_36(6)": 0.0000529, "2S_4(6)": 0.0000059,
}

GAMMA_THETA_HALF = {
    "A_3": 0.3888889, "S_3": 0.2777778,
    "C(4)": 0.4375000, "E(4)": 0.4375000, "D(4)": 0.4062500, "A_4": 0.3125000, "S_4": 0.3437500,
    "C(5)": 0.4600639, "D(5)": 0.3800000, "F(5)": 0.3400000, "A_5": 0.3800000, "S_5": 0.3733333,
    "C(6)": 0.4728484, "D_6(6)": 0.4728484, "D(6)": 0.4444444, "A_4(6)": 0.4444444,
    "F_18(6)": 0.4537037, "2A_4(6)": 0.4513889, "S_4(6d)": 0.4305556, "S_4(6c)": 0.4305556,
    "F_18(6):2": 0.4351852, "F_36(6)": 0.4351852, "2S_4(6)": 0.4340278, "L(6)": 0.3888889,
    "F_36(6):2": 0.4259259, "L(6):2": 0.4027778, "A_6": 0.3935185, "S_6": 0.3946759,
}

POISSON_LIMIT = 0.5734028

# all printed values carry seven decimals
PRINTED_TOLERANCE = 1e-6
