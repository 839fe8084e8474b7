#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Independent reference values for the C++ unit tests (double precision).

Every number is obtained by brute-force nested numerical integration of the
defining probability statements: order statistics written as (1 - e^-t)^n and
ratio distributions integrated over the interference-link gain. No closed-form
rate or binomial-expansion expression is used. The printed values are frozen
into tests/*.cpp. reference_values_mpmath.py recomputes a subset at 20 digits.
"""
import numpy as np
from scipy.integrate import quad

LOG2E = 1.0 / np.log(2.0)
REFERENCE = dict(sr=10.0, sd=1.0, rd=10.0, sp=5.5, rp=5.5)
A2 = 0.1
BREAKS = [0.0, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6]


def half_line(f):
    total = 0.0
    for lo, hi in zip(BREAKS[:-1], BREAKS[1:]):
        total += quad(f, lo, hi, epsabs=1e-15, epsrel=1e-13, limit=400)[0]
    return total + quad(f, BREAKS[-1], np.inf, epsabs=1e-15, epsrel=1e-13, limit=400)[0]


def expect_over_exp(g, omega):
    return half_line(lambda y: g(y) * np.exp(-y / omega) / omega)


def surv_max(t, n, omega):
    return -np.expm1(n * np.log1p(-np.exp(-t / omega))) if t > 0 else 1.0


def surv_x(x, nr, nd, p):
    return expect_over_exp(lambda y: surv_max(x * y, nr, p["sr"]) * surv_max(x * y, nd, p["sd"]), p["sp"])


def surv_ratio(x, n, scale, om_num, om_den):
    return expect_over_exp(lambda y: surv_max(x * y / scale, n, om_num), om_den)


def out(name, v):
    print(f"{name:45s} {v:.17g}")


if __name__ == "__main__":
    out("survival_sc_Y (2,3) a2=0.1 x=0.05",
        surv_ratio(0.05, 2, A2, REFERENCE["sr"], REFERENCE["sp"]) * surv_ratio(0.05, 3, 1.0, REFERENCE["rd"], REFERENCE["rp"]))
    out("survival_sc_Y (2,3) a2=0.1 x=1",
        surv_ratio(1.0, 2, A2, REFERENCE["sr"], REFERENCE["sp"]) * surv_ratio(1.0, 3, 1.0, REFERENCE["rd"], REFERENCE["rp"]))
    out("cdf X (3,3) x=0.2", 1 - surv_x(0.2, 3, 3, REFERENCE))
    out("E[max of 2 Exp(1)]", half_line(lambda t: surv_max(t, 2, 1.0)))
    # OMA with a vanishing relay-destination link: 0.5 E[log2(1 + q min(lsr, lsd)/lsp)]
    out("oma rate q=10 Omega_rd->0",
        0.5 * LOG2E * half_line(lambda x: 10.0 / (1 + 10.0 * x) * surv_x(x, 1, 1, REFERENCE)))
