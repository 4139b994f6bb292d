"""Acceptance gate: one test per criterion, one printed verdict line each.

Each test drives the corresponding check in titchmarsh.verify with its
pinned tolerances and runtime budgets (the budgets are enforced inside
the check functions and flip the result to FAIL on overrun).

Criterion 9 is a known red at m = 5 and is left failing on purpose.
The progression sum T_5(10^7) = 4148145 was recounted three ways
(segmented machinery, a flat divisor table over (p-1)/5, and a
divisor-free double count of pairs 5ef + 1 prime); all agree, so the
ratio T_5 * 5 / (c_5 * 10^7) = 0.8964 is the true value at this scale.
That misses the required 1 +/- 0.1 window by 0.0036 while sitting well
inside the first-order error envelope log(m)(1+c_m)/(c_m log x) = 0.14
of the underlying asymptotic, whose convergence in m is slow; at
X = 10^8 the ratio would pass.  Widening the window would hide a real
property of the mathematics, so the bound stays as stated.  The
companion clause of criterion 9 (ratios pinned to stored pilot values
within 0.02) does hold.
"""

import pytest

from titchmarsh import verify


def _report(n, name, ok, detail):
    print(f"criterion {n} ({name}): {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {n} ({name}): {detail}"


def test_criterion_01_convolution_identity():
    ok, detail = verify.convolution_identity()
    _report(1, "mu_k * d = dk and dk2 = 2^omega", ok, detail)


def test_criterion_02_pillai_oracle():
    ok, detail = verify.pillai_oracle_equality()
    _report(2, "Pillai equals gcd-sum oracle to 2000", ok, detail)


def test_criterion_03_zeta_identity():
    ok, detail = verify.zeta_identity()
    _report(3, "zeta closed form vs Euler product to 10^7", ok, detail)


def test_criterion_04_series_equals_product():
    ok, detail = verify.series_product_identity()
    _report(4, "cf_series matches bk_product within tails", ok, detail)


def test_criterion_05_pillai_series():
    ok, detail = verify.pillai_series_identity()
    _report(5, "Pillai series equals b_2 product", ok, detail)


def test_criterion_06_hand_anchors():
    ok, detail = verify.hand_anchors()
    _report(6, "hand-enumerated sums at x = 20", ok, detail)


def test_criterion_07_partition_exactness():
    ok, detail = verify.partition_exactness()
    _report(7, "s1 + s2 = total = plain dk2 sum at 10^6", ok, detail)


def test_criterion_08_asymptotic_tracking():
    ok, detail = verify.tracking_improves()
    _report(8, "deviation shrinks 10^4 -> 10^8, pilots bit-exact", ok, detail)


def test_criterion_09_felix_tracking():
    ok, detail = verify.felix_tracking()
    _report(9, "progression ratios near 1 and pinned to pilots", ok, detail)


def test_criterion_10_determinism():
    ok, detail = verify.determinism()
    _report(10, "criteria 7-9 identical across workers and widths", ok, detail)
