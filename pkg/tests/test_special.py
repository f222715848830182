import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunkl_an.special import (
    HumbertSpec,
    LauricellaSpec,
    SeriesDivergenceError,
    SeriesParams,
    SeriesToleranceError,
    degenerate_ho,
    exp_tail_bound,
    humbert_phi2,
    lauricella_fd,
    log_gamma,
    phi2,
    pochhammer,
)
from fractions import Fraction

mpmath.mp.dps = 30


def mp_phi2(b, c, x, order=90):
    """Brute-force multi-index sum in extended precision."""
    total = mpmath.mpf(0)
    for m in itertools.product(range(order + 1), repeat=len(b)):
        k = sum(m)
        if k > order:
            continue
        term = 1 / mpmath.rf(c, k)
        for bj, xj, mj in zip(b, x, m):
            term *= mpmath.rf(bj, mj) * mpmath.mpf(xj) ** mj / mpmath.factorial(mj)
        total += term
    return float(total)


def test_pochhammer_exact_and_float():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(3, 0) == 1
    assert pochhammer(-2, 3) == 0
    for a, m in [(0.3, 7), (2.5, 12), (-1.5, 5)]:
        assert pochhammer(a, m) == pytest.approx(float(mpmath.rf(a, m)), rel=1e-14)
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)


@pytest.mark.parametrize("a", [1e-3, 0.25, 1.0, 3.5, 17.25, 150.0])
def test_log_gamma(a):
    assert log_gamma(a) == pytest.approx(float(mpmath.loggamma(a)), rel=1e-13, abs=1e-14)


def test_log_gamma_domain():
    with pytest.raises(ValueError):
        log_gamma(0.0)


def test_exp_tail_bound_dominates():
    for s, m in [(1.0, 10), (3.0, 30), (0.5, 5)]:
        true_tail = float(mpmath.exp(s) - sum(mpmath.mpf(s) ** k / mpmath.factorial(k)
                                              for k in range(m + 1)))
        assert true_tail <= exp_tail_bound(s, m)
    assert exp_tail_bound(0.0, 3) == 0.0
    assert exp_tail_bound(10.0, 5) == math.inf


def test_phi2_empty_is_one():
    assert phi2([], 1.5, []).value == 1.0


def test_phi2_one_variable_is_kummer():
    for b, c, x in [(0.5, 1.0, 1.5), (1.0, 3.0, -2.0), (2.5, 2.5, 0.7)]:
        got = phi2([b], c, [x])
        ref = float(mpmath.hyp1f1(b, c, x))
        assert abs(got.value - ref) <= got.err_bound + 1e-15


@given(st.lists(st.floats(0.1, 3.0), min_size=1, max_size=4),
       st.floats(0.0, 2.0), st.floats(-1.5, 1.5))
def test_phi2_diagonal_collapse(b, extra, s):
    c = sum(b) + extra
    got = phi2(b, c, [s] * len(b))
    ref = float(mpmath.hyp1f1(sum(b), c, s))
    assert abs(got.value - ref) <= got.err_bound + 1e-14 * abs(ref)


def test_phi2_two_and_three_variables_brute_force():
    cases = [([0.5, 1.5], 2.5, [1.2, -0.7]), ([1.0, 2.0, 0.25], 4.0, [-1.0, 0.5, 1.9])]
    for b, c, x in cases:
        got = phi2(b, c, x)
        ref = mp_phi2(b, c, x, order=45 if len(b) == 3 else 80)
        assert abs(got.value - ref) <= got.err_bound + 1e-15


@given(st.lists(st.floats(-2, 2), min_size=2, max_size=3))
def test_phi2_refinement_invariant(x):
    b = [0.5] * len(x)
    coarse = phi2(b, 2.0, x, SeriesParams(60, 1e-10))
    fine = phi2(b, 2.0, x, SeriesParams(80, 1e-14))
    assert abs(coarse.value - fine.value) <= coarse.err_bound + fine.err_bound


def test_phi2_tolerance_error():
    with pytest.raises(SeriesToleranceError) as info:
        phi2([1.0, 1.0], 2.0, [30.0, 20.0])
    assert info.value.order == 60 and info.value.attained > 1e-12


def test_phi2_domain_checks():
    with pytest.raises(ValueError):
        phi2([-0.5], 1.0, [0.1])
    with pytest.raises(ValueError):
        phi2([1.0, 2.0], 2.0, [0.1, 0.1])
    with pytest.raises(ValueError):
        HumbertSpec([1.0], -2.0, [0.1])
    with pytest.raises(ValueError):
        HumbertSpec([1.0, 2.0], 4.0, [0.1])


def test_fd_one_variable_is_gauss():
    for a, b, c, z in [(0.5, 1.0, 2.0, 0.3), (-1.5, 0.5, 1.0, -0.6), (2.0, 3.0, 4.5, 0.5)]:
        got = lauricella_fd(LauricellaSpec(a, [b], c, [z]), SeriesParams(200, 1e-14))
        assert got.value == pytest.approx(float(mpmath.hyp2f1(a, b, c, z)), rel=1e-12)
        assert not got.certified


def test_fd_two_variables_is_appell_f1():
    for a, b1, b2, c, z1, z2 in [(0.7, 0.5, 1.5, 2.2, 0.3, -0.4), (-2.5, 1.0, 1.0, 3.0, 0.5, 0.2)]:
        got = lauricella_fd(LauricellaSpec(a, [b1, b2], c, [z1, z2]), SeriesParams(120, 1e-14))
        ref = float(mpmath.appellf1(a, b1, b2, c, z1, z2))
        assert got.value == pytest.approx(ref, rel=1e-12)


def test_fd_terminates_for_negative_integer_a():
    got = lauricella_fd(LauricellaSpec(-2, [1.0, 1.0], 3.0, [0.5, -0.5]))
    # 1 + (-2)(0.5 - 0.5)/3 + (-2)(-1)/(3*4) * (2*0.25 + 2*0.25 - 2*0.25) ...
    ref = float(mpmath.appellf1(-2, 1, 1, 3, 0.5, -0.5))
    assert got.certified and got.tail_bound == 0.0 and got.order == 2
    assert got.value == pytest.approx(ref, rel=1e-15)


def test_fd_divergence():
    with pytest.raises(SeriesDivergenceError):
        LauricellaSpec(1.0, [1.0], 2.0, [1.0])


def test_fd_slow_convergence_raises():
    with pytest.raises(SeriesToleranceError):
        lauricella_fd(LauricellaSpec(0.5, [1.0], 2.0, [0.999]), SeriesParams(20, 1e-12))


@pytest.mark.parametrize("nu,kappa", [(1.0, 0.5), (2.5, 1.0), (0.3, 1.75)])
@pytest.mark.parametrize("t", [0.15, -0.3])
def test_degenerate_ho_rank_one(nu, kappa, t):
    got = degenerate_ho(nu, kappa, [t, -t], SeriesParams(120, 1e-14)).value
    y = math.exp(2 * t)
    ref = float(y ** (-nu / 2) * mpmath.hyp2f1(-nu, kappa, 2 * kappa, 1 - y))
    assert got == pytest.approx(ref, rel=1e-12)


def test_degenerate_ho_rank_two():
    x = [0.3, -0.1, -0.2]
    nu, kappa = 1.3, 0.75
    got = degenerate_ho(nu, kappa, x, SeriesParams(120, 1e-14)).value
    y1, y2 = math.exp(x[0] - x[2]), math.exp(x[1] - x[2])
    ref = float((y1 * y2) ** (-nu / 3) * mpmath.appellf1(-nu, kappa, kappa, 3 * kappa, 1 - y1, 1 - y2))
    assert got == pytest.approx(ref, rel=1e-12)


def test_degenerate_ho_checks():
    assert degenerate_ho(1.0, 1.0, [0.0, 0.0, 0.0]).value == 1.0
    with pytest.raises(ValueError):
        degenerate_ho(1.0, 1.0, [0.1, 0.2])
    with pytest.raises(SeriesDivergenceError):
        degenerate_ho(1.0, 1.0, [1.0, -1.0])
