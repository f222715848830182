import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunkl_an.dunkl import (
    BesselSpec,
    KernelQuery,
    bessel,
    bessel_by_symmetrization,
    c_kappa,
    dunkl_kernel,
    intertwine,
    intertwine_monomial,
    intertwine_single,
    intertwine_symmetric,
    limit_check,
    shift_check_a2,
)
from dunkl_an.poly import MultiPoly, dunkl_apply, parse_poly, partial_derivative
from dunkl_an.quadrature import build_rule
from dunkl_an.special import SeriesToleranceError

F = Fraction
coords = st.floats(-2, 2)


def rank_one_kernel(x, kappa, ell):
    # n = 2 closed form in one confluent function
    b = kappa + 1 if ell == 1 else kappa
    return float(mpmath.exp(x[1]) * mpmath.hyp1f1(b, 2 * kappa + 1, x[0] - x[1]))


def mp_simplex_bessel(x, kappa):
    """Two-dimensional adaptive integral over the triangle (n = 3)."""
    c = mpmath.gamma(3 * kappa) / mpmath.gamma(kappa) ** 3

    def f(t1, t2):
        t3 = 1 - t1 - t2
        if t3 <= 0:
            return mpmath.mpf(0)
        return mpmath.exp(x[0] * t1 + x[1] * t2 + x[2] * t3) * (t1 * t2 * t3) ** (kappa - 1)

    return float(c * mpmath.quad(lambda t1: mpmath.quad(lambda t2: f(t1, t2), [0, 1 - t1]), [0, 1]))


@pytest.mark.parametrize("kappa", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("ell", [1, 2])
def test_rank_one_kernel_oracle(kappa, ell):
    for x in ([0.3, -1.1], [1.9, 1.2], [-2.0, 0.5]):
        ev = dunkl_kernel(x, kappa, ell)
        assert ev.value == pytest.approx(rank_one_kernel(x, kappa, ell), rel=1e-13)
        quad = dunkl_kernel(x, kappa, ell, method="quadrature")
        assert quad.value == pytest.approx(ev.value, rel=1e-12)


def test_rank_one_bessel_oracle():
    kappa, x = 0.75, [1.2, -0.4]
    ref = float(mpmath.exp(x[1]) * mpmath.hyp1f1(kappa, 2 * kappa, x[0] - x[1]))
    for method in ("series", "reduced", "quadrature"):
        assert bessel(x, kappa, method=method).value == pytest.approx(ref, rel=1e-13)


def test_bessel_against_adaptive_integral():
    x = [0.8, -1.3, 0.4]
    ref = mp_simplex_bessel(x, 1.0)
    assert bessel(x, 1.0).value == pytest.approx(ref, rel=1e-12)
    assert bessel(x, 1.0, method="quadrature").value == pytest.approx(ref, rel=1e-12)


def test_c_kappa():
    assert c_kappa(3, 1.0) == pytest.approx(2.0)
    assert c_kappa(2, 0.5) == pytest.approx(1 / math.pi)
    with pytest.raises(ValueError):
        c_kappa(3, 0.0)


def test_trivial_points():
    assert dunkl_kernel([0, 0, 0], 1.0, 3).value == 1.0
    assert bessel([1, 1, 1], 1.0).value == pytest.approx(math.e, rel=1e-15)
    ev = bessel([0.5, 0.1, -0.6], F(1, 2), method="both")
    assert ev.method == "both" and ev.discrepancy < 1e-12


def test_bessel_nu_scaling():
    x = [0.4, -0.9, 0.5]
    assert bessel(x, 0.5, nu=2.0).value == pytest.approx(
        bessel([2 * v for v in x], 0.5).value, rel=1e-15)


def test_bessel_lambda_argument():
    on_plane = [0.7, -0.2, -0.5]
    a = bessel(on_plane, 1.0, argument="lambda").value
    assert a == pytest.approx(bessel(on_plane, 1.0).value, rel=1e-15)
    with pytest.raises(ValueError):
        bessel([1.0, 0.0, 0.5], 1.0, argument="lambda")
    with pytest.raises(ValueError):
        BesselSpec(3, 1, (1.0, 0.0, 0.5), argument="lambda")


def test_bessel_off_plane_translation():
    # shifting x along (1..1) multiplies J(nu e_n, x) by exp(nu s)
    x = np.array([0.3, -0.8, 1.1])
    s = 0.6
    assert bessel(x + s, 0.5).value == pytest.approx(math.exp(s) * bessel(x, 0.5).value, rel=1e-14)


def test_kappa_zero_closed_forms():
    x = [0.3, -1.0, 0.8]
    assert bessel(x, 0).value == pytest.approx(np.mean(np.exp(x)), rel=1e-15)
    assert dunkl_kernel(x, 0, 2).value == pytest.approx(math.exp(x[1]), rel=1e-14)
    with pytest.raises(ValueError):
        bessel(x, 0, method="quadrature")


def test_method_validation():
    with pytest.raises(ValueError):
        bessel([0, 0], 1.0, method="magic")
    with pytest.raises(IndexError):
        dunkl_kernel([0, 0], 1.0, 3)
    with pytest.raises(SeriesToleranceError):
        dunkl_kernel([30.0, -25.0], 1.0, 1)
    # the quadrature path has no order cap
    assert dunkl_kernel([30.0, -25.0], 1.0, 1, method="quadrature", q=40).value > 0


@given(st.lists(coords, min_size=2, max_size=4), st.sampled_from([0.5, 1.0, 1.75]))
def test_kernel_sum_property(x, kappa):
    n = len(x)
    total = math.fsum(dunkl_kernel(x, kappa, ell).value for ell in range(1, n + 1))
    assert total == pytest.approx(n * bessel(x, kappa).value, rel=1e-13)


@given(st.lists(coords, min_size=2, max_size=4), st.sampled_from([F(1, 3), 1.0, 2.5]))
def test_symmetrization_property(x, kappa):
    assert bessel_by_symmetrization(x, kappa).value == pytest.approx(
        bessel(x, kappa).value, rel=1e-13)


def test_kernel_positive_and_bounded():
    # 0 < E(x, e_l) <= exp(max x)
    rng = np.random.default_rng(5)
    for x in rng.uniform(-2, 2, size=(10, 3)):
        for ell in (1, 2, 3):
            v = dunkl_kernel(x, 0.5, ell).value
            assert 0 < v <= math.exp(x.max()) * (1 + 1e-14)


def test_intertwine_low_degree():
    assert intertwine_monomial(3, 2, 0, F(1, 2)) == 1
    # V x_l = sum_j c_j x_j with c_l = (κ+1)/(nκ+1), others κ/(nκ+1)
    v = intertwine_monomial(3, 1, 1, F(1, 2))
    assert v == parse_poly("3/5 * x1 + 1/5 * x2 + 1/5 * x3")


@pytest.mark.parametrize("kappa", [F(1, 3), F(7, 4)])
def test_intertwining_relation(kappa):
    n = 3
    for ell in range(1, n + 1):
        for m in range(5):
            v = intertwine_monomial(n, ell, m, kappa)
            for i in range(1, n + 1):
                rhs = intertwine(partial_derivative(parse_poly(f"x{ell}^{m}", n), i), kappa) \
                    if m else MultiPoly.zero(n)
                assert dunkl_apply(v, i, kappa) == rhs


def test_intertwine_float_kappa_matches_exact():
    exact = intertwine_monomial(3, 1, 3, F(1, 2))
    approx = intertwine_monomial(3, 1, 3, 0.5)
    assert not approx.is_exact and exact.is_exact
    for (e, c), (e2, c2) in zip(exact.items(), approx.items()):
        assert e == e2 and c2 == pytest.approx(float(c), rel=1e-14)


def test_intertwine_rejects_mixed_terms():
    with pytest.raises(ValueError):
        intertwine(parse_poly("x1 x2"), F(1, 2))
    with pytest.raises(ValueError):
        intertwine_monomial(3, 1, 2, 0)


def test_intertwine_linear_combination():
    p = parse_poly("2 * x1^2 + -1/3 * x3 + 4", 3)
    k = F(1, 2)
    expected = 2 * intertwine_monomial(3, 1, 2, k) - F(1, 3) * intertwine_monomial(3, 3, 1, k) + 4
    assert intertwine(p, k) == expected


@pytest.mark.parametrize("kappa", [0.5, 2.5])
def test_single_intertwiner(kappa):
    x = [0.4, -1.2, 0.9]
    for ell in (1, 2, 3):
        kernel = dunkl_kernel(x, kappa, ell).value
        assert intertwine_single(np.exp, ell, x, kappa) == pytest.approx(kernel, rel=1e-13)
        poly = intertwine_monomial(3, ell, 4, kappa)
        assert intertwine_single(lambda u: u**4, ell, x, kappa) == pytest.approx(poly(*x), rel=1e-12)
        # plain scalar callables work too
        assert intertwine_single(math.exp, ell, x, kappa) == pytest.approx(kernel, rel=1e-13)


def test_symmetric_intertwiner():
    x, kappa = [0.4, -1.2, 0.9, 0.1], 1.0
    n = len(x)
    got = intertwine_symmetric(lambda u: np.exp(u) / math.factorial(n - 1), x, kappa)
    assert got == pytest.approx(n * bessel(x, kappa).value, rel=1e-13)


def test_intertwiner_rule_mismatch():
    rule = build_rule(3, 0.5, 8)
    with pytest.raises(ValueError):
        intertwine_symmetric(np.exp, [0, 0, 0], 1.0, rule=rule)
    assert intertwine_symmetric(np.exp, [0, 0, 0], 0.5, rule=rule) == pytest.approx(6.0)


def test_limit_check_fixture():
    devs = [limit_check(m, 1.0, 1.0, [1.0, 0.0, -1.0]).deviation for m in (10, 50, 200, 10**4)]
    assert devs[0] > devs[1] > devs[2]
    assert devs[3] <= 1e-3


def test_limit_check_requires_plane():
    with pytest.raises(ValueError):
        limit_check(10, 1.0, 1.0, [1.0, 1.0, 0.0])


def test_shift_check_report():
    rep = shift_check_a2([0.3, -0.5, 1.1], F(1, 2))
    assert rep.passed and rep.identity_id == "shift-a2"
    assert rep.parameters["ell"] == 3 and rep.parameters["kappa"] == "1/2"


def test_kernel_query_validation():
    q = KernelQuery("kernel", 3, "1/2", (0.1, 0.2, 0.3))
    assert q.ell == 3 and q.kappa == F(1, 2)
    assert q.evaluate().value == dunkl_kernel([0.1, 0.2, 0.3], 0.5, 3).value
    with pytest.raises(ValueError):
        KernelQuery("kernel", 3, 1, (0.1, 0.2))
    with pytest.raises(ValueError):
        KernelQuery("kernel", 3, 1, (0.1, 0.2, 0.3), ell=4)
    with pytest.raises(ValueError):
        KernelQuery("bessel", 3, 0, (0.1, 0.2, 0.3), method="quadrature")
    with pytest.raises(ValueError):
        KernelQuery("laplace", 3, 1, (0.1, 0.2, 0.3))
