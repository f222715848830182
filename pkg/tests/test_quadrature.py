import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import roots_jacobi

from dunkl_an.quadrature import (
    build_dirichlet_rule,
    build_rule,
    dirichlet_moment,
    gauss_jacobi01,
    integrate,
)


@pytest.mark.parametrize("q", [1, 4, 12, 20])
@pytest.mark.parametrize("p,r", [(0.0, 0.0), (-0.5, 1.5), (-2 / 3, 0.0), (1.5, -0.75), (0.75, 8.0)])
def test_gauss_jacobi_matches_scipy(q, p, r):
    nodes, weights = gauss_jacobi01(q, p, r)
    y, wy = roots_jacobi(q, r, p)
    np.testing.assert_allclose(nodes, (y + 1) / 2, rtol=1e-13, atol=1e-15)
    np.testing.assert_allclose(weights, wy / 2 ** (p + r + 1), rtol=1e-12)


def test_gauss_jacobi_rejects():
    with pytest.raises(ValueError):
        gauss_jacobi01(0, 0.0, 0.0)
    with pytest.raises(ValueError):
        gauss_jacobi01(4, -1.0, 0.0)


@pytest.mark.parametrize("n,kappa,q", [(2, 0.5, 6), (3, 1.0, 12), (4, 2.5, 8)])
def test_rule_invariants(n, kappa, q):
    rule = build_rule(n, kappa, q)
    assert rule.points.shape == (q ** (n - 1), n)
    assert rule.n == n and rule.kappa == kappa and rule.degree == 2 * q - 1
    assert np.all(rule.points > 0) and np.all(rule.weights > 0)
    np.testing.assert_allclose(rule.points.sum(axis=1), 1.0, atol=1e-15)
    mass = math.exp(n * math.lgamma(kappa) - math.lgamma(n * kappa))
    assert rule.mass == pytest.approx(mass, rel=1e-13)
    assert not rule.points.flags.writeable
    assert len(rule.nodes) == q ** (n - 1)


def test_rule_is_cached():
    assert build_rule(3, 0.5, 7) is build_rule(3, 0.5, 7)


def test_rule_rejects():
    with pytest.raises(ValueError):
        build_rule(3, 0.0)
    with pytest.raises(ValueError):
        build_rule(1, 1.0)
    with pytest.raises(ValueError):
        build_dirichlet_rule([1.0, -1.0])


def test_dirichlet_rule_unequal_parameters():
    alpha = (0.5, 1.5, 2.0)
    rule = build_dirichlet_rule(alpha, 10)
    # E[t1 t2^2] for Dirichlet(alpha): (a1)_1 (a2)_2 / (A)_3
    got = integrate(rule, lambda t: t[:, 0] * t[:, 1] ** 2, vectorized=True) / rule.mass
    assert got == pytest.approx(0.5 * 1.5 * 2.5 / (4 * 5 * 6), rel=1e-13)
    with pytest.raises(AttributeError):
        rule.kappa


@pytest.mark.parametrize("n", [2, 3, 4])
def test_moment_exactness(n):
    kappa = Fraction(1, 2)
    q = 4
    rule = build_rule(n, float(kappa), q)
    for m in itertools.product(range(2 * q), repeat=n):
        if sum(m) > 2 * q - 1:
            continue
        got = integrate(rule, lambda t: np.prod(t ** np.array(m), axis=1), vectorized=True)
        ref = float(dirichlet_moment(n, kappa, m))
        assert got / rule.mass == pytest.approx(ref, rel=1e-12)


def test_dirichlet_moment_exact_values():
    assert dirichlet_moment(2, Fraction(1), (1, 0)) == Fraction(1, 2)
    assert dirichlet_moment(3, Fraction(1, 2), (2, 0, 0)) == Fraction(1, 2) * Fraction(3, 2) / (
        Fraction(3, 2) * Fraction(5, 2))
    assert dirichlet_moment(3, 2, (0, 0, 0)) == 1
    assert isinstance(dirichlet_moment(3, 0.5, (1, 1, 0)), float)
    with pytest.raises(ValueError):
        dirichlet_moment(3, Fraction(1), (1, 0))


def test_convergence_in_q():
    x = np.array([1.3, -0.4, 0.9])
    vals = [build_rule(3, 0.5, q) for q in (8, 16)]
    a, b = (integrate(r, lambda t: np.exp(t @ x), vectorized=True) for r in vals)
    assert abs(a - b) <= 1e-12 * abs(b)


def test_integrate_scalar_and_vectorized_agree():
    rule = build_rule(3, 1.5, 6)
    x = np.array([0.2, -1.0, 0.5])
    a = integrate(rule, lambda t: math.exp(float(t @ x)))
    b = integrate(rule, lambda t: np.exp(t @ x), vectorized=True)
    assert a == b


def test_integrate_is_bit_stable():
    rule = build_rule(4, 0.75, 8)
    f = lambda t: np.cos(3 * t[:, 0]) * np.exp(t[:, 3])  # noqa: E731
    assert integrate(rule, f, vectorized=True) == integrate(rule, f, vectorized=True)


def test_integrate_rejects_nonfinite():
    rule = build_rule(2, 1.0, 4)
    with pytest.raises(ValueError):
        integrate(rule, lambda t: np.full(len(t), np.nan), vectorized=True)
    with pytest.raises(ValueError):
        integrate(rule, lambda t: np.ones(3), vectorized=True)
