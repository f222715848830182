"""Gauss rules on the open unit simplex for the Dirichlet weight.

A point of the simplex is stored with all ``n`` barycentric coordinates
``t_1, ..., t_n`` (``t_n = 1 - t_1 - ... - t_{n-1}``). The weight is
``prod_j t_j^(alpha_j - 1)``; the usual case is ``alpha_j = kappa``.

The stick-breaking substitution ``t_1 = u_1``,
``t_j = u_j (1 - u_1) ... (1 - u_{j-1})`` factors the integral into 1-D
integrals against ``u^(alpha_i - 1) (1 - u)^(alpha_{i+1} + ... + alpha_n - 1)``,
each handled by a Gauss-Jacobi rule, so endpoint singularities for
``alpha < 1`` sit in the weight and are never sampled.
"""

from __future__ import annotations

import math
import threading
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .special import pochhammer

__all__ = [
    "DEFAULT_Q",
    "SimplexRule",
    "build_dirichlet_rule",
    "build_rule",
    "dirichlet_moment",
    "gauss_jacobi01",
    "integrate",
]

DEFAULT_Q = 12


def _jacobi_recurrence(p: float, r: float, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Monic recurrence on [0, 1] for the weight ``u^p (1 - u)^r``.

    Returns diagonal ``a`` (length q) and squared off-diagonal ``b``
    (length q, ``b[0]`` unused).
    """
    # standard Jacobi on [-1, 1] with (1 - y)^r (1 + y)^p, then u = (1 + y) / 2
    alpha, beta = r, p
    ab = alpha + beta
    a = np.empty(q)
    b = np.zeros(q)
    for k in range(q):
        if k == 0:
            a[k] = (beta - alpha) / (ab + 2)
        else:
            a[k] = (beta**2 - alpha**2) / ((2 * k + ab) * (2 * k + ab + 2))
        if k == 1:
            b[k] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
        elif k > 1:
            s = 2 * k + ab
            b[k] = 4 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1) * (s - 1))
    return (a + 1) / 2, b / 4


def _orthonormal_values(u, a, b, mu0, q):
    """Orthonormal ``p_0..p_{q-1}`` at ``u``, plus ``p_q`` and ``p_q'`` up to scale."""
    u = np.asarray(u, dtype=float)
    p_prev, p = np.zeros_like(u), np.full_like(u, 1.0 / math.sqrt(mu0))
    d_prev, d = np.zeros_like(u), np.zeros_like(u)
    vals = [p]
    for k in range(q):
        sb = math.sqrt(b[k]) if k else 0.0
        # the last normalization is irrelevant, only zeros of p_q are used
        sb_next = math.sqrt(b[k + 1]) if k + 1 < q else 1.0
        num = (u - a[k]) * p - sb * p_prev
        dnum = p + (u - a[k]) * d - sb * d_prev
        p_prev, p = p, num / sb_next
        d_prev, d = d, dnum / sb_next
        vals.append(p)
    return np.array(vals[:q]), p, d


def gauss_jacobi01(q: int, p: float, r: float) -> tuple[np.ndarray, np.ndarray]:
    """q-point Gauss rule on [0, 1] for the weight ``u^p (1 - u)^r``, ``p, r > -1``.

    Golub-Welsch eigenvalues give the nodes, two Newton steps on the
    three-term recurrence polish them, and the weights come from the
    Christoffel function ``1 / sum_k p_k(u)^2`` of the orthonormal family.
    """
    if q < 1:
        raise ValueError("need at least one node")
    if not (p > -1 and r > -1):
        raise ValueError(f"Jacobi exponents must exceed -1, got {p}, {r}")
    a, b = _jacobi_recurrence(p, r, q)
    off = np.sqrt(b[1:])
    jac = np.diag(a) + np.diag(off, 1) + np.diag(off, -1)
    nodes = np.linalg.eigvalsh(jac)
    mu0 = math.exp(math.lgamma(p + 1) + math.lgamma(r + 1) - math.lgamma(p + r + 2))
    for _ in range(2):
        _, f, df = _orthonormal_values(nodes, a, b, mu0, q)
        step = np.where(df != 0, f / np.where(df != 0, df, 1.0), 0.0)
        nodes = nodes - step
    if np.any(nodes <= 0) or np.any(nodes >= 1) or np.any(np.diff(nodes) <= 0):
        raise ArithmeticError(f"Gauss-Jacobi node computation failed for q={q}, p={p}, r={r}")
    vals, _, _ = _orthonormal_values(nodes, a, b, mu0, q)
    weights = 1.0 / np.sum(vals**2, axis=0)
    return nodes, weights


@dataclass(frozen=True, eq=False)
class SimplexRule:
    """Tensor Gauss rule on the simplex for ``prod_j t_j^(alpha_j - 1)``."""

    alpha: tuple[float, ...]
    q: int
    points: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def kappa(self) -> float:
        if len(set(self.alpha)) != 1:
            raise AttributeError("rule has unequal Dirichlet parameters")
        return self.alpha[0]

    @property
    def points_per_dim(self) -> int:
        return self.q

    @property
    def nodes(self) -> list[tuple[np.ndarray, float]]:
        return [(t, float(w)) for t, w in zip(self.points, self.weights)]

    @property
    def mass(self) -> float:
        """Total weight, ``prod Γ(alpha_j) / Γ(sum alpha)`` up to rounding."""
        return math.fsum(self.weights)

    @property
    def degree(self) -> int:
        """Highest total degree integrated exactly."""
        return 2 * self.q - 1


_cache: dict[tuple, SimplexRule] = {}
_cache_lock = threading.Lock()


def build_dirichlet_rule(alpha: Sequence[float], q: int = DEFAULT_Q) -> SimplexRule:
    """Rule for the weight ``prod_j t_j^(alpha_j - 1)`` on the (n-1)-simplex."""
    alpha = tuple(float(v) for v in alpha)
    if len(alpha) < 2:
        raise ValueError("a simplex rule needs n >= 2 coordinates")
    if any(not v > 0 for v in alpha):
        raise ValueError(f"Dirichlet parameters must be positive, got {alpha}")
    if q < 1:
        raise ValueError("q must be at least 1")
    key = (alpha, q)
    with _cache_lock:
        rule = _cache.get(key)
        if rule is None:
            rule = _build(alpha, q)
            _cache[key] = rule
    return rule


def build_rule(n: int, kappa: float, q: int = DEFAULT_Q) -> SimplexRule:
    """Rule on ``T^(n-1)`` for ``prod_{j=1}^n t_j^(kappa - 1)``; needs kappa > 0."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not float(kappa) > 0:
        raise ValueError(f"the simplex integral needs kappa > 0, got {kappa}")
    return build_dirichlet_rule((float(kappa),) * n, q)


def _build(alpha: tuple[float, ...], q: int) -> SimplexRule:
    n = len(alpha)
    axes = []
    for i in range(n - 1):
        rest = sum(alpha[i + 1 :])
        axes.append(gauss_jacobi01(q, alpha[i] - 1.0, rest - 1.0))
    u = np.array(list(product(*(nodes for nodes, _ in axes))))
    w = np.array([math.prod(ws) for ws in product(*(ws for _, ws in axes))])
    pts = np.empty((u.shape[0], n))
    remaining = np.ones(u.shape[0])
    for i in range(n - 1):
        pts[:, i] = u[:, i] * remaining
        remaining = remaining * (1.0 - u[:, i])
    pts[:, n - 1] = remaining
    pts.setflags(write=False)
    w.setflags(write=False)
    return SimplexRule(alpha, q, pts, w)


def integrate(rule: SimplexRule, f: Callable, *, vectorized: bool = False) -> float:
    """``sum_k w_k f(t_k)``; exact for polynomials of degree <= 2q - 1.

    ``f`` receives one full coordinate vector ``t`` (length n). With
    ``vectorized=True`` it receives the ``(N, n)`` array of all nodes and
    must return ``N`` values. The sum is correctly rounded, so the result
    does not depend on evaluation order.
    """
    if vectorized:
        vals = np.asarray(f(rule.points), dtype=float).reshape(-1)
        if vals.shape[0] != rule.points.shape[0]:
            raise ValueError("vectorized integrand returned the wrong number of values")
    else:
        vals = np.array([float(f(t)) for t in rule.points])
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand is not finite at some node")
    return math.fsum(rule.weights * vals)


def dirichlet_moment(n: int, kappa, m: Sequence[int]):
    """Normalized moment ``E[prod t_j^m_j] = prod (kappa)_{m_j} / (n kappa)_{|m|}``.

    Exact for rational ``kappa``.
    """
    if len(m) != n:
        raise ValueError(f"exponent vector must have length {n}")
    if any(k < 0 for k in m):
        raise ValueError("exponents must be nonnegative")
    if isinstance(kappa, int) and not isinstance(kappa, bool):
        kappa = Fraction(kappa)
    if not kappa > 0:
        raise ValueError("dirichlet_moment needs kappa > 0")
    num = pochhammer(kappa, 0)
    for k in m:
        num *= pochhammer(kappa, k)
    return num / pochhammer(n * kappa, sum(m))
