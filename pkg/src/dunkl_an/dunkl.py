"""Dunkl kernel, generalized Bessel function and intertwiner for S_n.

Everything is evaluated along the degenerate directions ``e_l`` (or the
spectral point ``lambda(nu) = (-nu/n, ..., -nu/n, (n-1) nu/n)``), where the
kernel has closed forms:

* ``J(nu e_n, x) = Φ2^(n)[κ, ..., κ; nκ; nu x]``
  ``= c_κ ∫ exp(<nu x, t>) prod t_j^(κ-1) dt``
* ``E(x, e_l) = Φ2^(n)[κ, .., κ+1 (slot l), .., κ; nκ+1; x]``
  ``= n c_κ ∫ exp(<x, t>) t_l prod t_j^(κ-1) dt``

with ``c_κ = Γ(nκ) / Γ(κ)^n`` and integrals over the simplex ``T^(n-1)``.
On the hyperplane ``sum x = 0`` the first one is ``J(lambda(nu), x)``.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .poly import MultiPoly, as_multiplicity
from .quadrature import DEFAULT_Q, SimplexRule, build_rule, dirichlet_moment
from .report import VerifyReport
from .special import DEFAULT_PARAMS, SeriesParams, degenerate_ho, log_gamma, phi2

__all__ = [
    "BesselSpec",
    "Evaluation",
    "KernelQuery",
    "LimitCheck",
    "METHODS",
    "bessel",
    "bessel_by_symmetrization",
    "c_kappa",
    "dunkl_kernel",
    "intertwine",
    "intertwine_monomial",
    "intertwine_single",
    "intertwine_symmetric",
    "limit_check",
    "shift_check_a2",
]

METHODS = ("series", "reduced", "quadrature", "both")
LIMIT_PARAMS = SeriesParams(max_total_order=120, tol=1e-12)


@dataclass(frozen=True)
class Evaluation:
    """A value with its error bound and the route that produced it.

    ``err_bound`` is the certified series bound (``None`` for a bare
    quadrature value). For ``method="both"`` the value is the series one and
    ``discrepancy`` is its distance to the quadrature value.
    """

    value: float
    err_bound: float | None
    method: str
    discrepancy: float | None = None

    def __float__(self) -> float:
        return self.value


def _as_point(x, n: int | None = None) -> np.ndarray:
    pt = np.asarray(x, dtype=float).reshape(-1)
    if pt.size < 2:
        raise ValueError("need a point with at least two coordinates")
    if n is not None and pt.size != n:
        raise ValueError(f"point has {pt.size} coordinates, expected n={n}")
    if not np.all(np.isfinite(pt)):
        raise ValueError("point must be finite")
    return pt


def _kappa(kappa) -> float:
    return float(as_multiplicity(kappa))


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def _check_hyperplane(x: np.ndarray) -> None:
    if abs(math.fsum(x)) > 1e-12 * max(1.0, float(np.max(np.abs(x)))):
        raise ValueError(f"point {x.tolist()} is not on the hyperplane sum(x) = 0")


def c_kappa(n: int, kappa: float) -> float:
    """``Γ(nκ) / Γ(κ)^n``, the inverse mass of the Dirichlet weight."""
    kappa = _kappa(kappa)
    if not kappa > 0:
        raise ValueError("c_kappa needs kappa > 0")
    return math.exp(log_gamma(n * kappa) - n * log_gamma(kappa))


def _quad_expectation(rule: SimplexRule, values: np.ndarray) -> float:
    return math.fsum(rule.weights * values)


def _combine(series: Evaluation, quad: Evaluation) -> Evaluation:
    return Evaluation(series.value, series.err_bound, "both", abs(series.value - quad.value))


def bessel(x: Sequence[float], kappa, *, nu: float = 1.0, method: str = "series",
           argument: str = "e", params: SeriesParams = DEFAULT_PARAMS,
           q: int = DEFAULT_Q) -> Evaluation:
    """Generalized Bessel function ``J_κ(nu e_n, x)``.

    ``argument="lambda"`` asks for ``J_κ(lambda(nu), x)`` instead; that form
    is only available on the hyperplane ``sum x = 0`` (where both agree) and
    other points are refused.

    Methods: ``series`` (n-variable Humbert series), ``reduced``
    (``exp(nu x_n) Φ2^(n-1)`` in the differences ``x_j - x_n``),
    ``quadrature`` (simplex integral) and ``both`` (series, cross-checked).
    """
    pt = _as_point(x)
    n = pt.size
    k = _kappa(kappa)
    _check_method(method)
    if argument not in ("e", "lambda"):
        raise ValueError("argument must be 'e' or 'lambda'")
    if argument == "lambda":
        _check_hyperplane(pt)
    y = float(nu) * pt

    if k == 0:
        if method in ("quadrature", "both"):
            raise ValueError("the quadrature path needs kappa > 0")
        # κ = 0: the kernel is the plain exponential, J is its orbit average
        return Evaluation(math.fsum(np.exp(y)) / n, 0.0, method)

    if method == "series":
        r = phi2([k] * n, n * k, y, params)
        return Evaluation(r.value, r.err_bound, method)
    if method == "reduced":
        pref = math.exp(y[-1])
        r = phi2([k] * (n - 1), n * k, y[:-1] - y[-1], params)
        return Evaluation(pref * r.value, pref * r.err_bound, method)
    rule = build_rule(n, k, q)
    quad = Evaluation(c_kappa(n, k) * _quad_expectation(rule, np.exp(rule.points @ y)),
                      None, "quadrature")
    if method == "quadrature":
        return quad
    series = bessel(pt, k, nu=nu, method="series", params=params)
    return _combine(series, quad)


def dunkl_kernel(x: Sequence[float], kappa, ell: int, *, method: str = "series",
                 params: SeriesParams = DEFAULT_PARAMS, q: int = DEFAULT_Q) -> Evaluation:
    """Dunkl kernel ``E_κ(x, e_ell)`` for any real ``x`` (``ell`` is 1-based)."""
    pt = _as_point(x)
    n = pt.size
    if not 1 <= ell <= n:
        raise IndexError(f"ell={ell} out of range 1..{n}")
    k = _kappa(kappa)
    _check_method(method)

    if method == "series":
        b = [k] * n
        b[ell - 1] += 1.0
        r = phi2(b, n * k + 1.0, pt, params)
        return Evaluation(r.value, r.err_bound, method)
    if method == "reduced":
        b = [k] * (n - 1)
        if ell < n:
            b[ell - 1] += 1.0
        pref = math.exp(pt[-1])
        r = phi2(b, n * k + 1.0, pt[:-1] - pt[-1], params)
        return Evaluation(pref * r.value, pref * r.err_bound, method)
    if k == 0:
        raise ValueError("the quadrature path needs kappa > 0")
    rule = build_rule(n, k, q)
    vals = np.exp(rule.points @ pt) * rule.points[:, ell - 1]
    quad = Evaluation(n * c_kappa(n, k) * _quad_expectation(rule, vals), None, "quadrature")
    if method == "quadrature":
        return quad
    series = dunkl_kernel(pt, k, ell, method="series", params=params)
    return _combine(series, quad)


def bessel_by_symmetrization(x: Sequence[float], kappa, *, method: str = "series",
                             params: SeriesParams = DEFAULT_PARAMS,
                             q: int = DEFAULT_Q) -> Evaluation:
    """``J_κ(e_1, x)`` as the average of ``E_κ(x (1 j), e_1)`` over ``j = 1..n``."""
    pt = _as_point(x)
    n = pt.size
    vals, bounds = [], []
    for j in range(n):
        swapped = pt.copy()
        swapped[0], swapped[j] = pt[j], pt[0]
        ev = dunkl_kernel(swapped, kappa, 1, method=method, params=params, q=q)
        vals.append(ev.value)
        bounds.append(ev.err_bound)
    err = None if any(b is None for b in bounds) else math.fsum(bounds) / n
    return Evaluation(math.fsum(vals) / n, err, method)


def _compositions(m: int, n: int):
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _compositions(m - first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=4096)
def _intertwine_monomial(n: int, ell: int, m: int, kappa, kind: type) -> MultiPoly:
    # ``kind`` keeps Fraction(1, 2) and 0.5 in separate cache slots
    terms = {}
    fact_m = math.factorial(m)
    for alpha in _compositions(m, n):
        multinom = fact_m // math.prod(math.factorial(a) for a in alpha)
        shifted = list(alpha)
        shifted[ell - 1] += 1
        terms[alpha] = multinom * n * dirichlet_moment(n, kappa, shifted)
    return MultiPoly(n, terms)


def intertwine_monomial(n: int, ell: int, m: int, kappa) -> MultiPoly:
    """Intertwiner applied to ``x_ell^m``, as an exact polynomial.

    ``V(x_ell^m)(x) = n c_κ ∫ <x, t>^m t_ell prod t_j^(κ-1) dt``; expanding the
    power multinomially, each ``t``-monomial integrates to a Dirichlet
    moment, which is rational for rational ``κ``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 1 <= ell <= n:
        raise IndexError(f"ell={ell} out of range 1..{n}")
    if m < 0:
        raise ValueError("degree must be nonnegative")
    k = as_multiplicity(kappa)
    if not k > 0:
        raise ValueError("intertwine_monomial needs kappa > 0")
    return _intertwine_monomial(n, ell, m, k, type(k))


def intertwine(p: MultiPoly, kappa) -> MultiPoly:
    """Intertwiner on a polynomial whose terms each involve a single variable."""
    out = MultiPoly.zero(p.nvars)
    for e, c in p.items():
        support = [i for i, a in enumerate(e) if a]
        if len(support) > 1:
            raise ValueError(f"term {e} mixes variables; only single-component terms are supported")
        if not support:
            out = out + MultiPoly.constant(c, p.nvars)
            continue
        i = support[0]
        out = out + intertwine_monomial(p.nvars, i + 1, e[i], kappa) * c
    return out


def _apply_scalar(f: Callable, s: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(s), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != s.shape:
        vals = np.array([float(f(v)) for v in s])
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand is not finite at some node")
    return vals


def _rule_for(n: int, k: float, rule: SimplexRule | None, q: int) -> SimplexRule:
    if rule is None:
        return build_rule(n, k, q)
    if rule.alpha != (k,) * n:
        raise ValueError(f"rule was built for {rule.alpha}, not kappa={k}, n={n}")
    return rule


def intertwine_single(f: Callable, ell: int, x: Sequence[float], kappa,
                      rule: SimplexRule | None = None, q: int = DEFAULT_Q) -> float:
    """``(V F)(x)`` for ``F(x) = f(x_ell)``.

    ``f`` may be a numpy ufunc-style callable or a plain scalar function.
    """
    pt = _as_point(x)
    n = pt.size
    if not 1 <= ell <= n:
        raise IndexError(f"ell={ell} out of range 1..{n}")
    k = _kappa(kappa)
    if not k > 0:
        raise ValueError("intertwine_single needs kappa > 0")
    rule = _rule_for(n, k, rule, q)
    vals = _apply_scalar(f, rule.points @ pt) * rule.points[:, ell - 1]
    const = math.exp(log_gamma(n * k + 1) - math.log(k) - n * log_gamma(k))
    return const * _quad_expectation(rule, vals)


def intertwine_symmetric(f: Callable, x: Sequence[float], kappa,
                         rule: SimplexRule | None = None, q: int = DEFAULT_Q) -> float:
    """``(V F)(x)`` for ``F(x) = sum over S_n of f((x σ)_j)``, i.e. ``(n-1)! sum_l f(x_l)``."""
    pt = _as_point(x)
    n = pt.size
    k = _kappa(kappa)
    if not k > 0:
        raise ValueError("intertwine_symmetric needs kappa > 0")
    rule = _rule_for(n, k, rule, q)
    vals = _apply_scalar(f, rule.points @ pt)
    return math.factorial(n) * c_kappa(n, k) * _quad_expectation(rule, vals)


class LimitCheck(NamedTuple):
    value: float
    deviation: float
    reference: float


def limit_check(m: float, nu: float, kappa, x: Sequence[float],
                params: SeriesParams = LIMIT_PARAMS) -> LimitCheck:
    """Compare the Heckman-Opdam function at ``(m lambda(nu) + rho, x / m)`` with ``J``.

    ``lambda(nu)`` is linear in ``nu``, so the scaled spectral parameter is
    ``lambda(m nu)`` and the degenerate closed form applies directly.
    """
    pt = _as_point(x)
    _check_hyperplane(pt)
    k = _kappa(kappa)
    value = degenerate_ho(m * nu, k, pt / m, params).value
    ref = bessel(pt, k, nu=nu, method="series", argument="lambda").value
    return LimitCheck(value, abs(value - ref), ref)


def shift_check_a2(x: Sequence[float], kappa, *, ell: int | None = None, h: float = 1e-4,
                   q: int = DEFAULT_Q, tol: float = 1e-8) -> VerifyReport:
    """Check ``E_κ(x, e_ell) = n ∂_ell J_κ(e_ell, x)`` by finite differences.

    For n = 3, ell = 3 this is the consequence of the alternating-sum relation
    in which the unknown normalizing constant drops out because the
    alternating polynomial vanishes at ``e_3``. The derivative is a central
    difference with one Richardson step; both sides use quadrature.
    """
    started = time.perf_counter()
    pt = _as_point(x)
    n = pt.size
    ell = n if ell is None else ell
    if not 1 <= ell <= n:
        raise IndexError(f"ell={ell} out of range 1..{n}")
    k = _kappa(kappa)
    lhs = dunkl_kernel(pt, k, ell, method="quadrature", q=q).value

    def central(step: float) -> float:
        up, down = pt.copy(), pt.copy()
        up[ell - 1] += step
        down[ell - 1] -= step
        j_up = bessel(up, k, method="quadrature", q=q).value
        j_down = bessel(down, k, method="quadrature", q=q).value
        return (j_up - j_down) / (2 * step)

    rhs = n * (4 * central(h / 2) - central(h)) / 3
    elapsed = int(round((time.perf_counter() - started) * 1000))
    params = {"n": n, "kappa": _fmt(kappa), "ell": ell, "x": pt.tolist(), "h": h,
              "lhs": lhs, "rhs": rhs}
    return VerifyReport("shift-a2", params, abs(lhs - rhs), tol, elapsed)


def _fmt(kappa) -> str:
    k = as_multiplicity(kappa)
    return str(k) if isinstance(k, Fraction) else repr(k)


@dataclass(frozen=True)
class BesselSpec:
    """Inputs for :func:`bessel`; ``argument="lambda"`` enforces ``sum x = 0``."""

    n: int
    kappa: Fraction | float
    x: tuple[float, ...]
    nu: float = 1.0
    argument: str = "e"

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_multiplicity(self.kappa))
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        if len(self.x) != self.n:
            raise ValueError(f"x has {len(self.x)} coordinates, expected n={self.n}")
        if self.argument == "lambda":
            _check_hyperplane(np.array(self.x))

    def evaluate(self, method: str = "series", params: SeriesParams = DEFAULT_PARAMS,
                 q: int = DEFAULT_Q) -> Evaluation:
        return bessel(self.x, self.kappa, nu=self.nu, method=method,
                      argument=self.argument, params=params, q=q)


@dataclass(frozen=True)
class KernelQuery:
    """A request for ``E_κ(x, e_ell)`` (kind ``kernel``) or ``J_κ(nu e_n, x)`` (``bessel``)."""

    kind: str
    n: int
    kappa: Fraction | float
    x: tuple[float, ...]
    ell: int | None = None
    nu: float = 1.0
    method: str = "series"
    params: SeriesParams = field(default=DEFAULT_PARAMS)
    q: int = DEFAULT_Q

    def __post_init__(self):
        if self.kind not in ("kernel", "bessel"):
            raise ValueError("kind must be 'kernel' or 'bessel'")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        object.__setattr__(self, "kappa", as_multiplicity(self.kappa))
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        if len(self.x) != self.n:
            raise ValueError(f"x has {len(self.x)} coordinates, expected n={self.n}")
        _check_method(self.method)
        if self.kind == "kernel":
            ell = self.n if self.ell is None else self.ell
            if not 1 <= ell <= self.n:
                raise ValueError(f"ell={ell} out of range 1..{self.n}")
            object.__setattr__(self, "ell", ell)
        if self.method in ("quadrature", "both") and not self.kappa > 0:
            raise ValueError("quadrature needs kappa > 0")
        if self.q < 1:
            raise ValueError("q must be at least 1")

    def evaluate(self) -> Evaluation:
        if self.kind == "kernel":
            return dunkl_kernel(self.x, self.kappa, self.ell, method=self.method,
                                params=self.params, q=self.q)
        return bessel(self.x, self.kappa, nu=self.nu, method=self.method,
                      params=self.params, q=self.q)
