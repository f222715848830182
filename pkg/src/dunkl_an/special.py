"""Scalar special functions: Pochhammer symbols, Humbert Φ2, Lauricella F_D.

Both multi-index series are summed shell by shell (total order
``|m| = 0, 1, 2, ...``) with a per-term multiplicative recurrence; the inner
loop lives in the compiled ``_series`` extension when it is available.
"""

from __future__ import annotations

import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend

__all__ = [
    "HumbertSpec",
    "LauricellaSpec",
    "SeriesDivergenceError",
    "SeriesParams",
    "SeriesResult",
    "SeriesToleranceError",
    "degenerate_ho",
    "exp_tail_bound",
    "humbert_phi2",
    "lauricella_fd",
    "log_gamma",
    "phi2",
    "pochhammer",
]

_EPS = sys.float_info.epsilon


class SeriesToleranceError(ArithmeticError):
    """Raised when the requested tolerance is not reached at the order cap."""

    def __init__(self, message: str, attained: float, order: int):
        super().__init__(message)
        self.attained = attained
        self.order = order


class SeriesDivergenceError(ValueError):
    """Raised when a series argument lies outside its convergence domain."""


@dataclass(frozen=True)
class SeriesParams:
    """Truncation control: order cap ``M`` and absolute tail target ``tol``."""

    max_total_order: int = 60
    tol: float = 1e-12

    def __post_init__(self):
        if self.max_total_order < 1:
            raise ValueError("max_total_order must be at least 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


DEFAULT_PARAMS = SeriesParams()


@dataclass(frozen=True)
class SeriesResult:
    value: float
    tail_bound: float
    rounding: float
    order: int
    certified: bool = True

    @property
    def err_bound(self) -> float:
        return self.tail_bound + self.rounding

    def __float__(self) -> float:
        return self.value


def log_gamma(a: float) -> float:
    """``ln Γ(a)`` for ``a > 0``."""
    if not a > 0:
        raise ValueError(f"log_gamma needs a positive argument, got {a}")
    return math.lgamma(a)


def pochhammer(a, m: int):
    """Rising factorial ``(a)_m``; exact for int/Fraction ``a``, float otherwise."""
    if m < 0:
        raise ValueError("order must be nonnegative")
    exact = isinstance(a, (int, Fraction)) and not isinstance(a, bool)
    out = Fraction(1) if exact else 1.0
    for k in range(m):
        out *= a + k
    return out


def exp_tail_bound(s: float, order: int) -> float:
    """Upper bound for ``sum_{k > order} s^k / k!`` with ``s >= 0``."""
    if s == 0:
        return 0.0
    if s >= order + 2:
        return math.inf
    log_first = (order + 1) * math.log(s) - math.lgamma(order + 2)
    return math.exp(log_first) / (1.0 - s / (order + 2))


@dataclass(frozen=True)
class HumbertSpec:
    """Parameters ``b_1..b_n; c`` and the point ``x`` of ``Φ2^(n)``."""

    b: tuple[float, ...]
    c: float
    x: tuple[float, ...]

    def __init__(self, b: Sequence[float], c: float, x: Sequence[float]):
        object.__setattr__(self, "b", tuple(float(v) for v in b))
        object.__setattr__(self, "c", float(c))
        object.__setattr__(self, "x", tuple(float(v) for v in x))
        if len(self.b) != len(self.x):
            raise ValueError("b and x must have the same length")
        _check_c(self.c)


@dataclass(frozen=True)
class LauricellaSpec:
    """Parameters ``a, b_1..b_n, c`` and the point ``z`` of ``F_D``."""

    a: float
    b: tuple[float, ...]
    c: float
    z: tuple[float, ...]

    def __init__(self, a: float, b: Sequence[float], c: float, z: Sequence[float]):
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "b", tuple(float(v) for v in b))
        object.__setattr__(self, "c", float(c))
        object.__setattr__(self, "z", tuple(float(v) for v in z))
        if len(self.b) != len(self.z):
            raise ValueError("b and z must have the same length")
        _check_c(self.c)
        if any(abs(v) >= 1 for v in self.z):
            raise SeriesDivergenceError(f"F_D series needs |z_j| < 1, got {self.z}")


def _check_c(c: float) -> None:
    if c <= 0 and c == math.floor(c):
        raise ValueError(f"c must not be a nonpositive integer, got {c}")


def humbert_phi2(spec: HumbertSpec, params: SeriesParams = DEFAULT_PARAMS) -> SeriesResult:
    """Sum the Humbert series ``Φ2^(n)[b; c; x]`` with a certified tail bound.

    Needs ``b_j >= 0`` and ``c >= Σ b_j``. Then every coefficient
    ``prod (b_j)_{m_j} / (c)_{|m|}`` is at most one, so the tail past order
    ``M`` is dominated by the tail of ``exp(Σ|x_j|)``. The order is the
    smallest one whose bound meets ``params.tol``.
    """
    b, c, x = spec.b, spec.c, spec.x
    if any(v < 0 for v in b):
        raise ValueError(f"Φ2 needs nonnegative b, got {b}")
    if c <= 0 or c < sum(b) - 1e-12 * (1 + abs(c)):
        raise ValueError(f"Φ2 needs c >= sum(b) > 0 side conditions, got c={c}, b={b}")
    s = sum(abs(v) for v in x)
    order = None
    for m in range(params.max_total_order + 1):
        if exp_tail_bound(s, m) <= params.tol:
            order = m
            break
    if order is None:
        attained = exp_tail_bound(s, params.max_total_order)
        raise SeriesToleranceError(
            f"Φ2 tail bound {attained:.3g} exceeds tol {params.tol:.3g} "
            f"at order {params.max_total_order}",
            attained,
            params.max_total_order,
        )
    leaf = np.empty(order + 1)
    leaf[0] = 1.0
    for k in range(order):
        leaf[k + 1] = leaf[k] / (c + k)
    shells, abs_shells = _backend.shell_sums(b, x, leaf, order)
    value = math.fsum(shells)
    rounding = _EPS * (order + len(b) + 2) * float(abs_shells.sum())
    return SeriesResult(value, exp_tail_bound(s, order), rounding, order)


def phi2(b: Sequence[float], c: float, x: Sequence[float],
         params: SeriesParams = DEFAULT_PARAMS) -> SeriesResult:
    return humbert_phi2(HumbertSpec(b, c, x), params)


def lauricella_fd(spec: LauricellaSpec, params: SeriesParams = DEFAULT_PARAMS) -> SeriesResult:
    """Sum the Lauricella series ``F_D(a; b; c; z)`` inside the unit polydisc.

    The tail is estimated by a ratio test on the absolute shell sums, so the
    result carries ``certified=False`` unless the series terminates
    (``a`` a nonpositive integer reached within the order cap).
    """
    a, b, c, z = spec.a, spec.b, spec.c, spec.z
    order = params.max_total_order
    # rescale so that terms stay O(1) when |a| is large
    scale = max(1.0, abs(a))
    leaf = np.empty(order + 1)
    leaf[0] = 1.0
    for k in range(order):
        leaf[k + 1] = leaf[k] * (a + k) / ((c + k) * scale)
    shells, abs_shells = _backend.shell_sums(b, [v * scale for v in z], leaf, order)

    terminates = a <= 0 and a == math.floor(a) and -a <= order
    if terminates:
        stop = int(-a)
        value = math.fsum(shells[: stop + 1])
        rounding = _EPS * (stop + len(b) + 2) * float(abs_shells[: stop + 1].sum())
        return SeriesResult(value, 0.0, rounding, stop, certified=True)

    estimate = math.inf
    for k in range(1, order + 1):
        cur, prev = float(abs_shells[k]), float(abs_shells[k - 1])
        if cur == 0.0 and not abs_shells[k:].any():
            estimate = 0.0
        elif prev > 0.0 and cur < prev:
            r = cur / prev
            estimate = cur * r / (1.0 - r)
        else:
            continue
        if estimate <= params.tol:
            value = math.fsum(shells[: k + 1])
            rounding = _EPS * (k + len(b) + 2) * float(abs_shells[: k + 1].sum())
            return SeriesResult(value, estimate, rounding, k, certified=False)
    raise SeriesToleranceError(
        f"F_D tail estimate {estimate:.3g} exceeds tol {params.tol:.3g} at order {order}",
        estimate,
        order,
    )


def degenerate_ho(nu: float, kappa: float, x: Sequence[float],
                  params: SeriesParams = DEFAULT_PARAMS) -> SeriesResult:
    """Type A Heckman-Opdam function at the degenerate spectral parameter.

    For ``x`` on the hyperplane ``Σ x_j = 0`` and ``y_j = exp(x_j - x_n)``::

        F = (y_1 ... y_{n-1})^(-ν/n) F_D(-ν; κ, ..., κ; nκ; 1 - y_1, ..., 1 - y_{n-1})
    """
    x = [float(v) for v in x]
    n = len(x)
    if n < 2:
        raise ValueError("need at least two coordinates")
    if not kappa > 0:
        raise ValueError("degenerate_ho needs kappa > 0")
    if abs(math.fsum(x)) > 1e-12 * max(1.0, max(abs(v) for v in x)):
        raise ValueError(f"point {x} is not on the hyperplane sum(x) = 0")
    diffs = [v - x[-1] for v in x[:-1]]
    z = [-math.expm1(d) for d in diffs]
    if any(abs(v) >= 1 for v in z):
        raise SeriesDivergenceError(
            f"1 - exp(x_j - x_n) = {z} leaves the unit polydisc"
        )
    series = lauricella_fd(LauricellaSpec(-nu, [kappa] * (n - 1), n * kappa, z), params)
    pref = math.exp(-nu / n * math.fsum(diffs))
    return SeriesResult(
        pref * series.value,
        pref * series.tail_bound,
        pref * series.rounding,
        series.order,
        series.certified,
    )
