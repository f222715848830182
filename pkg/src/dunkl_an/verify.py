"""Reproducible identity suite.

Each identity id maps to a runner that sweeps a parameter grid and returns
one :class:`VerifyReport` per parameter point. Point samples come from a
numpy generator seeded by ``(seed, n, crc32(id))``, so every identity sees
the same points no matter which other identities run.
"""

from __future__ import annotations

import itertools
import math
import time
import zlib
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dunkl import (
    bessel,
    bessel_by_symmetrization,
    c_kappa,
    dunkl_kernel,
    intertwine_monomial,
    intertwine_single,
    intertwine_symmetric,
    limit_check,
    shift_check_a2,
)
from .poly import MultiPoly, dunkl_apply
from .quadrature import DEFAULT_Q, build_dirichlet_rule, build_rule, dirichlet_moment, integrate
from .report import VerifyReport
from .special import (
    DEFAULT_PARAMS,
    LauricellaSpec,
    SeriesParams,
    degenerate_ho,
    lauricella_fd,
    log_gamma,
    phi2,
    pochhammer,
)

__all__ = ["IDENTITIES", "SuiteConfig", "UnknownIdentityError", "run_suite", "write_jsonl"]

# Empirical constants for max_coeff |V_κ(x_l^m) - x_l^m| <= C_m κ at κ = 1e-6,
# worst case over n <= 4 and l. The observed slope is (n - 1) H_m with H_m the
# harmonic number, so n = 4 dominates: 3, 9/2, 11/2, 25/4.
KAPPA_ZERO_CONSTANTS = {0: 0.0, 1: 3.0, 2: 4.5, 3: 5.5, 4: 6.25}
KAPPA_ZERO_MARGIN = 1.01


class UnknownIdentityError(KeyError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    ns: tuple[int, ...] = (2, 3, 4)
    kappas: tuple[Fraction, ...] = (
        Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(7, 4), Fraction(5, 2),
    )
    max_degree: int = 8
    points: int = 20
    seed: int = 20240611
    q: int = DEFAULT_Q
    params: SeriesParams = field(default=DEFAULT_PARAMS)
    timing: bool = True


def _rng(config: SuiteConfig, identity: str, *extra: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, zlib.crc32(identity.encode()), *extra])


def _box(config: SuiteConfig, identity: str, n: int, count: int | None = None,
         half_width: float = 2.0) -> np.ndarray:
    rng = _rng(config, identity, n)
    return rng.uniform(-half_width, half_width, size=(count or config.points, n))


def _plane(pts: np.ndarray) -> np.ndarray:
    return pts - pts.mean(axis=1, keepdims=True)


def _k(kappa) -> str:
    return str(kappa) if isinstance(kappa, Fraction) else repr(kappa)


def _grid(config: SuiteConfig, ns: Iterable[int] | None = None):
    for n in ns if ns is not None else config.ns:
        for kappa in config.kappas:
            yield n, kappa


class _Timer:
    def __init__(self, config: SuiteConfig):
        self.enabled = config.timing

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round((time.perf_counter() - self.start) * 1000)) if self.enabled else 0


def _max_coeff(p: MultiPoly) -> float:
    return max((abs(float(c)) for _, c in p.items()), default=0.0)


# exact polynomial identities


def check_intertwining(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        with _Timer(config) as timer:
            worst, offending = 0.0, None
            for ell, m in itertools.product(range(1, n + 1), range(config.max_degree + 1)):
                v = intertwine_monomial(n, ell, m, kappa)
                lower = intertwine_monomial(n, ell, m - 1, kappa) * m if m else None
                for i in range(1, n + 1):
                    lhs = dunkl_apply(v, i, kappa)
                    rhs = lower if (i == ell and m) else MultiPoly.zero(n)
                    resid = lhs - rhs
                    if not resid.is_zero() and _max_coeff(resid) >= worst:
                        worst = _max_coeff(resid)
                        offending = f"i={i} ell={ell} m={m}: {resid}"
        params = {"n": n, "kappa": _k(kappa), "max_degree": config.max_degree}
        if offending:
            params["residual"] = offending
            worst = max(worst, math.ulp(0.0))
        out.append(VerifyReport("ir1", params, worst, 0.0, timer.ms))
    return out


def check_unit_and_degree(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        with _Timer(config) as timer:
            bad = 0
            for ell in range(1, n + 1):
                if intertwine_monomial(n, ell, 0, kappa) != MultiPoly.constant(1, n):
                    bad += 1
                for m in range(1, config.max_degree + 1):
                    if not intertwine_monomial(n, ell, m, kappa).is_homogeneous(m):
                        bad += 1
        params = {"n": n, "kappa": _k(kappa), "max_degree": config.max_degree}
        out.append(VerifyReport("unit-degree", params, bad, 0.0, timer.ms))
    return out


def check_kappa_zero(config: SuiteConfig) -> list[VerifyReport]:
    kappa = Fraction(1, 10**6)
    out = []
    for n in config.ns:
        for m, const in KAPPA_ZERO_CONSTANTS.items():
            with _Timer(config) as timer:
                worst = 0.0
                for ell in range(1, n + 1):
                    e = [0] * n
                    e[ell - 1] = m
                    diff = intertwine_monomial(n, ell, m, kappa) - MultiPoly(n, {tuple(e): 1})
                    worst = max(worst, _max_coeff(diff) / float(kappa))
            params = {"n": n, "m": m, "kappa": _k(kappa), "C": const}
            out.append(VerifyReport("kappa-zero", params, worst, const * KAPPA_ZERO_MARGIN,
                                    timer.ms))
    return out


# series identities


def _direct_fd(a: float, b: list[float], c: float, z: list[float], order: int) -> float:
    """Brute-force F_D: every multi-index with explicit Pochhammer products."""
    total = []
    for mi in itertools.product(range(order + 1), repeat=len(b)):
        k = sum(mi)
        if k > order:
            continue
        term = pochhammer(a, k) / pochhammer(c, k)
        for bj, zj, mj in zip(b, z, mi):
            term *= pochhammer(bj, mj) * zj**mj / math.factorial(mj)
        total.append(term)
    return math.fsum(total)


def check_degenerate_ho(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    nus = (0.5, 1.0, 2.5)
    for n, kappa in _grid(config):
        k = float(kappa)
        pts = _plane(_box(config, "degenerate-ho", n, count=4, half_width=0.15))
        with _Timer(config) as timer:
            worst = abs(degenerate_ho(1.0, k, [0.0] * n).value - 1.0)
            for x, nu in itertools.product(pts, nus):
                got = degenerate_ho(nu, k, x).value
                diffs = [v - x[-1] for v in x[:-1]]
                z = [-math.expm1(d) for d in diffs]
                ref = math.exp(-nu / n * math.fsum(diffs)) * _direct_fd(-nu, [k] * (n - 1), n * k, z, 30)
                worst = max(worst, abs(got - ref))
        out.append(VerifyReport("degenerate-ho", {"n": n, "kappa": _k(kappa), "nu": list(nus)},
                                worst, 1e-10, timer.ms))
    return out


def check_rational_limit(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    scales = (10, 50, 200)
    # fixture point first, then seeded hyperplane points
    with _Timer(config) as timer:
        fixture = [limit_check(m, 1.0, 1.0, [1.0, 0.0, -1.0]).deviation for m in scales + (10**4,)]
    out.append(_limit_report({"n": 3, "kappa": "1", "nu": 1.0, "x": [1.0, 0.0, -1.0]},
                             fixture, timer.ms))
    for n, kappa in _grid(config):
        pts = _plane(_box(config, "rational-limit", n, count=3, half_width=1.0))
        for x in pts:
            with _Timer(config) as timer:
                devs = [limit_check(m, 1.0, kappa, x).deviation for m in scales + (10**4,)]
            out.append(_limit_report({"n": n, "kappa": _k(kappa), "nu": 1.0, "x": x.tolist()},
                                     devs, timer.ms))
    return out


def _limit_report(params: dict, devs: list[float], ms: int) -> VerifyReport:
    params = dict(params, deviations=devs)
    monotone = devs[0] > devs[1] > devs[2]
    return VerifyReport("rational-limit", params, devs[3] if monotone else math.inf, 1e-3, ms)


def _random_phi2_spec(rng: np.random.Generator, nvars: int):
    b = rng.uniform(0.2, 2.0, size=nvars)
    c = float(b.sum() + rng.uniform(0.1, 2.0))
    x = rng.uniform(-2.0, 2.0, size=nvars)
    return b, c, x


def check_confluence(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    rng = _rng(config, "confluence")
    for idx in range(10):
        b, c, x = _random_phi2_spec(rng, int(rng.integers(1, 4)))
        with _Timer(config) as timer:
            target = phi2(b, c, x).value
            errs = []
            for a in (1e2, 1e3, 1e4):
                fd = lauricella_fd(LauricellaSpec(a, b, c, x / a), SeriesParams(120, 1e-13))
                errs.append(abs(fd.value - target))
        monotone = errs[0] > errs[1] > errs[2]
        metric = errs[2] / (1 + abs(target)) if monotone else math.inf
        params = {"spec": idx, "b": b.tolist(), "c": c, "x": x.tolist(), "errors": errs}
        out.append(VerifyReport("confluence", params, metric, 1e-3, timer.ms))
    return out


def check_phi2_integral(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    rng = _rng(config, "phi2-integral")
    for idx in range(10):
        nvars = int(rng.integers(1, 4))
        b, c, x = _random_phi2_spec(rng, nvars)
        with _Timer(config) as timer:
            rule = build_dirichlet_rule(list(b) + [c - b.sum()], config.q)
            log_const = log_gamma(c) - log_gamma(c - b.sum()) - sum(log_gamma(v) for v in b)
            quad = math.exp(log_const) * integrate(
                rule, lambda t: np.exp(t[:, :nvars] @ x), vectorized=True)
            series = phi2(b, c, x, config.params).value
        params = {"spec": idx, "b": b.tolist(), "c": c, "x": x.tolist()}
        out.append(VerifyReport("phi2-integral", params, abs(quad - series), 1e-10, timer.ms))
    return out


# kernel and Bessel identities


def check_bessel_reduced(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "bessel-reduced", n)
        with _Timer(config) as timer:
            worst = 0.0
            for x, nu in itertools.product(np.vstack([_plane(pts), pts]), (1.0, 0.5, -1.5)):
                full = bessel(x, kappa, nu=nu, params=config.params).value
                red = bessel(x, kappa, nu=nu, method="reduced", params=config.params).value
                worst = max(worst, abs(full - red))
            for x in _plane(pts):
                lam = bessel(x, kappa, argument="lambda", params=config.params).value
                worst = max(worst, abs(lam - bessel(x, kappa, params=config.params).value))
        out.append(VerifyReport("bessel-reduced", {"n": n, "kappa": _k(kappa)}, worst, 1e-10,
                                timer.ms))
    return out


def check_bessel_integral(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "bessel-integral", n)
        with _Timer(config) as timer:
            worst = 0.0
            for x in np.vstack([_plane(pts), pts]):
                ev = bessel(x, kappa, method="both", params=config.params, q=config.q)
                worst = max(worst, ev.discrepancy)
        out.append(VerifyReport("bessel-integral", {"n": n, "kappa": _k(kappa)}, worst, 1e-10,
                                timer.ms))
    return out


def check_kernel_paths(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "kernel-paths", n)
        with _Timer(config) as timer:
            worst = 0.0
            for x, ell in itertools.product(pts, range(1, n + 1)):
                ev = dunkl_kernel(x, kappa, ell, method="both", params=config.params, q=config.q)
                red = dunkl_kernel(x, kappa, ell, method="reduced", params=config.params)
                worst = max(worst, ev.discrepancy, abs(ev.value - red.value))
        out.append(VerifyReport("kernel-paths", {"n": n, "kappa": _k(kappa)}, worst, 1e-10,
                                timer.ms))
    return out


def check_triple_a2(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for kappa in config.kappas:
        pts = _box(config, "thm41-triple", 3)
        with _Timer(config) as timer:
            worst = 0.0
            for x in pts:
                full = dunkl_kernel(x, kappa, 3, params=config.params).value
                red = dunkl_kernel(x, kappa, 3, method="reduced", params=config.params).value
                quad = dunkl_kernel(x, kappa, 3, method="quadrature", q=config.q).value
                worst = max(worst, abs(full - red), abs(full - quad), abs(red - quad))
        out.append(VerifyReport("thm41-triple", {"n": 3, "kappa": _k(kappa)}, worst, 1e-10,
                                timer.ms))
    return out


def check_kernel_sum(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "kernel-sum", n)
        with _Timer(config) as timer:
            worst = 0.0
            for x in pts:
                for method in ("series", "quadrature"):
                    total = math.fsum(
                        dunkl_kernel(x, kappa, ell, method=method, params=config.params,
                                     q=config.q).value
                        for ell in range(1, n + 1)
                    )
                    j = bessel(x, kappa, method=method, params=config.params, q=config.q).value
                    worst = max(worst, abs(total - n * j))
        out.append(VerifyReport("kernel-sum", {"n": n, "kappa": _k(kappa)}, worst, 1e-10,
                                timer.ms))
    return out


def check_transposed_average(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "transposed-average", n)
        with _Timer(config) as timer:
            worst = 0.0
            for x in pts:
                direct = bessel(x, kappa, params=config.params).value
                avg = bessel_by_symmetrization(x, kappa, params=config.params).value
                worst = max(worst, abs(direct - avg))
        out.append(VerifyReport("transposed-average", {"n": n, "kappa": _k(kappa)}, worst,
                                1e-10, timer.ms))
    return out


def check_shift_a2(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config, ns=[n for n in config.ns if 3 <= n <= 4] or [3]):
        pts = _box(config, "shift-a2", n, count=10)
        with _Timer(config) as timer:
            worst = 0.0
            for x in pts:
                for ell in ([3] if n == 3 else range(1, n + 1)):
                    rep = shift_check_a2(x, kappa, ell=ell, q=config.q)
                    worst = max(worst, rep.metric)
        out.append(VerifyReport("shift-a2", {"n": n, "kappa": _k(kappa)}, worst, 1e-8, timer.ms))
    return out


def check_diagonal(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    svals = np.linspace(-2.0, 2.0, 9)
    for n, kappa in _grid(config):
        with _Timer(config) as timer:
            worst = 0.0
            for s in svals:
                x = [s] * n
                target = math.exp(s)
                evs = [bessel(x, kappa, params=config.params)]
                evs += [dunkl_kernel(x, kappa, ell, params=config.params) for ell in range(1, n + 1)]
                for ev in evs:
                    # ratio of the actual error to the reported bound
                    worst = max(worst, abs(ev.value - target) / max(ev.err_bound, 1e-300))
        out.append(VerifyReport("diagonal", {"n": n, "kappa": _k(kappa), "s": svals.tolist()},
                                worst, 1.0, timer.ms))
    return out


def check_positivity(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "positivity", n, half_width=3.0)
        with _Timer(config) as timer:
            bad = 0
            for x in pts:
                vals = [bessel(x, kappa, params=config.params).value]
                vals += [dunkl_kernel(x, kappa, ell, params=config.params).value
                         for ell in range(1, n + 1)]
                bad += sum(v <= 0 for v in vals)
        out.append(VerifyReport("positivity", {"n": n, "kappa": _k(kappa)}, bad, 0.0, timer.ms))
    return out


def check_permutation_symmetry(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "permutation-symmetry", n, count=5)
        with _Timer(config) as timer:
            worst = 0.0
            for x in pts:
                base = {m: bessel(x, kappa, method=m, params=config.params, q=config.q).value
                        for m in ("series", "quadrature")}
                for perm in itertools.permutations(range(n)):
                    for m, ref in base.items():
                        val = bessel(x[list(perm)], kappa, method=m, params=config.params,
                                     q=config.q).value
                        worst = max(worst, abs(val - ref))
        out.append(VerifyReport("permutation-symmetry", {"n": n, "kappa": _k(kappa)}, worst,
                                1e-12, timer.ms))
    return out


# intertwiner integral identities


def check_power_sum(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "power-sum", n, count=5)
        rule = build_rule(n, float(kappa), config.q)
        const = math.factorial(n) * c_kappa(n, kappa)
        with _Timer(config) as timer:
            worst = 0.0
            for m in range(config.max_degree + 1):
                exact = sum((intertwine_monomial(n, ell, m, kappa) for ell in range(1, n + 1)),
                            MultiPoly.zero(n)) * math.factorial(n - 1)
                for x in pts:
                    xr = [Fraction(v) for v in x]
                    ref = float(exact.evaluate(xr))
                    quad = const * integrate(rule, lambda t: (t @ x) ** m, vectorized=True)
                    worst = max(worst, abs(quad - ref) / (1 + abs(ref)))
        out.append(VerifyReport("power-sum", {"n": n, "kappa": _k(kappa),
                                              "max_degree": config.max_degree},
                                worst, 1e-10, timer.ms))
    return out


def check_symmetric_intertwiner(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "symmetric-intertwiner", n, count=5)
        with _Timer(config) as timer:
            worst = 0.0
            for x in pts:
                got = intertwine_symmetric(lambda u: np.exp(u) / math.factorial(n - 1), x, kappa,
                                           q=config.q)
                worst = max(worst, abs(got - n * bessel(x, kappa, params=config.params).value))
                one = intertwine_symmetric(lambda u: np.full_like(u, 1 / math.factorial(n)), x,
                                           kappa, q=config.q)
                worst = max(worst, abs(one - 1.0))
                for m in range(1, 4):
                    exact = sum((intertwine_monomial(n, ell, m, kappa)
                                 for ell in range(1, n + 1)), MultiPoly.zero(n))
                    ref = math.factorial(n - 1) * float(exact.evaluate([Fraction(v) for v in x]))
                    got = intertwine_symmetric(lambda u: u**m, x, kappa, q=config.q)
                    worst = max(worst, abs(got - ref) / (1 + abs(ref)))
        out.append(VerifyReport("symmetric-intertwiner", {"n": n, "kappa": _k(kappa)}, worst,
                                1e-10, timer.ms))
    return out


def check_single_intertwiner(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n, kappa in _grid(config):
        pts = _box(config, "single-intertwiner", n, count=5)
        with _Timer(config) as timer:
            worst = 0.0
            for x, ell in itertools.product(pts, range(1, n + 1)):
                xr = [Fraction(v) for v in x]
                kern = dunkl_kernel(x, kappa, ell, params=config.params).value
                worst = max(worst, abs(intertwine_single(np.exp, ell, x, kappa, q=config.q) - kern))
                for m in range(config.max_degree + 1):
                    ref = float(intertwine_monomial(n, ell, m, kappa).evaluate(xr))
                    got = intertwine_single(lambda u: u**m, ell, x, kappa, q=config.q)
                    worst = max(worst, abs(got - ref) / (1 + abs(ref)))
        out.append(VerifyReport("single-intertwiner", {"n": n, "kappa": _k(kappa)}, worst,
                                1e-10, timer.ms))
    return out


def check_quadrature_exactness(config: SuiteConfig) -> list[VerifyReport]:
    out = []
    for n in config.ns:
        for kappa in (Fraction(1, 2), Fraction(1), Fraction(5, 2)):
            for q in (4, 8):
                with _Timer(config) as timer:
                    rule = build_rule(n, float(kappa), q)
                    mass = rule.mass
                    worst = 0.0
                    for m in itertools.product(range(2 * q), repeat=n):
                        if sum(m) > 2 * q - 1:
                            continue
                        got = integrate(rule, lambda t: np.prod(t ** np.array(m), axis=1),
                                        vectorized=True) / mass
                        ref = dirichlet_moment(n, kappa, m)
                        worst = max(worst, abs(got - float(ref)) / float(ref))
                    gamma_mass = math.exp(n * log_gamma(float(kappa)) - log_gamma(n * float(kappa)))
                    worst = max(worst, abs(mass - gamma_mass) / gamma_mass)
                params = {"n": n, "kappa": _k(kappa), "q": q}
                out.append(VerifyReport("quad-exact", params, worst, 1e-12, timer.ms))
    return out


IDENTITIES: dict[str, tuple[str, Callable[[SuiteConfig], list[VerifyReport]]]] = {
    "ir1": ("D_i V(x_l^m) = V(d_i x_l^m), exact", check_intertwining),
    "unit-degree": ("V 1 = 1 and V maps degree m to degree m", check_unit_and_degree),
    "kappa-zero": ("V(x_l^m) -> x_l^m linearly as kappa -> 0", check_kappa_zero),
    "degenerate-ho": ("degenerate Heckman-Opdam closed form vs brute-force F_D",
                      check_degenerate_ho),
    "rational-limit": ("F(m lambda + rho, x/m) -> J(lambda, x)", check_rational_limit),
    "confluence": ("F_D(a; b; c; x/a) -> Phi2(b; c; x) as a -> infinity", check_confluence),
    "phi2-integral": ("Phi2 series = Dirichlet integral when c > sum b", check_phi2_integral),
    "bessel-reduced": ("Phi2^(n)(nu x) = exp(nu x_n) Phi2^(n-1)(nu (x_j - x_n))",
                       check_bessel_reduced),
    "bessel-integral": ("J series = c_k simplex integral, on and off the hyperplane",
                        check_bessel_integral),
    "kernel-paths": ("E(x, e_l): n-variable series, reduced series, simplex integral",
                     check_kernel_paths),
    "thm41-triple": ("A2 kernel: exp(x3) Phi2^(2) = Phi2^(3) = integral", check_triple_a2),
    "kernel-sum": ("sum_l E(x, e_l) = n J(e_1, x)", check_kernel_sum),
    "transposed-average": ("J(e_1, x) = (1/n) sum_j E(x (1 j), e_1)", check_transposed_average),
    "shift-a2": ("E(x, e_l) = n d_l J(e_l, x) (alternating part vanishes)", check_shift_a2),
    "diagonal": ("E((s..s), e_l) = J = exp(s) within the series bound", check_diagonal),
    "positivity": ("E and J are positive", check_positivity),
    "permutation-symmetry": ("J(e_1, x) is symmetric in x", check_permutation_symmetry),
    "power-sum": ("V[sum_sigma <., e_n sigma>^m] = n! c_k int <x, t>^m", check_power_sum),
    "symmetric-intertwiner": ("V F for F = sum_sigma f(x_j sigma)", check_symmetric_intertwiner),
    "single-intertwiner": ("V F for F = f(x_l)", check_single_intertwiner),
    "quad-exact": ("simplex rule exact on monomials through degree 2q - 1",
                   check_quadrature_exactness),
}


def _run_one(identity: str, config: SuiteConfig) -> list[VerifyReport]:
    return IDENTITIES[identity][1](config)


def run_suite(selection: Iterable[str] | None = None, config: SuiteConfig | None = None,
              jobs: int = 1) -> list[VerifyReport]:
    """Run the selected identities (all when ``selection`` is None).

    Reports are ordered by identity id, then by the runner's deterministic
    parameter order. ``jobs > 1`` runs identities in worker processes.
    """
    config = config or SuiteConfig()
    ids = list(IDENTITIES) if selection is None else list(dict.fromkeys(selection))
    unknown = [i for i in ids if i not in IDENTITIES]
    if unknown:
        raise UnknownIdentityError(", ".join(unknown))
    ids.sort()
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_one, ids, [config] * len(ids)))
    else:
        batches = [_run_one(i, config) for i in ids]
    return [rep for batch in batches for rep in batch]


def write_jsonl(reports: Iterable[VerifyReport], stream) -> None:
    for rep in reports:
        stream.write(rep.to_json() + "\n")
