"""Exact sparse multivariate polynomials with symmetric-group actions.

A :class:`MultiPoly` maps exponent vectors to coefficients. Coefficients are
:class:`fractions.Fraction` whenever the inputs are rational; a float
multiplicity ``kappa`` turns the Dunkl operator output into float
coefficients, nothing else in this module ever rounds.

Text format (round-trips exactly through :func:`parse_poly`)::

    3/4 * x1^2 x3 + -1/2 * x2 + 5
"""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

__all__ = [
    "MultiPoly",
    "Transposition",
    "alternating_poly_a2",
    "as_multiplicity",
    "divided_difference",
    "dunkl_apply",
    "parse_poly",
    "partial_derivative",
    "transpose_action",
]

Exponent = tuple[int, ...]


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, Number):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _grlex_key(e: Exponent):
    return (-sum(e), tuple(-a for a in e))


class MultiPoly:
    """Immutable polynomial in ``nvars`` variables ``x1 .. xn``.

    Terms are kept in graded-lexicographic order (highest total degree first)
    so that printing and iteration are deterministic.
    """

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        acc: dict[Exponent, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have length {nvars}")
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent in {e}")
            acc[e] = acc.get(e, 0) + _coerce(c)
        self._nvars = nvars
        self._terms = {e: acc[e] for e in sorted(acc, key=_grlex_key) if acc[e] != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> MultiPoly:
        """The coordinate ``x_i`` (1-based)."""
        _check_index(i, nvars)
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, object]) -> MultiPoly:
        # trusted path: keys valid, values already coerced
        obj = cls.__new__(cls)
        obj._nvars = nvars
        obj._terms = {e: terms[e] for e in sorted(terms, key=_grlex_key) if terms[e] != 0}
        obj._hash = None
        return obj

    # basic accessors

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def coefficient(self, e: Sequence[int]):
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, m: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (m is None or degs == {m})

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    # arithmetic

    def _check_compatible(self, other: MultiPoly) -> None:
        if other._nvars != self._nvars:
            raise ValueError(f"nvars mismatch: {self._nvars} vs {other._nvars}")

    def __add__(self, other):
        if isinstance(other, Number):
            other = MultiPoly.constant(other, self._nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return MultiPoly._raw(self._nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, Number):
            other = MultiPoly.constant(other, self._nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            c0 = _coerce(other)
            return MultiPoly._raw(self._nvars, {e: c * c0 for e, c in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        acc: dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MultiPoly._raw(self._nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(1, self._nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = MultiPoly.constant(other, self._nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, tuple(self._terms.items())))
        return self._hash

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``; exact if all entries are rational."""
        if len(point) != self._nvars:
            raise ValueError(f"point has {len(point)} entries, expected {self._nvars}")
        total = 0
        for e, c in self._terms.items():
            v = c
            for xi, a in zip(point, e):
                if a:
                    v = v * xi**a
            total = total + v
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def __repr__(self) -> str:
        return f"MultiPoly({self._nvars}, {str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_format_term(e, c) for e, c in self._terms.items())


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return repr(float(c))


def _format_term(e: Exponent, c) -> str:
    mono = " ".join(
        f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, start=1) if a
    )
    return f"{_format_coeff(c)} * {mono}" if mono else _format_coeff(c)


def _check_index(i: int, nvars: int) -> None:
    if not 1 <= i <= nvars:
        raise IndexError(f"variable index {i} out of range 1..{nvars}")


@dataclass(frozen=True)
class Transposition:
    """The transposition ``(i, j)`` swapping coordinates ``i`` and ``j`` (1-based)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("a transposition needs two distinct indices")
        if self.i < 1 or self.j < 1:
            raise IndexError("transposition indices are 1-based")

    def check(self, nvars: int) -> None:
        _check_index(self.i, nvars)
        _check_index(self.j, nvars)

    def swap(self, e: Sequence) -> tuple:
        e = list(e)
        a, b = self.i - 1, self.j - 1
        e[a], e[b] = e[b], e[a]
        return tuple(e)


def transpose_action(p: MultiPoly, s: Transposition) -> MultiPoly:
    """Return ``p`` with variables ``s.i`` and ``s.j`` exchanged."""
    s.check(p.nvars)
    return MultiPoly._raw(p.nvars, {s.swap(e): c for e, c in p.items()})


def divided_difference(p: MultiPoly, s: Transposition) -> MultiPoly:
    """Exact quotient ``(p - p∘s) / (x_i - x_j)``.

    The numerator is grouped by powers of ``x_i`` and divided by the linear
    factor with Horner's scheme at the root ``x_i = x_j``. A nonzero remainder
    means an arithmetic bug and raises :class:`ArithmeticError`.
    """
    s.check(p.nvars)
    n = p.nvars
    a, b = s.i - 1, s.j - 1
    num = p - transpose_action(p, s)
    if num.is_zero():
        return MultiPoly.zero(n)

    # num = sum_k C_k x_i^k with C_k free of x_i
    shells: dict[int, dict[Exponent, object]] = {}
    for e, c in num.items():
        k = e[a]
        rest = e[:a] + (0,) + e[a + 1 :]
        shells.setdefault(k, {})[rest] = c
    top = max(shells)

    def times_xj(poly: dict[Exponent, object]) -> dict[Exponent, object]:
        return {e[:b] + (e[b] + 1,) + e[b + 1 :]: c for e, c in poly.items()}

    def add(u: dict, v: dict) -> dict:
        out = dict(u)
        for e, c in v.items():
            out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c != 0}

    quotient: dict[Exponent, object] = {}
    q_k: dict[Exponent, object] = {}
    for k in range(top, 0, -1):
        q_k = add(shells.get(k, {}), times_xj(q_k))
        for e, c in q_k.items():
            key = e[:a] + (k - 1,) + e[a + 1 :]
            quotient[key] = quotient.get(key, 0) + c
    remainder = add(shells.get(0, {}), times_xj(q_k))
    if remainder:
        raise ArithmeticError(f"divided difference left a remainder for {s}")
    return MultiPoly._raw(n, quotient)


def partial_derivative(p: MultiPoly, i: int) -> MultiPoly:
    _check_index(i, p.nvars)
    a = i - 1
    out = {}
    for e, c in p.items():
        if e[a]:
            out[e[:a] + (e[a] - 1,) + e[a + 1 :]] = c * e[a]
    return MultiPoly._raw(p.nvars, out)


def as_multiplicity(kappa) -> Fraction | float:
    """Normalize a multiplicity: ``'p/q'`` strings and rationals become exact.

    Floats and decimal strings select float arithmetic downstream.
    """
    if isinstance(kappa, str):
        text = kappa.strip()
        kappa = Fraction(text) if "/" in text else float(text)
    elif isinstance(kappa, int) and not isinstance(kappa, bool):
        kappa = Fraction(kappa)
    elif not isinstance(kappa, (Fraction, float)):
        kappa = float(kappa)
    if kappa < 0:
        raise ValueError(f"multiplicity must be nonnegative, got {kappa}")
    return kappa


def dunkl_apply(p: MultiPoly, i: int, kappa) -> MultiPoly:
    """Type A Dunkl operator ``D_i = ∂_i + κ Σ_{j≠i} (1 - (i j)) / (x_i - x_j)``."""
    _check_index(i, p.nvars)
    kappa = as_multiplicity(kappa)
    out = partial_derivative(p, i)
    if kappa == 0:
        return out
    diff = MultiPoly.zero(p.nvars)
    for j in range(1, p.nvars + 1):
        if j != i:
            diff = diff + divided_difference(p, Transposition(i, j))
    return out + diff * kappa


def alternating_poly_a2() -> MultiPoly:
    """``(x1 - x2)(x1 - x3)(x2 - x3)`` expanded."""
    x1, x2, x3 = (MultiPoly.variable(i, 3) for i in (1, 2, 3))
    return (x1 - x2) * (x1 - x3) * (x2 - x3)


# parsing

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+/\d+|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|x(?P<var>\d+)"
    r"|(?P<op>[-+*^])"
    r")"
)


def _tokens(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


def _number(tok: str):
    if "/" in tok:
        return Fraction(tok)
    if any(ch in tok for ch in ".eE"):
        return float(tok)
    return Fraction(int(tok))


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse the textual format written by ``str(MultiPoly)``.

    Also accepts ``-`` as a binary operator, a missing coefficient and
    implicit exponent 1, e.g. ``x1^2 - 3 x2``. ``nvars`` defaults to the
    largest variable index that appears.
    """
    toks = _tokens(text)
    if not toks:
        raise ValueError("empty polynomial")
    terms: list[tuple[object, dict[int, int]]] = []
    k = 0
    while k < len(toks):
        sign = 1
        while k < len(toks) and toks[k][0] == "op" and toks[k][1] in "+-":
            if toks[k][1] == "-":
                sign = -sign
            k += 1
        coeff = None
        powers: dict[int, int] = {}
        if k < len(toks) and toks[k][0] == "num":
            coeff = _number(toks[k][1])
            k += 1
            if k < len(toks) and toks[k] == ("op", "*"):
                k += 1
        while k < len(toks) and toks[k][0] == "var":
            v = int(toks[k][1])
            if v < 1:
                raise ValueError("variables are numbered from x1")
            k += 1
            a = 1
            if k < len(toks) and toks[k] == ("op", "^"):
                if k + 1 >= len(toks) or toks[k + 1][0] != "num" or "/" in toks[k + 1][1]:
                    raise ValueError("exponent must be a nonnegative integer")
                a = int(toks[k + 1][1])
                k += 2
            powers[v] = powers.get(v, 0) + a
            if k < len(toks) and toks[k] == ("op", "*"):
                k += 1
        if coeff is None and not powers:
            raise ValueError(f"dangling operator in {text!r}")
        if k < len(toks) and not (toks[k][0] == "op" and toks[k][1] in "+-"):
            raise ValueError(f"unexpected token {toks[k][1]!r} in {text!r}")
        terms.append((sign * (1 if coeff is None else coeff), powers))
    top = max((v for _, pw in terms for v in pw), default=1)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise ValueError(f"x{top} exceeds nvars={nvars}")
    acc: dict[Exponent, object] = {}
    for c, pw in terms:
        e = tuple(pw.get(v, 0) for v in range(1, nvars + 1))
        acc[e] = acc.get(e, 0) + _coerce(c)
    return MultiPoly(nvars, acc)

