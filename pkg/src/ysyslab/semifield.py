"""Semifield backends for coefficient dynamics.

Three backends share one small interface (``one``, ``mul``, ``inv``,
``power``, ``one_plus``, ``add``):

* ``TropicalBackend`` -- Laurent monomials with min-plus addition,
* ``RationalBackend`` -- subtraction-free rational functions (``PosRational``),
* ``RealBackend``     -- positive floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import IndexMismatchError, NumericRangeError
from .poly import Poly, poly_gcd


# -- tropical ---------------------------------------------------------------


@dataclass(frozen=True)
class TropMonomial:
    """A Laurent monomial y^exponents in the tropical semifield."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    @classmethod
    def one(cls, n: int) -> "TropMonomial":
        return cls((0,) * n)

    @classmethod
    def generator(cls, n: int, k: int) -> "TropMonomial":
        return cls(tuple(int(j == k) for j in range(n)))

    def __len__(self):
        return len(self.exponents)

    def _check(self, other):
        if len(self.exponents) != len(other.exponents):
            raise IndexMismatchError("tropical monomials over different index sets")

    def __mul__(self, other: "TropMonomial") -> "TropMonomial":
        self._check(other)
        return TropMonomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "TropMonomial") -> "TropMonomial":
        self._check(other)
        return TropMonomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, n: int) -> "TropMonomial":
        return TropMonomial(tuple(n * a for a in self.exponents))

    def inverse(self) -> "TropMonomial":
        return TropMonomial(tuple(-a for a in self.exponents))

    def __or__(self, other: "TropMonomial") -> "TropMonomial":
        return trop_add(self, other)

    def sparse(self) -> dict[int, int]:
        return {k: e for k, e in enumerate(self.exponents) if e}

    def __repr__(self):
        return f"TropMonomial{self.exponents}"


def trop_add(a: TropMonomial, b: TropMonomial) -> TropMonomial:
    """Tropical sum: componentwise minimum of exponents."""
    a._check(b)
    return TropMonomial(tuple(min(x, y) for x, y in zip(a.exponents, b.exponents)))


POSITIVE, NEGATIVE, ZERO, MIXED = "positive", "negative", "zero", "mixed"


def monomial_sign(m: TropMonomial) -> str:
    e = m.exponents
    if all(x == 0 for x in e):
        return ZERO
    if all(x >= 0 for x in e):
        return POSITIVE
    if all(x <= 0 for x in e):
        return NEGATIVE
    return MIXED


# -- subtraction-free rational functions ---------------------------------------


class PosRational:
    """numerator/denominator with nonnegative integer coefficients.

    Equality is equality of rational functions (cross multiplication), so it
    never depends on whether the pair has been reduced.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = False):
        if den is None:
            den = Poly.constant(num.nvars)
        num._check(den)
        if not den.terms:
            raise ZeroDivisionError("PosRational with zero denominator")
        if not (num.is_nonnegative() and den.is_nonnegative() and num.terms):
            raise ValueError("PosRational needs nonzero polynomials with nonnegative coefficients")
        g = math.gcd(num.content(), den.content())
        if g > 1:
            num = Poly(num.nvars, {e: c // g for e, c in num.terms.items()})
            den = Poly(den.nvars, {e: c // g for e, c in den.terms.items()})
        # pull the common monomial factor out so the pair stays small
        shift = tuple(-min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents()))
        if any(shift):
            num, den = num.shift(shift), den.shift(shift)
        self.num, self.den = num, den
        if reduce:
            self._reduce()

    def _reduce(self) -> None:
        g = poly_gcd(self.num, self.den)
        if g.is_one or not g.terms:
            return
        if max(g.terms) and g.terms[max(g.terms)] < 0:
            g = -g
        n, d = self.num.exact_div(g), self.den.exact_div(g)
        # a gcd with negative coefficients can leave signed cofactors; keep the
        # subtraction-free pair in that case
        if n.is_nonnegative() and d.is_nonnegative():
            self.num, self.den = n, d

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def one(cls, n: int) -> "PosRational":
        return cls(Poly.constant(n))

    @classmethod
    def generator(cls, n: int, k: int) -> "PosRational":
        return cls(Poly.variable(n, k))

    @classmethod
    def from_monomial(cls, m: TropMonomial) -> "PosRational":
        n = len(m)
        pos = tuple(max(e, 0) for e in m.exponents)
        neg = tuple(max(-e, 0) for e in m.exponents)
        return cls(Poly.monomial(pos), Poly.monomial(neg)) if n else cls.one(0)

    def __mul__(self, other: "PosRational") -> "PosRational":
        return PosRational(self.num * other.num, self.den * other.den)

    def mul_reduced(self, other: "PosRational") -> "PosRational":
        """Product with cross cancellation, so that intermediates stay small.

        If both operands are reduced the result is reduced as well.
        """
        a, b = _cancel(self.num, other.den)
        c, d = _cancel(other.num, self.den)
        return PosRational(a * c, d * b)

    def __truediv__(self, other: "PosRational") -> "PosRational":
        return PosRational(self.num * other.den, self.den * other.num)

    def __add__(self, other: "PosRational") -> "PosRational":
        return PosRational(self.num * other.den + other.num * self.den, self.den * other.den)

    def __pow__(self, n: int) -> "PosRational":
        if n >= 0:
            return PosRational(self.num ** n, self.den ** n)
        return PosRational(self.den ** (-n), self.num ** (-n))

    def inverse(self) -> "PosRational":
        return PosRational(self.den, self.num)

    def reduced(self) -> "PosRational":
        return PosRational(self.num, self.den, reduce=True)

    def tropical(self) -> TropMonomial:
        """Tropical evaluation [f]_T."""
        return TropMonomial(
            tuple(a - b for a, b in zip(self.num.min_exponents(), self.den.min_exponents()))
        )

    def __eq__(self, other):
        if not isinstance(other, PosRational):
            return NotImplemented
        return rat_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


def _cancel(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Divide p and q by their gcd when the cofactors stay subtraction-free."""
    if p.is_one or q.is_one:
        return p, q
    g = poly_gcd(p, q)
    if g.is_one or len(g) == 0:
        return p, q
    if g.terms[max(g.terms)] < 0:
        g = -g
    p2, q2 = p.exact_div(g), q.exact_div(g)
    if p2.is_nonnegative() and q2.is_nonnegative():
        return p2, q2
    return p, q


def rat_equal(a: PosRational, b: PosRational) -> bool:
    a.num._check(b.num)
    if a.num == b.num and a.den == b.den:
        return True
    return (a.num * b.den) == (b.num * a.den)


# -- positive reals ------------------------------------------------------------


@dataclass(frozen=True)
class PosRealAssignment:
    """Images of the initial generators under a semifield map to positive reals."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        for v in vals:
            if not (math.isfinite(v) and v > 0):
                raise NumericRangeError(f"assignment value {v} is not a positive finite real")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    @classmethod
    def from_json_map(cls, mapping: Mapping[str, float], labels: Sequence[str]) -> "PosRealAssignment":
        """Build from ``{"y_(i,i')": value}`` using the frame's label order."""
        missing = [lab for lab in labels if lab not in mapping]
        if missing:
            raise IndexMismatchError(f"assignment misses generators {missing}")
        return cls(tuple(mapping[lab] for lab in labels))


def _check_real(x: float) -> float:
    if not (math.isfinite(x) and x > 0.0):
        raise NumericRangeError(f"numeric coefficient left the positive finite range: {x!r}")
    return x


def evaluate(expr, assignment: PosRealAssignment) -> float:
    """Apply the semifield homomorphism fixed by ``assignment``."""
    vals = assignment.values
    if isinstance(expr, TropMonomial):
        if len(expr) != len(vals):
            raise IndexMismatchError("assignment does not cover the monomial's index set")
        try:
            out = math.prod(v ** e for v, e in zip(vals, expr.exponents))
        except OverflowError as exc:
            raise NumericRangeError("monomial evaluation overflowed") from exc
        return _check_real(out)
    if isinstance(expr, PosRational):
        if expr.nvars != len(vals):
            raise IndexMismatchError("assignment does not cover the rational function's index set")
        return _check_real(expr.num.evaluate(vals) / expr.den.evaluate(vals))
    raise TypeError(f"cannot evaluate {type(expr).__name__}")


# -- backends -------------------------------------------------------------------


class TropicalBackend:
    name = "tropical"

    def __init__(self, n: int):
        self.n = n

    def one(self):
        return TropMonomial.one(self.n)

    def generator(self, k):
        return TropMonomial.generator(self.n, k)

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def power(self, a, k):
        return a ** k

    def add(self, a, b):
        return trop_add(a, b)

    def one_plus(self, a):
        return trop_add(self.one(), a)

    def equal(self, a, b):
        return a == b


class RationalBackend:
    name = "rational"

    def __init__(self, n: int, reduce: bool = True):
        self.n = n
        self.reduce = reduce

    def _norm(self, a):
        return a.reduced() if self.reduce else a

    def one(self):
        return PosRational.one(self.n)

    def generator(self, k):
        return PosRational.generator(self.n, k)

    def mul(self, a, b):
        return a.mul_reduced(b) if self.reduce else a * b

    def inv(self, a):
        return a.inverse()

    def power(self, a, k):
        # powers of a reduced pair stay reduced
        return a ** k

    def add(self, a, b):
        return self._norm(a + b)

    def one_plus(self, a):
        return PosRational(a.num + a.den, a.den)

    def equal(self, a, b):
        return rat_equal(a, b)


class RealBackend:
    name = "numeric"

    def __init__(self, n: int):
        self.n = n

    def one(self):
        return 1.0

    def mul(self, a, b):
        return _check_real(a * b)

    def inv(self, a):
        return _check_real(1.0 / a)

    def power(self, a, k):
        try:
            return _check_real(a ** k)
        except OverflowError as exc:
            raise NumericRangeError("power overflowed") from exc

    def add(self, a, b):
        return _check_real(a + b)

    def one_plus(self, a):
        return _check_real(1.0 + a)

    def equal(self, a, b, rel=1e-9):
        return abs(a - b) <= rel * max(abs(a), abs(b))


BACKENDS = {"tropical": TropicalBackend, "rational": RationalBackend, "numeric": RealBackend}


def make_backend(name: str, n: int):
    try:
        return BACKENDS[name](n)
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(BACKENDS)}") from None


LOG_LOW, LOG_HIGH = math.log(0.05), math.log(20.0)


def random_assignment(n: int, rng) -> PosRealAssignment:
    """Log-uniform values in [0.05, 20]; ``rng`` is a numpy Generator."""
    return PosRealAssignment(tuple(math.exp(x) for x in rng.uniform(LOG_LOW, LOG_HIGH, size=n)))
