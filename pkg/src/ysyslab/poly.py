"""Sparse multivariate polynomials with arbitrary precision integer coefficients.

Terms are stored as ``{exponent_tuple: coefficient}`` with zero coefficients
dropped.  Exact division uses lexicographic leading terms.  Large products
and gcds are delegated to python-flint, with sympy as the gcd fallback.
"""
from __future__ import annotations

import heapq
import math
from functools import lru_cache

from .errors import IndexMismatchError, InvariantViolation, NumericRangeError


# products with more term pairs than this go through python-flint when available
_FLINT_MUL_THRESHOLD = 4096


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                if c:
                    e = tuple(int(x) for x in e)
                    if len(e) != nvars:
                        raise IndexMismatchError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[e] = int(c)
        self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        """Trusted constructor: ``terms`` already has int tuples and no zeros."""
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, nvars: int, c: int = 1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps, c: int = 1) -> "Poly":
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "Poly":
        return cls.monomial(tuple(int(j == k) for j in range(nvars)))

    # -- basic protocol -------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise IndexMismatchError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"y{k + 1}" + (f"^{x}" if x != 1 else "") for k, x in enumerate(e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def canonical_key(self) -> tuple:
        return (self.nvars, tuple(sorted(self.terms.items())))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self.terms) * len(other.terms) > _FLINT_MUL_THRESHOLD:
            ctx = _flint_ctx(self.nvars)
            if ctx is not None:
                prod = ctx.from_dict(self.terms) * ctx.from_dict(other.terms)
                return _from_flint(self.nvars, prod)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exps) -> "Poly":
        """Multiply by the monomial y^exps (exps may be negative if the result stays polynomial)."""
        out = {}
        for e, c in self.terms.items():
            new = tuple(a + b for a, b in zip(e, exps))
            if min(new, default=0) < 0:
                raise InvariantViolation("monomial shift produced a negative exponent")
            out[new] = c
        return Poly(self.nvars, out)

    def divmod_exact(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Lex-order division; returns (quotient, remainder).

        The remainder is zero whenever ``divisor`` divides ``self`` exactly.
        A non-zero remainder is returned as soon as a leading term fails to divide.
        """
        self._check(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(divisor.terms)
        lead_c = divisor.terms[lead]
        rem = dict(self.terms)
        heap = [tuple(-x for x in e) for e in rem]
        heapq.heapify(heap)
        quot: dict = {}
        while heap:
            key = heapq.heappop(heap)
            e = tuple(-x for x in key)
            c = rem.get(e, 0)
            if c == 0:
                continue
            q, r = divmod(c, lead_c)
            if r or any(a < b for a, b in zip(e, lead)):
                return Poly(self.nvars, quot), Poly(self.nvars, rem)
            qe = tuple(a - b for a, b in zip(e, lead))
            quot[qe] = quot.get(qe, 0) + q
            for de, dc in divisor.terms.items():
                te = tuple(a + b for a, b in zip(qe, de))
                old = rem.get(te, 0)
                new = old - q * dc
                if new:
                    if not old:
                        heapq.heappush(heap, tuple(-x for x in te))
                    rem[te] = new
                else:
                    rem.pop(te, None)
        return Poly(self.nvars, quot), Poly(self.nvars, {})

    def exact_div(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod_exact(divisor)
        if r.terms:
            raise InvariantViolation("polynomial division is not exact")
        return q

    # -- queries --------------------------------------------------------------

    @property
    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    @property
    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: 1}

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    def min_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum of exponents, i.e. the tropical evaluation of a
        subtraction-free polynomial."""
        if not self.terms:
            raise ValueError("tropical evaluation of the zero polynomial")
        return tuple(min(col) for col in zip(*self.terms))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, values) -> float:
        """Evaluate at a sequence of floats, raising NumericRangeError on overflow."""
        total = 0.0
        try:
            for e, c in self.terms.items():
                term = float(c)
                for v, k in zip(values, e):
                    if k:
                        term *= v ** k
                total += term
        except OverflowError as exc:
            raise NumericRangeError("polynomial evaluation overflowed") from exc
        if not math.isfinite(total):
            raise NumericRangeError("polynomial evaluation is not finite")
        return total

    # -- sympy bridge ---------------------------------------------------------

    def to_sympy(self):
        R = _ring(self.nvars)
        return R.from_dict(dict(self.terms))

    @classmethod
    def from_sympy(cls, nvars: int, p) -> "Poly":
        return cls(nvars, {tuple(e): int(c) for e, c in p.items()})


@lru_cache(maxsize=None)
def _ring(nvars: int):
    from sympy import ZZ
    from sympy.polys.orderings import lex
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(f"y{k}" for k in range(nvars)), ZZ, lex)
    return R


@lru_cache(maxsize=None)
def _flint_ctx(nvars: int):
    try:
        import flint
    except ImportError:  # pragma: no cover - optional accelerator
        return None
    return flint.fmpz_mpoly_ctx.get(tuple(f"y{k}" for k in range(nvars)), "lex")


def _from_flint(nvars: int, p) -> Poly:
    return Poly._raw(nvars, {tuple(map(int, e)): int(c) for e, c in p.to_dict().items()})


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Polynomial gcd (python-flint when installed, sympy otherwise)."""
    a._check(b)
    ctx = _flint_ctx(a.nvars)
    if ctx is not None:
        return _from_flint(a.nvars, ctx.from_dict(a.terms).gcd(ctx.from_dict(b.terms)))
    g = a.to_sympy().gcd(b.to_sympy())
    return Poly.from_sympy(a.nvars, g)
