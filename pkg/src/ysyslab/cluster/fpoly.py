"""F-polynomials of the square product via their three-term recurrence."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InvariantViolation
from ..poly import Poly
from .frame import CoefficientFrame, build_frame, check_symbolic_budget
from .seed import SquareProduct, make_pair, parity


@dataclass
class FPolyFamily:
    pair: SquareProduct
    u_min: int
    u_max: int
    polys: dict[tuple[int, int], Poly] = field(repr=False)
    tropical: CoefficientFrame = field(repr=False)
    atoms: dict[tuple, int] = field(default_factory=dict, repr=False)
    atom_polys: list[Poly] = field(default_factory=list, repr=False)

    def F(self, p: int, u: int) -> Poly:
        return self.polys[(p, u)]

    def intern(self, poly: Poly) -> int | None:
        """Atom id of a polynomial; None for the constant 1 (the group identity)."""
        if poly.is_one:
            return None
        key = poly.canonical_key()
        if key not in self.atoms:
            self.atoms[key] = len(self.atom_polys)
            self.atom_polys.append(poly)
        return self.atoms[key]

    def atom(self, p: int, u: int) -> int | None:
        return self.intern(self.F(p, u))


def _exchange_terms(pair: SquareProduct, trop, polys, p: int, u: int) -> Poly:
    """Right hand side of F(u-1) F(u+1) = ... at a P_+ point (p, u)."""
    e = trop[p, u].exponents
    left = Poly.monomial(tuple(max(x, 0) for x in e))
    right = Poly.monomial(tuple(max(-x, 0) for x in e))
    for j in pair.neighbors_M(p):
        left = left * polys[(j, u)]
    for j in pair.neighbors_Mp(p):
        right = right * polys[(j, u)]
    return left + right


def _checked(poly: Poly, p: int, u: int, pair) -> Poly:
    if poly.constant_term != 1:
        raise InvariantViolation(f"{pair}: F at {pair.indices[p]}, u={u} has constant term {poly.constant_term}")
    if not poly.is_nonnegative():
        raise InvariantViolation(f"{pair}: F at {pair.indices[p]}, u={u} has a negative coefficient")
    return poly


def _divide(num: Poly, den: Poly, p: int, u: int, pair) -> Poly:
    q, r = num.divmod_exact(den)
    if r.terms:
        raise InvariantViolation(f"{pair}: F-recurrence division not exact at {pair.indices[p]}, u={u}")
    return q


def f_polynomials(pair, u_min: int, u_max: int, max_rr: int | None = None) -> FPolyFamily:
    """F_i(u) for u_min <= u <= u_max, starting from F_i(0) = 1."""
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    if not u_min <= 0 <= u_max:
        raise ValueError(f"u-range [{u_min}, {u_max}] must contain 0")
    check_symbolic_budget(pair, u_min, u_max, max_rr)
    trop = build_frame(pair, "tropical", u_min=u_min - 1, u_max=u_max + 1)
    n = pair.n
    one = Poly.constant(n)
    polys = {(p, 0): one for p in range(n)}

    # backward: slice v-1 from slice v
    for v in range(0, u_min, -1):
        for p in range(n):
            if parity(pair.eps, p, v) > 0:
                polys[(p, v - 1)] = polys[(p, v)]
        for p in range(n):
            if parity(pair.eps, p, v) < 0:
                # (p, v-1) is P_+: F(v-2) F(v) = rhs, and F(v-1) = F(v-2)
                rhs = _exchange_terms(pair, trop, polys, p, v - 1)
                polys[(p, v - 1)] = _checked(_divide(rhs, polys[(p, v)], p, v - 1, pair), p, v - 1, pair)

    # forward: slice u+1 from slice u
    for u in range(0, u_max):
        for p in range(n):
            if parity(pair.eps, p, u + 1) > 0:
                polys[(p, u + 1)] = polys[(p, u)]
        for p in range(n):
            if parity(pair.eps, p, u) > 0:
                # F(u-1) = F(u) at a P_+ point
                rhs = _exchange_terms(pair, trop, polys, p, u)
                polys[(p, u + 1)] = _checked(_divide(rhs, polys[(p, u)], p, u, pair), p, u, pair)

    fam = FPolyFamily(pair, u_min, u_max, polys, trop)
    for u in range(u_min, u_max + 1):
        for p in range(n):
            fam.intern(polys[(p, u)])
    return fam
