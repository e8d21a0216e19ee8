"""Symbolic check that sum over S+ of y ∧ (1+y) vanishes in the exterior square.

Every y_i(u) and 1 + y_i(u) with (i, u): P+ factors as a tropical monomial
times a product of F-polynomials.  Expanding by bilinearity turns the sum
into an integer table over pairs of atoms (initial variables and
F-polynomials), which must be identically zero.  The expansion is split into
the tropical block, the F-only block and five mixed identities, each
checked on its own.
"""
from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import ParityError
from .poly import Poly
from .report import Report
from .semifield import PosRational, TropMonomial, rat_equal, trop_add
from .cluster.fpoly import FPolyFamily, f_polynomials
from .cluster.frame import build_frame, check_symbolic_budget, domain_points
from .cluster.seed import SquareProduct, make_pair, parity

Y_ATOM, F_ATOM = 0, 1


@dataclass(frozen=True, order=True)
class Atom:
    """An initial variable (kind 0, key = position) or an F-polynomial (kind 1, key = intern id)."""

    kind: int
    key: int

    def label(self, pair: SquareProduct) -> str:
        return pair.labels[self.key] if self.kind == Y_ATOM else f"F#{self.key}"


class FactorList(dict):
    """Atom -> integer exponent, zero exponents dropped."""

    def add(self, atom: Atom | None, e: int = 1) -> "FactorList":
        if atom is None or e == 0:
            return self
        v = self.get(atom, 0) + e
        if v:
            self[atom] = v
        else:
            self.pop(atom, None)
        return self

    def times(self, other: "FactorList", e: int = 1) -> "FactorList":
        out = FactorList(self)
        for a, x in other.items():
            out.add(a, e * x)
        return out

    @classmethod
    def monomial(cls, m: TropMonomial) -> "FactorList":
        out = cls()
        for k, e in m.sparse().items():
            out.add(Atom(Y_ATOM, k), e)
        return out


class WedgeSum:
    """Integer coefficients on a ∧ b for atoms a < b."""

    def __init__(self):
        self.coefficients: dict[tuple[Atom, Atom], int] = defaultdict(int)

    def add(self, f: FactorList, g: FactorList, c: int = 1) -> "WedgeSum":
        for a, x in f.items():
            for b, y in g.items():
                if a < b:
                    self.coefficients[(a, b)] += c * x * y
                elif b < a:
                    self.coefficients[(b, a)] -= c * x * y
        return self

    def __iadd__(self, other: "WedgeSum") -> "WedgeSum":
        for k, v in other.coefficients.items():
            self.coefficients[k] += v
        return self

    def __sub__(self, other: "WedgeSum") -> "WedgeSum":
        out = WedgeSum()
        out += self
        for k, v in other.coefficients.items():
            out.coefficients[k] -= v
        return out

    def support(self) -> dict[tuple[Atom, Atom], int]:
        return {k: v for k, v in sorted(self.coefficients.items()) if v}

    def is_zero(self) -> bool:
        return not self.support()

    def __eq__(self, other):
        if not isinstance(other, WedgeSum):
            return NotImplemented
        return self.support() == other.support()


@dataclass
class WedgeContext:
    """F-polynomials and tropical values on [-1, 2(h+h')] for one pair."""

    pair: SquareProduct
    family: FPolyFamily = field(repr=False)

    def trop(self, p: int, u: int) -> TropMonomial:
        return self.family.tropical[p, u]

    def F(self, p: int, u: int) -> FactorList:
        return FactorList().add(_f_atom(self.family, p, u))

    def F_prod(self, ps, u: int, e: int = 1) -> FactorList:
        out = FactorList()
        for j in ps:
            out.add(_f_atom(self.family, j, u), e)
        return out


def _f_atom(fam: FPolyFamily, p: int, u: int) -> Atom | None:
    k = fam.atom(p, u)
    return None if k is None else Atom(F_ATOM, k)


def wedge_context(pair, max_rr: int | None = None) -> WedgeContext:
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    return WedgeContext(pair, f_polynomials(pair, -1, pair.period, max_rr=max_rr))


def _require_plus(pair: SquareProduct, p: int, u: int) -> None:
    if parity(pair.eps, p, u) < 0:
        raise ParityError(f"{pair}: ({pair.indices[p]}, {u}) is not a P+ point")


def factorize_y(ctx: WedgeContext, p: int, u: int) -> FactorList:
    """[y_p(u)]_T * prod F_j(u)^{M_jp} / prod F_j(u)^{M'_jp}."""
    pair = ctx.pair
    _require_plus(pair, p, u)
    out = FactorList.monomial(ctx.trop(p, u))
    out = out.times(ctx.F_prod(pair.neighbors_M(p), u))
    return out.times(ctx.F_prod(pair.neighbors_Mp(p), u), -1)


def factorize_one_plus_y(ctx: WedgeContext, p: int, u: int) -> FactorList:
    """[1 + y_p(u)]_T * F_p(u-1) F_p(u+1) / prod F_j(u)^{M'_jp}."""
    pair = ctx.pair
    _require_plus(pair, p, u)
    t = trop_add(TropMonomial.one(pair.n), ctx.trop(p, u))
    out = FactorList.monomial(t).times(ctx.F(p, u - 1)).times(ctx.F(p, u + 1))
    return out.times(ctx.F_prod(pair.neighbors_Mp(p), u), -1)


def factor_value(ctx: WedgeContext, f: FactorList) -> PosRational:
    n = ctx.pair.n
    num, den = Poly.constant(n), Poly.constant(n)
    pos, neg = [0] * n, [0] * n
    for a, e in f.items():
        if a.kind == Y_ATOM:
            (pos if e > 0 else neg)[a.key] += abs(e)
        elif e > 0:
            num = num * ctx.family.atom_polys[a.key] ** e
        else:
            den = den * ctx.family.atom_polys[a.key] ** (-e)
    return PosRational(num * Poly.monomial(pos), den * Poly.monomial(neg))


def factor_numeric(ctx: WedgeContext, f: FactorList, values) -> float:
    logv = 0.0
    for a, e in f.items():
        v = values[a.key] if a.kind == Y_ATOM else ctx.family.atom_polys[a.key].evaluate(values)
        logv += e * math.log(v)
    return math.exp(logv)


def validate_factorizations(ctx: WedgeContext, symbolic: bool = True, numeric_values=None,
                            tol: float = 1e-10) -> list[dict]:
    """Witnesses where a factorization disagrees with the frame value."""
    pair = ctx.pair
    P = pair.period
    witnesses = []
    if symbolic:
        frame = build_frame(pair, "rational", None, 0, P - 1)
        for p, u in domain_points(pair, "S+"):
            y = frame[p, u]
            if not rat_equal(factor_value(ctx, factorize_y(ctx, p, u)), y):
                witnesses.append({"kind": "y", "index": list(pair.indices[p]), "u": u})
            one_plus = PosRational(y.num + y.den, y.den)
            if not rat_equal(factor_value(ctx, factorize_one_plus_y(ctx, p, u)), one_plus):
                witnesses.append({"kind": "1+y", "index": list(pair.indices[p]), "u": u})
    if numeric_values is not None:
        frame = build_frame(pair, "numeric", numeric_values, 0, P - 1)
        for p, u in domain_points(pair, "S+"):
            y = frame[p, u]
            for kind, f, want in (("y", factorize_y(ctx, p, u), y),
                                  ("1+y", factorize_one_plus_y(ctx, p, u), 1.0 + y)):
                got = factor_numeric(ctx, f, numeric_values)
                if not abs(got / want - 1.0) < tol:
                    witnesses.append({"kind": f"numeric {kind}", "index": list(pair.indices[p]), "u": u,
                                      "factorized": got, "frame": want})
    return witnesses


# -- blocks ------------------------------------------------------------------------


def _pieces(ctx: WedgeContext, p: int, u: int):
    """T, T1, A, B, C with y = T A / B and 1 + y = T1 C / B."""
    pair = ctx.pair
    T = ctx.trop(p, u)
    T1 = trop_add(TropMonomial.one(pair.n), T)
    A = ctx.F_prod(pair.neighbors_M(p), u)
    B = ctx.F_prod(pair.neighbors_Mp(p), u)
    C = ctx.F(p, u - 1).times(ctx.F(p, u + 1))
    return FactorList.monomial(T), FactorList.monomial(T1), A, B, C


def _mixed_rhs(ctx: WedgeContext, points_minus):
    """Right hand sides of the five mixed identities, summed over S-."""
    pair = ctx.pair
    one = TropMonomial.one(pair.n)
    rhs = [WedgeSum() for _ in range(5)]
    for p, u in points_minus:
        Fi = ctx.F(p, u)
        rhs[0].add(FactorList.monomial(ctx.trop(p, u + 1)), Fi)
        rhs[1].add(FactorList.monomial(ctx.trop(p, u - 1)), Fi)
        g3, g4, g5 = FactorList(), FactorList(), FactorList()
        for j in pair.neighbors_Mp(p):
            g3 = g3.times(FactorList.monomial(ctx.trop(j, u)), -1)
            g5 = g5.times(FactorList.monomial(trop_add(one, ctx.trop(j, u))))
        for j in pair.neighbors_M(p):
            g4 = g4.times(FactorList.monomial(trop_add(one, ctx.trop(j, u))), -1)
        rhs[2].add(g3, Fi)
        rhs[3].add(g4, Fi)
        rhs[4].add(g5, Fi)
    return rhs


def wedge_blocks(ctx: WedgeContext, order_seed: int | None = None) -> dict[str, WedgeSum]:
    """Total and per-block WedgeSums; ``order_seed`` shuffles the S+ enumeration."""
    pair = ctx.pair
    plus = domain_points(pair, "S+")
    if order_seed is not None:
        random.Random(order_seed).shuffle(plus)
    names = ["total", "tropical", "symmetric_1", "symmetric_2", "symmetric_3",
             "mixed_1", "mixed_2", "mixed_3", "mixed_4", "mixed_5"]
    W = {k: WedgeSum() for k in names}
    for p, u in plus:
        W["total"].add(factorize_y(ctx, p, u), factorize_one_plus_y(ctx, p, u))
        T, T1, A, B, C = _pieces(ctx, p, u)
        W["tropical"].add(T, T1)
        W["symmetric_1"].add(A, C)
        W["symmetric_2"].add(A, B, -1)
        W["symmetric_3"].add(B, C, -1)
        W["mixed_1"].add(T, ctx.F(p, u - 1))
        W["mixed_2"].add(T, ctx.F(p, u + 1))
        W["mixed_3"].add(T, B, -1)
        W["mixed_4"].add(T1, A, -1)
        W["mixed_5"].add(T1, FactorList().times(B, -1), -1)
        # B ∧ B vanishes identically, so the expansion has no further terms
    return W


def _serialize(pair: SquareProduct, ws: WedgeSum, limit: int = 20) -> list:
    return [[a.label(pair), b.label(pair), c] for (a, b), c in list(ws.support().items())[:limit]]


def wedge_vanishing(pair, max_rr: int | None = None, validate: bool = True,
                    order_seed: int | None = None) -> Report:
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    check_symbolic_budget(pair, -1, pair.period, max_rr)
    ctx = wedge_context(pair, max_rr=max_rr)
    W = wedge_blocks(ctx, order_seed)
    rhs = _mixed_rhs(ctx, domain_points(pair, "S-"))

    blocks = {"tropical": W["tropical"].is_zero()}
    symmetric = [W[f"symmetric_{k}"] for k in (1, 2, 3)]
    blocks["symmetric"] = all(s.is_zero() for s in symmetric)
    for k, s in enumerate(symmetric, 1):
        blocks[f"symmetric_{k}"] = s.is_zero()
    for k in range(1, 6):
        blocks[f"mixed_{k}"] = W[f"mixed_{k}"] == rhs[k - 1]
    rhs_total = WedgeSum()
    for r in rhs:
        rhs_total += r
    blocks["mixed_total"] = rhs_total.is_zero()

    recombined = WedgeSum()
    for k in ["tropical", "symmetric_1", "symmetric_2", "symmetric_3"] + [f"mixed_{k}" for k in range(1, 6)]:
        recombined += W[k]
    witnesses = []
    if not recombined == W["total"]:
        witnesses.append({"kind": "expansion", "difference": _serialize(pair, recombined - W["total"])})
    if validate:
        witnesses.extend(validate_factorizations(ctx))
    failed_blocks = [k for k, ok in blocks.items() if not ok]
    for k in failed_blocks:
        witnesses.append({"kind": "block", "block": k})
    total_zero = W["total"].is_zero()
    if not total_zero and not failed_blocks:
        witnesses.append({"kind": "total", "note": "all sub-blocks vanish but the total does not"})
    return Report(
        "wedge",
        total_zero and not witnesses,
        {
            "pair": str(pair),
            "total_zero": total_zero,
            "blocks": blocks,
            "surviving_pairs": _serialize(pair, W["total"]),
            "atoms": pair.n + len(ctx.family.atom_polys),
            "s_plus_terms": len(domain_points(pair, "S+")),
            "validated": validate,
        },
        witnesses[:20],
    )


def _transpose_pair(pair: SquareProduct) -> tuple[SquareProduct, list[int]]:
    dual = make_pair(pair.Xp, pair.X)
    return dual, [dual.position[(ip, i)] for i, ip in pair.indices]


def verify_duality(pair, samples: int = 3, seed: int = 0, tol: float = 1e-9,
                   max_rr: int | None = None) -> Report:
    """Level-rank duality Y_(i,i') <-> Y_(i',i)^{-1}.

    The frame of (X', X) started from the inverted, relabelled initial values
    must be the inverted, relabelled frame of (X, X'), tropically and
    numerically, and both wedge sums must vanish.
    """
    import numpy as np

    from .semifield import random_assignment

    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    dual, perm = _transpose_pair(pair)
    P = pair.period
    witnesses = []
    trop = build_frame(pair, "tropical", u_min=-P, u_max=P)
    init = [None] * pair.n
    for p in range(pair.n):
        init[perm[p]] = TropMonomial.generator(pair.n, p).inverse()
    trop_d = build_frame(dual, "tropical", init, -P, P)
    for u in range(-P, P + 1):
        for p in range(pair.n):
            if trop_d[perm[p], u] != trop[p, u].inverse():
                witnesses.append({"kind": "tropical", "index": list(pair.indices[p]), "u": u})
    rng = np.random.default_rng(seed)
    for s in range(samples):
        a = random_assignment(pair.n, rng).values
        b = [0.0] * pair.n
        for p in range(pair.n):
            b[perm[p]] = 1.0 / a[p]
        f = build_frame(pair, "numeric", a, -P, P)
        g = build_frame(dual, "numeric", b, -P, P)
        for u in range(-P, P + 1):
            for p in range(pair.n):
                if not abs(g[perm[p], u] * f[p, u] - 1.0) < tol:
                    witnesses.append({"kind": "numeric", "sample": s, "index": list(pair.indices[p]), "u": u})
    w1 = wedge_vanishing(pair, max_rr=max_rr, validate=False)
    w2 = wedge_vanishing(dual, max_rr=max_rr, validate=False)
    if not (w1.passed and w2.passed):
        witnesses.append({"kind": "wedge", "pair": w1.passed, "dual": w2.passed})
    return Report(
        "duality",
        not witnesses,
        {"pair": str(pair), "dual": str(dual), "samples": samples, "seed": seed, "tol": tol},
        witnesses[:20],
    )
