"""Sign analysis of the tropical Y-system.

Every tropical value on S+ is a positive or a negative monomial, with
N+ = h' r r' positive and N- = h r r' negative ones over one period.  The
positive region 0 <= u <= h'-1 and the negative region -h <= u <= -1 are
cross-checked against d-vectors of the two root systems.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dynkin import DynkinDiagram, d_vector
from .errors import FalsificationError, ParityError
from .report import Report
from .semifield import MIXED, NEGATIVE, POSITIVE, ZERO, monomial_sign
from .cluster.frame import build_frame, domain_points
from .cluster.seed import SquareProduct, make_pair, parity


@dataclass
class SignTable:
    pair: SquareProduct
    signs: dict[tuple[int, int], str] = field(repr=False)
    N_plus: int
    N_minus: int

    @property
    def window(self) -> tuple[int, int]:
        return (0, self.pair.period - 1)

    @property
    def expected(self) -> tuple[int, int]:
        P = self.pair
        return (P.hp * P.r * P.rp, P.h * P.r * P.rp)

    def to_report(self) -> Report:
        exp_plus, exp_minus = self.expected
        witnesses = [] if (self.N_plus, self.N_minus) == self.expected else [
            {"kind": "count", "N_plus": self.N_plus, "N_minus": self.N_minus}
        ]
        return Report(
            "tropical_counts",
            not witnesses,
            {
                "pair": str(self.pair),
                "N_plus": self.N_plus,
                "N_minus": self.N_minus,
                "expected_plus": exp_plus,
                "expected_minus": exp_minus,
            },
            witnesses,
        )


def sign_counts(pair) -> SignTable:
    """Classify [y(u)]_T over S+ in the window [0, 2(h+h')-1]."""
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    frame = build_frame(pair, "tropical", u_min=0, u_max=pair.period - 1)
    signs = {}
    for p, u in domain_points(pair, "S+"):
        s = monomial_sign(frame[p, u])
        if s in (MIXED, ZERO):
            raise FalsificationError(
                f"{pair}: [y{pair.indices[p]}({u})]_T = {frame[p, u].exponents} is a {s} monomial"
            )
        signs[(p, u)] = s
    n_plus = sum(s == POSITIVE for s in signs.values())
    return SignTable(pair, signs, n_plus, len(signs) - n_plus)


def verify_sign_regions(pair) -> Report:
    """Positive monomials on 0 <= u <= h'-1 and negative ones on -h <= u <= -1, at P+ points."""
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    h, hp = pair.h, pair.hp
    frame = build_frame(pair, "tropical", u_min=-h, u_max=hp - 1)
    witnesses = []
    for u in range(-h, hp):
        want = POSITIVE if u >= 0 else NEGATIVE
        for p in range(pair.n):
            if parity(pair.eps, p, u) > 0:
                got = monomial_sign(frame[p, u])
                if got != want:
                    witnesses.append({"index": list(pair.indices[p]), "u": u, "expected": want, "got": got})
    return Report("sign_regions", not witnesses, {"pair": str(pair), "u_range": [-h, hp - 1]}, witnesses[:20])


def _dvec(diagram: DynkinDiagram, i: int, u: int):
    try:
        return d_vector(diagram, i, u)
    except ParityError:
        return None


def expected_exponents(pair: SquareProduct, p: int, u: int):
    """Exponents of [y_p(u)]_T predicted by the d-vector formulas, or None off the regions.

    Returns ``(exponents, rule)``; ``exponents`` is None when the needed
    d-vector is undefined for the parity at hand.
    """
    X, Xp = pair.X, pair.Xp
    i, ip = pair.indices[p]
    n = pair.n
    plus_point = parity(pair.eps, p, u) > 0
    if 0 <= u <= pair.hp - 1:
        if not plus_point:
            return None
        diag = Xp if i in X.I_plus else Xp.swapped()
        rule = "positive/d" if i in X.I_plus else "positive/d~"
        d = _dvec(diag, Xp.omega_of(ip), pair.hp - u)
        if d is None:
            return None, rule
        exps = [0] * n
        for kp, c in zip(Xp.nodes, d):
            exps[pair.position[(i, kp)]] = c
        return tuple(exps), rule
    if -pair.h <= u <= -1:
        diag = X if ip in Xp.I_minus else X.swapped()
        tilde = "d" if ip in Xp.I_minus else "d~"
        if plus_point:
            d, sgn, rule = _dvec(diag, X.omega_of(i), pair.h + u + 1), -1, f"negative/P+/{tilde}"
        else:
            d, sgn, rule = _dvec(diag, X.omega_of(i), pair.h + u), 1, f"negative/P-/{tilde}"
        if d is None:
            return None, rule
        exps = [0] * n
        for k, c in zip(X.nodes, d):
            exps[pair.position[(k, ip)]] = sgn * c
        return tuple(exps), rule
    return None


def verify_dvector_factorization(pair) -> Report:
    """Compare the tropical frame with the d-vector formulas on both regions.

    Mismatches, including parity or boundary mismatches where a d-vector is
    undefined, are reported as witnesses and never adjusted.
    """
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    frame = build_frame(pair, "tropical", u_min=-pair.h, u_max=pair.hp - 1)
    witnesses = []
    checked = 0
    for u in range(-pair.h, pair.hp):
        for p in range(pair.n):
            pred = expected_exponents(pair, p, u)
            if pred is None:
                continue
            exps, rule = pred
            checked += 1
            got = frame[p, u].exponents
            if exps != got:
                witnesses.append({
                    "index": list(pair.indices[p]),
                    "u": u,
                    "rule": rule,
                    "expected": None if exps is None else list(exps),
                    "tropical": list(got),
                })
    return Report(
        "dvector_factorization",
        not witnesses,
        {"pair": str(pair), "checked": checked},
        witnesses[:20],
    )
