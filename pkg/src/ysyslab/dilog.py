"""Rogers dilogarithm and the numeric dilogarithm identities of a Y-system."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NumericRangeError
from .report import Report
from .semifield import PosRealAssignment, monomial_sign, POSITIVE, random_assignment
from .cluster.frame import build_frame, domain_points
from .cluster.seed import SquareProduct, make_pair

PI2_6 = math.pi ** 2 / 6
IDENTITY_TOL = 1e-8
CONSTANCY_TOL = 1e-10
DOMAINS = ("S+", "S-", "H+", "H-")


def _li2_series(x: float) -> float:
    # converges quickly for 0 <= x <= 1/2: terms shrink at least like 2^-k/k^2
    total, power, k = 0.0, x, 1
    while True:
        term = power / (k * k)
        total += term
        if term < 1e-18 * max(total, 1e-300):
            return total
        k += 1
        power *= x


def rogers_L(x: float) -> float:
    """Rogers dilogarithm L(x) = Li2(x) + log(x) log(1-x) / 2 on [0, 1]."""
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise NumericRangeError(f"rogers_L is defined on [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x > 0.5:
        return PI2_6 - rogers_L(1.0 - x)
    return _li2_series(x) + 0.5 * math.log(x) * math.log1p(-x)


def L_of_ratio(y: float) -> float:
    """L(y / (1 + y)) for y > 0, accurate also when y is huge or tiny."""
    if y > 1.0:
        # y/(1+y) = 1 - 1/(1+y); reflect to keep the small argument exact
        return PI2_6 - rogers_L(1.0 / (1.0 + y))
    return rogers_L(y / (1.0 + y))


def verify_five_term(x: float, y: float, tol: float = 1e-12) -> Report:
    """L(x) + L(y) + L(1-xy) + L((1-x)/(1-xy)) + L((1-y)/(1-xy)) = pi^2/2."""
    if x * y == 1.0:
        # the two ratios always add up to 1 near (1, 1); their L-values then sum
        # to pi^2/6 whatever the path, so the symmetric limit 1/2 is used
        a = b = 0.5
    else:
        a = (1 - x) / (1 - x * y)
        b = (1 - y) / (1 - x * y)
    total = rogers_L(x) + rogers_L(y) + rogers_L(1 - x * y) + rogers_L(a) + rogers_L(b)
    err = abs(total - 3 * PI2_6)
    return Report("five_term", err < tol, {"x": x, "y": y, "error": err, "tol": tol})


# -- identities on a Y-system -----------------------------------------------------


def expected_value(pair: SquareProduct, domain: str) -> Fraction:
    rr = pair.r * pair.rp
    base = {"S+": pair.h * rr, "S-": pair.hp * rr, "H+": pair.h * rr, "H-": pair.hp * rr}[domain]
    return Fraction(base, 2) if domain[0] == "H" else Fraction(base)


def dilog_terms(pair: SquareProduct, frame, domain: str):
    """(position, u, L-value) for every point of ``domain`` in sorted (i, i', u) order."""
    return [(p, u, L_of_ratio(frame[p, u])) for p, u in domain_points(pair, domain)]


def dilog_sum(pair, assignment, domain: str = "S+", frame=None) -> float:
    """(6/pi^2) sum of L(y/(1+y)) over the domain, y from the numeric frame."""
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    if domain not in DOMAINS:
        raise ValueError(f"domain must be one of {DOMAINS}, got {domain!r}")
    if frame is None:
        frame = build_frame(pair, "numeric", assignment, 0, pair.period - 1)
    return math.fsum(v for _, _, v in dilog_terms(pair, frame, domain)) / PI2_6


@dataclass
class IdentityReport:
    pair: str
    domain: str
    expected: Fraction
    measured: list[float] = field(default_factory=list)
    tol: float = IDENTITY_TOL
    seed: int = 0

    @property
    def max_abs_error(self) -> float:
        return max((abs(m - float(self.expected)) for m in self.measured), default=0.0)

    @property
    def samples(self) -> int:
        return len(self.measured)

    @property
    def passed(self) -> bool:
        return bool(self.measured) and self.max_abs_error < self.tol

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_report(self) -> Report:
        bad = [
            {"sample": k, "measured": m}
            for k, m in enumerate(self.measured)
            if not abs(m - float(self.expected)) < self.tol
        ]
        return Report(
            f"identity {self.domain}",
            self.passed,
            {
                "pair": self.pair,
                "domain": self.domain,
                "expected": str(self.expected),
                "measured": self.measured,
                "max_abs_error": self.max_abs_error,
                "samples": self.samples,
                "seed": self.seed,
                "tol": self.tol,
                "status": self.status,
            },
            bad,
        )


def _sample_frames(pair: SquareProduct, n_samples: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(n_samples):
        a = random_assignment(pair.n, rng)
        yield a, build_frame(pair, "numeric", a, 0, pair.period - 1)


def verify_identities(pair, n_samples: int = 5, tol: float = IDENTITY_TOL, seed: int = 0):
    """Check the S+, S-, H+, H- sums on random assignments.

    Returns ``(reports, complement)``: one IdentityReport per domain and a
    Report for S+ + S- = (h+h') r r', which pairs each S+ term with its
    S- partner through y(u) = y(u+1)^{-1} and L(x) + L(1-x) = pi^2/6.
    """
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    reports = {d: IdentityReport(str(pair), d, expected_value(pair, d), tol=tol, seed=seed) for d in DOMAINS}
    total = pair.half_period * pair.r * pair.rp
    complement = []
    for k, (_, frame) in enumerate(_sample_frames(pair, n_samples, seed)):
        for d in DOMAINS:
            reports[d].measured.append(dilog_sum(pair, None, d, frame=frame))
        s = reports["S+"].measured[-1] + reports["S-"].measured[-1]
        if not abs(s - total) < tol:
            complement.append({"sample": k, "sum": s})
    comp = Report(
        "identity S+ + S-",
        not complement,
        {"pair": str(pair), "expected": total, "seed": seed, "tol": tol},
        complement,
    )
    return [reports[d] for d in DOMAINS], comp


def verify_constancy(pair, n_samples: int = 10, seed: int = 0, tol: float = CONSTANCY_TOL,
                     extra_assignments=()) -> Report:
    """The S+ sum does not depend on the assignment: sample range below ``tol``."""
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    if n_samples < 2:
        raise ValueError("constancy needs at least two samples")
    rng = np.random.default_rng(seed)
    assignments = [random_assignment(pair.n, rng) for _ in range(n_samples)]
    assignments += [a if isinstance(a, PosRealAssignment) else PosRealAssignment(tuple(a))
                    for a in extra_assignments]
    values = [dilog_sum(pair, a, "S+") for a in assignments]
    lo, hi = int(np.argmin(values)), int(np.argmax(values))
    spread = values[hi] - values[lo]
    witnesses = [] if spread < tol else [
        {"min": values[lo], "min_assignment": list(assignments[lo].values),
         "max": values[hi], "max_assignment": list(assignments[hi].values)}
    ]
    return Report(
        "constancy",
        spread < tol,
        {"pair": str(pair), "samples": len(values), "range": spread, "seed": seed, "tol": tol},
        witnesses,
    )


def zero_infinity_limit(pair, t_sequence=(0.1, 0.01, 0.001), tol: float = 1e-3) -> Report:
    """phi_t(y) = t for all generators and t -> 0.

    Each S+ term has argument x = y/(1+y).  A term with a positive tropical
    monomial must have x decrease towards 0, a negative one must have x
    increase towards 1; the distance to the limit is tracked as y/(1+y) or
    1/(1+y) so that it never rounds to zero.  The report passes when every
    term follows its trend and the final sum is within tol * N- of
    N- = h r r'.  The per-term distance at the last t is reported next to
    ``tol`` as ``deviation_ok`` and listed in ``over_tol``.
    """
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    ts = [float(t) for t in t_sequence]
    if any(not (0 < t < 1) for t in ts) or any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_sequence must decrease inside (0, 1)")
    trop = build_frame(pair, "tropical", u_min=0, u_max=pair.period - 1)
    frames = [build_frame(pair, "numeric", (t,) * pair.n, 0, pair.period - 1) for t in ts]
    witnesses, over = [], []
    worst = 0.0
    for p, u in domain_points(pair, "S+"):
        positive = monomial_sign(trop[p, u]) == POSITIVE
        ys = [f[p, u] for f in frames]
        dist = [y / (1.0 + y) if positive else 1.0 / (1.0 + y) for y in ys]
        entry = {"index": list(pair.indices[p]), "u": u,
                 "sign": "positive" if positive else "negative", "distance": dist}
        if not all(b < a for a, b in zip(dist, dist[1:])):
            witnesses.append(dict(entry, kind="trend"))
        worst = max(worst, dist[-1])
        if not dist[-1] < tol:
            over.append(entry)
    n_minus = pair.h * pair.r * pair.rp
    final = dilog_sum(pair, None, "S+", frame=frames[-1])
    if not abs(final - n_minus) < tol * n_minus:
        witnesses.append({"kind": "sum", "value": final, "expected": n_minus})
    return Report(
        "zero_infinity_limit",
        not witnesses,
        {"pair": str(pair), "t_sequence": ts, "final_sum": final, "N_minus": n_minus,
         "max_deviation": worst, "deviation_ok": not over, "over_tol": over[:20], "tol": tol},
        witnesses[:20],
    )
