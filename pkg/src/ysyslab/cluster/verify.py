"""Periodicity, Y-system, F-polynomial and cross-backend checks on frames."""
from __future__ import annotations

import numpy as np

from ..report import Report
from ..semifield import RealBackend, make_backend, random_assignment
from .fpoly import FPolyFamily, f_polynomials
from .frame import CoefficientFrame, build_frame
from .seed import SquareProduct, make_pair, parity

NUMERIC_REL_TOL = 1e-9


def _rel_err(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def _compare_frames(frame: CoefficientFrame, tol: float):
    """Yield witnesses for full and half periodicity violations in ``frame``.

    The frame must span [-P, P]; full periodicity is tested for u in [-P, 0]
    and half periodicity for u in [-P, P - H], both at least one period.
    """
    pair = frame.pair
    P, H = pair.period, pair.half_period
    numeric = frame.backend == "numeric"
    be = make_backend(frame.backend, pair.n)

    def same(a, b):
        return _rel_err(a, b) < tol if numeric else be.equal(a, b)

    for u in range(-P, 1):
        for p in range(pair.n):
            if not same(frame[p, u + P], frame[p, u]):
                yield {"kind": "full", "index": pair.indices[p], "u": u}
    for u in range(-P, P - H + 1):
        for p in range(pair.n):
            if not same(frame[p, u + H], frame[pair.omega[p], u]):
                yield {"kind": "half", "index": pair.indices[p], "u": u}


def verify_periodicity(pair, backend: str = "tropical", trials: int = 5, seed: int = 0,
                       tol: float = NUMERIC_REL_TOL, max_rr: int | None = None) -> Report:
    """Full period 2(h+h') and half period h+h' twisted by (omega, omega')."""
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    P = pair.period
    witnesses = []
    if backend == "numeric":
        rng = np.random.default_rng(seed)
        for t in range(trials):
            a = random_assignment(pair.n, rng)
            frame = build_frame(pair, "numeric", a, -P, P)
            for w in _compare_frames(frame, tol):
                witnesses.append(dict(w, trial=t))
    else:
        frame = build_frame(pair, backend, None, -P, P, max_rr=max_rr)
        witnesses.extend(_compare_frames(frame, tol))
    return Report(
        f"periodicity {backend}",
        not witnesses,
        {
            "pair": str(pair),
            "backend": backend,
            "period": P,
            "half_period": pair.half_period,
            "trials": trials if backend == "numeric" else 1,
            "seed": seed,
            "tol": tol if backend == "numeric" else 0,
        },
        witnesses[:20],
    )


def y_system_residuals(frame: CoefficientFrame):
    """Evaluate the Y-system at every interior (p, u) of ``frame``.

    At a P_- point the relation is read with Y = y on the P_+ family, at a
    P_+ point with Y = y^{-1} on the P_- family.  Yields (p, u, lhs, rhs).
    """
    pair = frame.pair
    be = make_backend(frame.backend, pair.n)
    for u in range(frame.u_min + 1, frame.u_max):
        for p in range(pair.n):
            if parity(pair.eps, p, u) < 0:
                Y = lambda q, v: frame[q, v]  # noqa: E731
            else:
                Y = lambda q, v: be.inv(frame[q, v])  # noqa: E731
            lhs = be.mul(Y(p, u - 1), Y(p, u + 1))
            rhs = be.one()
            for j in pair.neighbors_M(p):
                rhs = be.mul(rhs, be.one_plus(Y(j, u)))
            for j in pair.neighbors_Mp(p):
                rhs = be.mul(rhs, be.inv(be.one_plus(be.inv(Y(j, u)))))
            yield p, u, lhs, rhs


def verify_y_system(frame: CoefficientFrame, tol: float = NUMERIC_REL_TOL) -> Report:
    witnesses = []
    worst = 0.0
    numeric = frame.backend == "numeric"
    be = make_backend(frame.backend, frame.pair.n)
    count = 0
    for p, u, lhs, rhs in y_system_residuals(frame):
        count += 1
        if numeric:
            res = abs(lhs / rhs - 1.0)
            worst = max(worst, res)
            bad = res >= tol
        else:
            bad = not be.equal(lhs, rhs)
        if bad:
            witnesses.append({"index": frame.pair.indices[p], "u": u})
    data = {"pair": str(frame.pair), "backend": frame.backend, "relations": count}
    if numeric:
        data.update(max_residual=worst, tol=tol)
    return Report("y_system", not witnesses, data, witnesses[:20])


def verify_f_polynomials(pair, max_rr: int | None = None, family: FPolyFamily | None = None) -> Report:
    """Constant term 1, nonnegativity, F(u) = F(u-1) at P_+ points, period 2(h+h').

    Exact divisibility of the recurrence is enforced while the family is built.
    """
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    P = pair.period
    fam = family or f_polynomials(pair, -P, P, max_rr=max_rr)
    witnesses = []
    for (p, u), F in sorted(fam.polys.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if F.constant_term != 1 or not F.is_nonnegative():
            witnesses.append({"kind": "constant_term", "index": pair.indices[p], "u": u})
        if parity(pair.eps, p, u) > 0 and (p, u - 1) in fam.polys and fam.F(p, u - 1) != F:
            witnesses.append({"kind": "parity", "index": pair.indices[p], "u": u})
        if u + P <= fam.u_max and fam.F(p, u + P) != F:
            witnesses.append({"kind": "period", "index": pair.indices[p], "u": u})
    return Report(
        "f_polynomials",
        not witnesses,
        {"pair": str(pair), "u_range": [fam.u_min, fam.u_max], "distinct": len(fam.atom_polys)},
        witnesses[:20],
    )


def verify_cross_backend(pair, max_rr: int | None = None) -> Report:
    """Tropical projection of the symbolic frame equals the tropical frame."""
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    P = pair.period
    sym = build_frame(pair, "rational", None, -P, P, max_rr=max_rr)
    trop = build_frame(pair, "tropical", None, -P, P)
    witnesses = [
        {"index": pair.indices[p], "u": u, "symbolic": list(sym[p, u].tropical().exponents),
         "tropical": list(trop[p, u].exponents)}
        for u in range(-P, P + 1)
        for p in range(pair.n)
        if sym[p, u].tropical() != trop[p, u]
    ]
    return Report("cross_backend", not witnesses, {"pair": str(pair), "u_range": [-P, P]}, witnesses[:20])


def numeric_frame(pair: SquareProduct, assignment, u_min: int, u_max: int) -> CoefficientFrame:
    return build_frame(pair, RealBackend(pair.n), assignment, u_min, u_max)
