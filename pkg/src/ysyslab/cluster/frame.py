"""Coefficient frames y(u) along the alternating mu_+/mu_- mutation sequence."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..errors import BudgetExceeded, InvariantViolation, YsysError
from ..semifield import (
    NEGATIVE,
    POSITIVE,
    PosRealAssignment,
    RationalBackend,
    RealBackend,
    TropicalBackend,
    TropMonomial,
    make_backend,
    monomial_sign,
)
from .seed import SquareProduct, make_pair, mutate_coefficients, parity

DEFAULT_BUDGET_RR = 6


def budget_rr() -> int:
    """Symbolic budget on r*r', overridable through YSYSLAB_BUDGET_RR."""
    env = os.environ.get("YSYSLAB_BUDGET_RR")
    return int(env) if env else DEFAULT_BUDGET_RR


def check_symbolic_budget(pair: SquareProduct, u_min: int, u_max: int, max_rr: int | None = None) -> None:
    limit = budget_rr() if max_rr is None else max_rr
    if pair.r * pair.rp > limit:
        raise BudgetExceeded(
            f"symbolic computation for {pair} needs r*r' = {pair.r * pair.rp} > budget {limit}; "
            "raise it with --budget-rr or YSYSLAB_BUDGET_RR"
        )
    if max(abs(u_min), abs(u_max)) > pair.period:
        raise BudgetExceeded(
            f"symbolic u-range [{u_min}, {u_max}] exceeds one period ({pair.period}) of {pair}; "
            "raise it with --budget-rr or YSYSLAB_BUDGET_RR"
        )


class FrameError(YsysError):
    """Backend failure while building a frame, tagged with the offending slot."""

    def __init__(self, message, index=None, u=None):
        super().__init__(message)
        self.index = index
        self.u = u


@dataclass
class CoefficientFrame:
    pair: SquareProduct
    backend: str
    u_min: int
    u_max: int
    slices: dict[int, tuple] = field(repr=False)
    matrix_sign: dict[int, int] = field(repr=False)

    def __contains__(self, u: int) -> bool:
        return self.u_min <= u <= self.u_max

    def __getitem__(self, key):
        """``frame[p, u]`` with ``p`` a position or an ``(i, i')`` index."""
        p, u = key
        if isinstance(p, tuple):
            p = self.pair.position[p]
        return self.slices[u][p]

    def slice(self, u: int) -> tuple:
        return self.slices[u]

    def u_range(self) -> range:
        return range(self.u_min, self.u_max + 1)

    def to_dict(self) -> dict:
        entries = []
        for u in self.u_range():
            for p, (i, ip) in enumerate(self.pair.indices):
                entries.append({"i": i, "i_prime": ip, "u": u, "value": _export(self.slices[u][p], self.pair)})
        return {
            "pair": str(self.pair),
            "backend": self.backend,
            "u_range": [self.u_min, self.u_max],
            "entries": entries,
        }


def _export(v, pair):
    if isinstance(v, TropMonomial):
        return {pair.labels[k]: e for k, e in v.sparse().items()}
    if isinstance(v, float):
        return v
    return repr(v)


def _step(pair: SquareProduct, y: tuple, u_from: int, u_to: int, backend, check_frozen: bool) -> tuple:
    """Move one step along the sequence; the same mu serves both directions."""
    lower = min(u_from, u_to)
    part = pair.part_plus if lower % 2 == 0 else pair.part_minus
    B = pair.B if u_from % 2 == 0 else -pair.B
    for k in part:
        new = mutate_coefficients(B, y, k, backend)
        if check_frozen:
            _check_frozen_positions(B, y, new, k)
        y = new
        # vertices of one part are pairwise disconnected, so B is unchanged by
        # the other mutations of this step
    return y


def _check_frozen_positions(B, old, new, k):
    sign = monomial_sign(old[k])
    for i in range(len(old)):
        if i == k:
            continue
        b = B[k, i]
        frozen = b == 0 or (b > 0 and sign == NEGATIVE) or (b < 0 and sign == POSITIVE)
        if frozen and new[i] != old[i]:
            raise InvariantViolation(f"tropical value at position {i} changed under a frozen mutation at {k}")


def build_frame(pair, backend="tropical", initial=None, u_min: int = 0, u_max: int = 0,
                check_frozen: bool | None = None, max_rr: int | None = None) -> CoefficientFrame:
    """Compute y(u) for u_min <= u <= u_max.

    ``initial`` is required for the numeric backend (a PosRealAssignment or a
    sequence of positive floats in index order); the exact backends start
    from the generators.
    """
    if not isinstance(pair, SquareProduct):
        pair = make_pair(pair)
    if not u_min <= 0 <= u_max:
        raise ValueError(f"u-range [{u_min}, {u_max}] must contain 0")
    be = backend if not isinstance(backend, str) else make_backend(backend, pair.n)
    if isinstance(be, RationalBackend):
        check_symbolic_budget(pair, u_min, u_max, max_rr)
    if isinstance(be, RealBackend):
        if initial is None:
            raise ValueError("the numeric backend needs an initial assignment")
        if not isinstance(initial, PosRealAssignment):
            initial = PosRealAssignment(tuple(initial))
        y0 = initial.values
        if len(y0) != pair.n:
            raise ValueError(f"assignment has {len(y0)} values, pair {pair} has {pair.n} generators")
    elif initial is not None:
        y0 = tuple(initial)
    else:
        y0 = tuple(be.generator(k) for k in range(pair.n))
    if check_frozen is None:
        check_frozen = isinstance(be, TropicalBackend)

    slices = {0: tuple(y0)}
    for direction, stop in ((1, u_max), (-1, u_min)):
        y = slices[0]
        u = 0
        while u != stop:
            try:
                y = _step(pair, y, u, u + direction, be, check_frozen)
            except YsysError as exc:
                raise FrameError(f"{pair}: step {u} -> {u + direction} failed: {exc}", u=u + direction) from exc
            u += direction
            slices[u] = y
    signs = {u: (1 if u % 2 == 0 else -1) for u in slices}
    return CoefficientFrame(pair, be.name, u_min, u_max, slices, signs)


def p_plus_points(pair: SquareProduct, u_lo: int, u_hi: int):
    """All (p, u) with u_lo <= u <= u_hi satisfying P_+ (sorted by index, then u)."""
    return [
        (p, u)
        for p in range(pair.n)
        for u in range(u_lo, u_hi + 1)
        if parity(pair.eps, p, u) > 0
    ]


def domain_points(pair: SquareProduct, domain: str):
    """The summation domains S+, S-, H+, H- as sorted (position, u) lists."""
    length = pair.period if domain[0] == "S" else pair.half_period
    want = 1 if domain[1] == "+" else -1
    return [
        (p, u)
        for p in range(pair.n)
        for u in range(length)
        if parity(pair.eps, p, u) == want
    ]
