"""Simply laced Dynkin diagrams, their root systems and the maps tau_+/tau_-.

Nodes are labelled ``1..r`` following Bourbaki.  The bipartition puts a
node in ``I_plus`` when its graph distance from node 1 is even.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import cached_property, lru_cache

import numpy as np

from .errors import DiagramError, InvariantViolation, ParityError, RootError

_SPEC_RE = re.compile(r"^\s*([ADEade])\s*(\d+)\s*$")


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        chain = [(i, i + 1) for i in range(1, rank - 2)]
        return chain + [(rank - 2, rank - 1), (rank - 2, rank)]
    # E_r: 1-3-4-5-...-r with 2 attached to 4
    return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, rank)]


def _validate(family: str, rank: int) -> None:
    ok = (
        (family == "A" and rank >= 1)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
    )
    if not ok:
        raise DiagramError(f"no simply laced Dynkin diagram of type {family}{rank}")


def _automorphism(family: str, rank: int) -> tuple[int, ...]:
    """The involution omega used for half periodicity (identity when trivial)."""
    perm = list(range(1, rank + 1))
    if family == "A" and rank >= 2:
        perm = [rank + 1 - i for i in range(1, rank + 1)]
    elif family == "D" and rank % 2 == 1:
        perm[rank - 2], perm[rank - 1] = rank, rank - 1
    elif family == "E" and rank == 6:
        perm = [6, 2, 5, 4, 3, 1]
    return tuple(perm)


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int
    adjacency: tuple[tuple[int, ...], ...]
    I_plus: tuple[int, ...]
    I_minus: tuple[int, ...]
    coxeter_number: int
    omega: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    @property
    def h(self) -> int:
        return self.coxeter_number

    @property
    def dim_g(self) -> int:
        return self.rank * (self.coxeter_number + 1)

    @cached_property
    def cartan(self) -> np.ndarray:
        return 2 * np.eye(self.rank, dtype=np.int64) - np.array(self.adjacency, dtype=np.int64)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i - 1][j - 1])

    def neighbors(self, i: int) -> list[int]:
        return [j for j in self.nodes if self.adjacency[i - 1][j - 1]]

    def sign(self, i: int) -> int:
        """+1 if ``i`` lies in I_plus, -1 otherwise."""
        return 1 if i in self.I_plus else -1

    def omega_of(self, i: int) -> int:
        return self.omega[i - 1]

    def swapped(self) -> "DynkinDiagram":
        """The same diagram with the two parts of the bipartition exchanged."""
        return replace(self, I_plus=self.I_minus, I_minus=self.I_plus)

    @property
    def omega_swaps_parts(self) -> bool:
        """True when omega maps I_plus onto I_minus (a computed fact)."""
        return all(self.omega_of(i) in self.I_minus for i in self.I_plus)

    # -- Weyl group and roots -------------------------------------------------

    def reflect(self, i: int, alpha) -> tuple[int, ...]:
        """Simple reflection s_i in the simple-root basis."""
        a = list(alpha)
        pairing = sum(a[k] * int(self.cartan[k, i - 1]) for k in range(self.rank))
        a[i - 1] -= pairing
        return tuple(a)

    def t(self, sign: int, alpha) -> tuple[int, ...]:
        """Product of the (mutually commuting) simple reflections over I_sign."""
        part = self.I_plus if sign > 0 else self.I_minus
        a = tuple(alpha)
        for i in part:
            a = self.reflect(i, a)
        return a

    @cached_property
    def roots(self) -> frozenset:
        """All roots, by closure of the simple roots under simple reflections."""
        simple = [tuple(int(k == i) for k in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for a in frontier:
                for i in self.nodes:
                    b = self.reflect(i, a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        pos = [a for a in self.roots if all(c >= 0 for c in a)]
        return tuple(sorted(pos, key=lambda a: (sum(a), a)))

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(int(k == i - 1) for k in range(self.rank))

    def in_phi_ge_minus_one(self, alpha) -> bool:
        a = tuple(alpha)
        if a in self.positive_roots:
            return True
        return any(a == tuple(-c for c in self.simple_root(i)) for i in self.nodes)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "h": self.coxeter_number,
            "I_plus": list(self.I_plus),
            "I_minus": list(self.I_minus),
            "omega": list(self.omega),
        }


def _coxeter_order(rank: int, adjacency, I_plus, I_minus) -> int:
    """Order of c = t_+ t_- acting linearly on the root lattice."""
    C = 2 * np.eye(rank, dtype=np.int64) - np.array(adjacency, dtype=np.int64)

    def refl_matrix(i):
        S = np.eye(rank, dtype=np.int64)
        S[i - 1, :] -= C[:, i - 1]
        return S

    t_plus = np.eye(rank, dtype=np.int64)
    for i in I_plus:
        t_plus = refl_matrix(i) @ t_plus
    t_minus = np.eye(rank, dtype=np.int64)
    for i in I_minus:
        t_minus = refl_matrix(i) @ t_minus
    c = t_plus @ t_minus
    ident = np.eye(rank, dtype=np.int64)
    power = c.copy()
    for n in range(1, 1000):
        if np.array_equal(power, ident):
            return n
        power = power @ c
    raise InvariantViolation("Coxeter element has no finite order")


@lru_cache(maxsize=None)
def build_diagram(family: str, rank: int) -> DynkinDiagram:
    family = str(family).upper()
    rank = int(rank)
    _validate(family, rank)
    adj = [[0] * rank for _ in range(rank)]
    for a, b in _edges(family, rank):
        adj[a - 1][b - 1] = adj[b - 1][a - 1] = 1

    # bipartition by BFS distance from node 1
    dist = {1: 0}
    queue = [1]
    while queue:
        a = queue.pop(0)
        for b in range(1, rank + 1):
            if adj[a - 1][b - 1] and b not in dist:
                dist[b] = dist[a] + 1
                queue.append(b)
    I_plus = tuple(i for i in range(1, rank + 1) if dist[i] % 2 == 0)
    I_minus = tuple(i for i in range(1, rank + 1) if dist[i] % 2 == 1)

    adjacency = tuple(tuple(row) for row in adj)
    h = _coxeter_order(rank, adjacency, I_plus, I_minus)
    diagram = DynkinDiagram(
        family=family,
        rank=rank,
        adjacency=adjacency,
        I_plus=I_plus,
        I_minus=I_minus,
        coxeter_number=h,
        omega=_automorphism(family, rank),
    )
    if 2 * len(diagram.positive_roots) != rank * h:
        raise InvariantViolation(
            f"{diagram}: |Phi+| = {len(diagram.positive_roots)} disagrees with rh/2 = {rank * h / 2}"
        )
    return diagram


def parse_diagram(spec: str) -> DynkinDiagram:
    """Parse ``"A3"``, ``"d5"``, ``"E8"`` into a diagram."""
    m = _SPEC_RE.match(str(spec))
    if not m:
        raise DiagramError(f"cannot parse Dynkin diagram spec {spec!r}")
    return build_diagram(m.group(1).upper(), int(m.group(2)))


def coxeter_number(diagram: DynkinDiagram) -> int:
    return _coxeter_order(diagram.rank, diagram.adjacency, diagram.I_plus, diagram.I_minus)


def _sign(eps) -> int:
    if eps in (1, "+"):
        return 1
    if eps in (-1, "-", "−"):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {eps!r}")


def tau(diagram: DynkinDiagram, eps, alpha) -> tuple[int, ...]:
    """Piecewise-linear analogue of t_eps on positive roots and negative simple roots."""
    s = _sign(eps)
    a = tuple(int(c) for c in alpha)
    if len(a) != diagram.rank or not diagram.in_phi_ge_minus_one(a):
        raise RootError(f"{a} is not a positive root or negative simple root of {diagram}")
    fixed_part = diagram.I_minus if s > 0 else diagram.I_plus
    for i in fixed_part:
        if a == tuple(-c for c in diagram.simple_root(i)):
            return a
    return diagram.t(s, a)


def d_vector(diagram: DynkinDiagram, i: int, u: int) -> tuple[int, ...]:
    """Denominator vector d(i, u): defined for i in I_plus with u even, i in I_minus with u odd."""
    if u < 0:
        raise ParityError(f"d-vector needs u >= 0, got {u}")
    neg = tuple(-c for c in diagram.simple_root(i))
    if i in diagram.I_plus and u % 2 == 0:
        a, steps = neg, u // 2
    elif i in diagram.I_minus and u % 2 == 1:
        a, steps = tau(diagram, -1, neg), (u - 1) // 2
    else:
        raise ParityError(f"d({i}, {u}) undefined: node parity does not match u in {diagram}")
    for _ in range(steps):
        a = tau(diagram, -1, tau(diagram, 1, a))
    return a
