"""Exchange matrices, the square product B(X, X') and seed mutation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from ..dynkin import DynkinDiagram, parse_diagram
from ..errors import DiagramError


@dataclass(frozen=True, eq=False)
class ExchangeMatrix:
    """Skew-symmetric integer matrix over an ordered index set.

    ``part_map[p]`` is +1 if index ``p`` is in the first part of the
    bipartition, -1 otherwise.
    """

    entries: np.ndarray
    part_map: tuple[int, ...]

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def __getitem__(self, key):
        return int(self.entries[key])

    def __eq__(self, other):
        if isinstance(other, ExchangeMatrix):
            return np.array_equal(self.entries, other.entries)
        return np.array_equal(self.entries, np.asarray(other))

    def __neg__(self) -> "ExchangeMatrix":
        return ExchangeMatrix(-self.entries, self.part_map)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def is_skew_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, -self.entries.T))

    def is_bipartite(self) -> bool:
        n = self.size
        return all(
            self.entries[a, b] == 0 or self.part_map[a] != self.part_map[b]
            for a in range(n)
            for b in range(n)
        )


def mutate_matrix(B, k: int):
    """Matrix mutation at index position ``k``."""
    arr = B.entries if isinstance(B, ExchangeMatrix) else np.asarray(B, dtype=np.int64)
    col = arr[:, k]
    row = arr[k, :]
    out = arr + (np.abs(col)[:, None] * row[None, :] + col[:, None] * np.abs(row)[None, :]) // 2
    out[k, :] = -arr[k, :]
    out[:, k] = -arr[:, k]
    if isinstance(B, ExchangeMatrix):
        return ExchangeMatrix(out, B.part_map)
    return out


def mutate_coefficients(B, y, k: int, backend) -> tuple:
    """Coefficient exchange relation at position ``k`` in the given semifield."""
    arr = B.entries if isinstance(B, ExchangeMatrix) else np.asarray(B)
    yk = y[k]
    out = list(y)
    one_plus = backend.one_plus(yk)
    ratio = None
    for i in range(len(y)):
        if i == k:
            out[i] = backend.inv(yk)
            continue
        b = int(arr[k, i])
        if b > 0:
            if ratio is None:
                ratio = backend.mul(yk, backend.inv(one_plus))
            out[i] = backend.mul(y[i], backend.power(ratio, b))
        elif b < 0:
            out[i] = backend.mul(y[i], backend.power(one_plus, -b))
    return tuple(out)


def mutate_cluster(B, x, y, k: int, backend) -> tuple:
    """Cluster exchange relation at ``k``.

    ``x`` entries only need ``*``, ``/``, ``+`` and integer powers, so floats,
    Fractions and sympy expressions all work; ``y[k]`` must multiply with them.
    """
    arr = B.entries if isinstance(B, ExchangeMatrix) else np.asarray(B)
    up = 1
    down = 1
    for j in range(len(x)):
        b = int(arr[j, k])
        if b > 0:
            up = up * x[j] ** b
        elif b < 0:
            down = down * x[j] ** (-b)
    out = list(x)
    out[k] = (y[k] * up + down) / (backend.one_plus(y[k]) * x[k])
    return tuple(out)


def mutate_sequence(B, y, ks, backend):
    """Mutate at each position of ``ks`` in order; returns (B', y')."""
    for k in ks:
        y = mutate_coefficients(B, y, k, backend)
        B = mutate_matrix(B, k)
    return B, y


@dataclass(frozen=True, eq=False)
class SquareProduct:
    """The pair (X, X') with the index set I x I' in lexicographic order."""

    X: DynkinDiagram
    Xp: DynkinDiagram

    def __str__(self) -> str:
        return f"{self.X}x{self.Xp}"

    @cached_property
    def indices(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, ip) for i in self.X.nodes for ip in self.Xp.nodes)

    @cached_property
    def position(self) -> dict[tuple[int, int], int]:
        return {idx: p for p, idx in enumerate(self.indices)}

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def r(self) -> int:
        return self.X.rank

    @property
    def rp(self) -> int:
        return self.Xp.rank

    @property
    def h(self) -> int:
        return self.X.coxeter_number

    @property
    def hp(self) -> int:
        return self.Xp.coxeter_number

    @property
    def half_period(self) -> int:
        return self.h + self.hp

    @property
    def period(self) -> int:
        return 2 * (self.h + self.hp)

    @cached_property
    def eps(self) -> tuple[int, ...]:
        """+1 on I_plus x I'_plus and I_minus x I'_minus, -1 elsewhere."""
        return tuple(self.X.sign(i) * self.Xp.sign(ip) for i, ip in self.indices)

    @cached_property
    def part_plus(self) -> tuple[int, ...]:
        return tuple(p for p, e in enumerate(self.eps) if e > 0)

    @cached_property
    def part_minus(self) -> tuple[int, ...]:
        return tuple(p for p, e in enumerate(self.eps) if e < 0)

    @cached_property
    def B(self) -> ExchangeMatrix:
        return square_product(self.X, self.Xp)

    @cached_property
    def omega(self) -> tuple[int, ...]:
        """Position permutation p -> position of (omega(i), omega'(i'))."""
        return tuple(
            self.position[(self.X.omega_of(i), self.Xp.omega_of(ip))] for i, ip in self.indices
        )

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"y_({i},{ip})" for i, ip in self.indices)

    @cached_property
    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        return incidence_matrices(self)

    def neighbors_M(self, p: int) -> list[int]:
        """Positions j with M_{j p} = 1 (neighbours in X, same i')."""
        i, ip = self.indices[p]
        return [self.position[(j, ip)] for j in self.X.neighbors(i)]

    def neighbors_Mp(self, p: int) -> list[int]:
        """Positions j with M'_{j p} = 1 (same i, neighbours in X')."""
        i, ip = self.indices[p]
        return [self.position[(i, jp)] for jp in self.Xp.neighbors(ip)]

    def parity(self, p: int, u: int) -> int:
        return parity(self.eps, p, u)

    def to_dict(self) -> dict:
        return {"X": self.X.to_dict(), "X_prime": self.Xp.to_dict(), "name": str(self)}


def parity(eps, p: int, u: int) -> int:
    """+1 when (p, u) satisfies P_+ (eps(p) * (-1)^u = +), else -1."""
    return eps[p] * (1 if u % 2 == 0 else -1)


def square_product(X: DynkinDiagram, Xp: DynkinDiagram) -> ExchangeMatrix:
    """The matrix B(X, X') on I x I' (lexicographic order)."""
    indices = [(i, ip) for i in X.nodes for ip in Xp.nodes]
    n = len(indices)
    C, Cp = X.cartan, Xp.cartan
    B = np.zeros((n, n), dtype=np.int64)
    for a, (i, ip) in enumerate(indices):
        sa = (X.sign(i), Xp.sign(ip))
        for b, (j, jp) in enumerate(indices):
            sb = (X.sign(j), Xp.sign(jp))
            c = int(C[i - 1, j - 1]) * (ip == jp)
            cp = int(Cp[ip - 1, jp - 1]) * (i == j)
            if (sa, sb) in (((-1, 1), (1, 1)), ((1, -1), (-1, -1))):
                B[a, b] = -c
            elif (sa, sb) in (((1, 1), (-1, 1)), ((-1, -1), (1, -1))):
                B[a, b] = c
            elif (sa, sb) in (((1, 1), (1, -1)), ((-1, -1), (-1, 1))):
                B[a, b] = -cp
            elif (sa, sb) in (((1, -1), (1, 1)), ((-1, 1), (-1, -1))):
                B[a, b] = cp
    eps = tuple(X.sign(i) * Xp.sign(ip) for i, ip in indices)
    return ExchangeMatrix(B, eps)


def incidence_matrices(pair: SquareProduct) -> tuple[np.ndarray, np.ndarray]:
    """(M, M'): adjacency in the X direction and in the X' direction."""
    n = pair.n
    M = np.zeros((n, n), dtype=np.int64)
    Mp = np.zeros((n, n), dtype=np.int64)
    for a, (i, ip) in enumerate(pair.indices):
        for b, (j, jp) in enumerate(pair.indices):
            if ip == jp and pair.X.adjacent(i, j):
                M[a, b] = 1
            if i == j and pair.Xp.adjacent(ip, jp):
                Mp[a, b] = 1
    return M, Mp


@lru_cache(maxsize=None)
def make_pair(X, Xp=None) -> SquareProduct:
    """Build a pair from two diagrams, two spec strings, or one ``"A3xA2"`` string."""
    if Xp is None:
        parts = str(X).lower().split("x")
        if len(parts) != 2:
            raise DiagramError(f"cannot parse pair spec {X!r}; expected e.g. 'A3xA2'")
        X, Xp = parts
    if not isinstance(X, DynkinDiagram):
        X = parse_diagram(X)
    if not isinstance(Xp, DynkinDiagram):
        Xp = parse_diagram(Xp)
    return SquareProduct(X, Xp)
