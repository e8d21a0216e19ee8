import itertools

import numpy as np
import pytest

from ysyslab.dynkin import build_diagram, coxeter_number, d_vector, parse_diagram, tau
from ysyslab.errors import DiagramError, ParityError, RootError

SUPPORTED = [("A", r) for r in range(1, 9)] + [("D", r) for r in range(4, 9)] + [("E", r) for r in (6, 7, 8)]


@pytest.mark.parametrize("family,rank,h", [
    ("A", 1, 2), ("A", 2, 3), ("A", 3, 4), ("A", 5, 6),
    ("D", 4, 6), ("D", 5, 8), ("E", 6, 12), ("E", 7, 18), ("E", 8, 30),
])
def test_coxeter_numbers(family, rank, h):
    d = build_diagram(family, rank)
    assert d.h == h
    assert coxeter_number(d) == h


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_diagram_invariants(family, rank):
    d = build_diagram(family, rank)
    A = np.array(d.adjacency)
    assert np.array_equal(A, A.T) and not A.diagonal().any()
    assert np.array_equal(d.cartan, 2 * np.eye(rank, dtype=int) - A)
    for i, j in itertools.product(d.nodes, d.nodes):
        if d.cartan[i - 1, j - 1] < 0:
            assert d.sign(i) != d.sign(j)
        assert d.adjacent(d.omega_of(i), d.omega_of(j)) == d.adjacent(i, j)
    assert all(d.omega_of(d.omega_of(i)) == i for i in d.nodes)
    assert 2 * len(d.positive_roots) == rank * d.h
    assert d.dim_g == rank * (d.h + 1)


def test_omega_choices():
    assert build_diagram("A", 1).omega == (1,)
    assert build_diagram("A", 4).omega == (4, 3, 2, 1)
    assert build_diagram("D", 4).omega == (1, 2, 3, 4)
    assert build_diagram("D", 5).omega == (1, 2, 3, 5, 4)
    assert build_diagram("E", 7).omega == tuple(range(1, 8))
    e6 = build_diagram("E", 6)
    assert sorted(e6.omega) == list(range(1, 7)) and e6.omega != tuple(range(1, 7))


def test_omega_part_behaviour_is_computed():
    # A_r: omega keeps I+ iff r is odd
    for r in range(2, 8):
        assert build_diagram("A", r).omega_swaps_parts == (r % 2 == 0)


def test_bipartition_convention():
    assert build_diagram("A", 3).I_plus == (1, 3)
    assert build_diagram("A", 2).I_plus == (1,)


@pytest.mark.parametrize("family,rank", [("B", 3), ("D", 3), ("E", 9), ("A", 0), ("G", 2)])
def test_invalid_types(family, rank):
    with pytest.raises(DiagramError):
        build_diagram(family, rank)


def test_parse():
    assert str(parse_diagram("d5")) == "D5"
    with pytest.raises(DiagramError):
        parse_diagram("X3")


def test_tau_examples():
    a2 = build_diagram("A", 2)
    assert tau(a2, "+", (-1, 0)) == (1, 0)
    assert tau(a2, "-", (-1, 0)) == (-1, 0)
    assert tau(a2, "-", (1, 0)) == (1, 1)
    with pytest.raises(RootError):
        tau(a2, "+", (2, 0))


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_tau_involutions(family, rank):
    d = build_diagram(family, rank)
    phi = list(d.positive_roots) + [tuple(-c for c in d.simple_root(i)) for i in d.nodes]
    for a in phi:
        for s in (1, -1):
            b = tau(d, s, a)
            assert d.in_phi_ge_minus_one(b)
            assert tau(d, s, b) == a


def test_d_vector_examples():
    a2 = build_diagram("A", 2)
    assert d_vector(a2, 1, 0) == (-1, 0)
    assert d_vector(a2, 1, 2) == (1, 1)
    assert d_vector(a2, 2, 1) == (0, 1)
    with pytest.raises(ParityError):
        d_vector(a2, 1, 1)


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_d_vectors_are_positive_roots(family, rank):
    d = build_diagram(family, rank)
    for i in d.nodes:
        for u in range(1, d.h + 1):
            if (i in d.I_plus) == (u % 2 == 0):
                assert d_vector(d, i, u) in d.positive_roots


def test_to_dict():
    assert build_diagram("A", 3).to_dict() == {
        "family": "A", "rank": 3, "h": 4, "I_plus": [1, 3], "I_minus": [2], "omega": [3, 2, 1]
    }
