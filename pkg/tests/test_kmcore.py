from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import A1, A2, C_A1, C_A2, C_AFF_A1, JORDAN
from quiverstrata.errors import PreconditionError
from quiverstrata.kmcore import (
    AffineWeight,
    CartanMatrix,
    QuiverGraph,
    cartan_from_graph,
    cartan_type,
    cycle_graph,
    delta,
    expected_dim,
    extend_quiver,
    p_value,
    pairing,
    pairings,
    unit,
    vadd,
    vscale,
)


def test_cartan_jordan():
    assert cartan_from_graph(JORDAN).tolist() == [[0]]


def test_cartan_a2():
    assert C_A2.tolist() == [[2, -1], [-1, 2]]


def test_cartan_affine_a1():
    assert C_AFF_A1.tolist() == [[2, -2], [-2, 2]]


def test_cartan_rejects_asymmetric():
    with pytest.raises(PreconditionError):
        CartanMatrix(((2, -1), (0, 2)))


def test_edge_outside_vertex_set():
    with pytest.raises(PreconditionError):
        QuiverGraph(("0",), (("0", "1"),))


def test_p_value_examples():
    assert p_value((1, 0), C_A2) == 0
    assert p_value((1, 1), C_AFF_A1) == 1
    assert p_value((1,), cartan_from_graph(JORDAN)) == 1


def test_pairing_examples():
    assert pairing(C_A2, 0, AffineWeight((1, 0), (0, 0))) == 1
    assert pairing(C_A2, 0, AffineWeight((1, 0), (1, 0))) == -1
    assert pairing(C_AFF_A1, 0, AffineWeight((1, 0), (1, 1))) == 1


def test_affine_weight_d_value():
    assert AffineWeight((1, 0), (2, 1), Fraction(1, 2)).d_value() == Fraction(-3, 2)


def test_extend_a1_gives_affine_a1_shape():
    ext = extend_quiver(A1, (2,))
    assert cartan_from_graph(ext.graph).tolist() == [[2, -2], [-2, 2]]
    assert ext.infinity == 1


def test_extend_zero_framing_isolated_vertex():
    ext = extend_quiver(A2, (0, 0))
    assert cartan_from_graph(ext.graph).tolist() == [[2, -1, 0], [-1, 2, 0], [0, 0, 2]]


def test_extend_a2_triangle():
    ext = extend_quiver(A2, (1, 1))
    assert cartan_from_graph(ext.graph).tolist() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert cartan_type(cartan_from_graph(ext.graph)) == "affine"


def test_expected_dim_examples():
    assert expected_dim((1,), (2,), C_A1) == 2
    assert expected_dim((1, 1), (0, 0), C_AFF_A1) == 2
    assert expected_dim((0, 0), (1, 0), C_A2) == 0


def test_cartan_types():
    assert cartan_type(C_A2) == "finite"
    assert cartan_type(C_AFF_A1) == "affine"
    assert cartan_type(cartan_from_graph(JORDAN)) == "jordan"
    assert delta(C_AFF_A1) == (1, 1)


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 4))
    labels = [str(i) for i in range(n)]
    edges = draw(st.lists(st.tuples(st.sampled_from(labels), st.sampled_from(labels)), max_size=8))
    return QuiverGraph(tuple(labels), tuple(edges))


@given(multigraphs())
def test_cartan_symmetric_nonpositive(g):
    C = cartan_from_graph(g)
    for i in range(C.n):
        for j in range(C.n):
            assert C[i, j] == C[j, i]
            if i != j:
                assert C[i, j] <= 0


@given(multigraphs())
def test_p_of_simple_zero_iff_loop_free(g):
    C = cartan_from_graph(g)
    for i in range(C.n):
        assert (p_value(unit(C.n, i), C) == 0) == (g.loops(i) == 0)


@given(st.integers(2, 5), st.integers(1, 6))
def test_affine_delta_kernel(r, m):
    C = cartan_from_graph(cycle_graph(r))
    d = delta(C)
    assert C.apply(d) == (0,) * r
    assert p_value(vscale(m, d), C) == 1


vec3 = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(tuple)


@settings(max_examples=50)
@given(vec3, vec3, vec3)
def test_pairing_bilinear(w, v, v2):
    C = cartan_from_graph(cycle_graph(3))
    lhs = pairings(C, w, vadd(v, v2))
    rhs = tuple(a - b for a, b in zip(pairings(C, w, v), C.apply(v2)))
    assert lhs == rhs
