from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverstrata.errors import InconclusiveDepthError, PreconditionError
from quiverstrata.kmcore import AffineWeight
from quiverstrata.levelrank import (
    GYD,
    all_gyds,
    charge,
    degree,
    dominant_weights_within,
    duality_dims,
    gyd_to_maya,
    gyd_to_weight,
    tensor_multiplicity,
    tensor_multiplicity_dual,
    transpose,
    unique_mu_lift,
)

HALF = Fraction(1, 2)


def test_gyd_level_bound():
    with pytest.raises(PreconditionError):
        GYD((3, 0), 2)


def test_weight_examples():
    assert gyd_to_weight(GYD((1, 0), 1)).framing == (0, 1)
    assert gyd_to_weight(GYD((0, 0, 0), 2)).framing == (2, 0, 0)
    assert gyd_to_weight(GYD((1, 0), 2)).framing == (1, 1)


def test_maya_examples():
    assert gyd_to_maya(GYD((0, 0), 3)).deviations == frozenset()
    assert gyd_to_maya(GYD((1, 0), 1)).deviations == {(1, 1, HALF)}
    assert gyd_to_maya(GYD((1,), 2)).deviations == {(1, 1, HALF)}


def test_transpose_examples():
    assert transpose(GYD((0, 0, 0), 2)) == GYD((0, 0), 3)
    assert transpose(GYD((1, 0), 1)) == GYD((1,), 2)


def test_charge_and_degree_examples():
    vac = gyd_to_maya(GYD((0, 0), 2))
    assert charge(vac) == 0 and degree(vac) == 0
    m = gyd_to_maya(GYD((1, 0), 1))
    assert charge(m) == 1
    assert degree(m) == -HALF


def test_degree_single_row_two():
    # two filled sites at n = 1/2, one per color
    m = gyd_to_maya(GYD((2,), 2))
    assert m.deviations == {(1, 1, HALF), (2, 1, HALF)}
    assert degree(m) == -1


def test_unique_mu_lift_examples():
    lam = GYD((1, 0), 2)
    assert unique_mu_lift(lam, gyd_to_weight(lam)) == lam
    assert unique_mu_lift(GYD((3, 2), 2), (1, 1)) == GYD((3, 2), 2)
    assert unique_mu_lift(GYD((2, 0), 2), (2, 0)) == GYD((1, 1), 2)
    with pytest.raises(PreconditionError):
        unique_mu_lift(lam, (2, 0))


def test_duality_highest_weight():
    lam = GYD((1, 0), 2)
    rep = duality_dims(lam, AffineWeight((1, 1), (0, 0), 0), 6)
    assert (rep.lhs_dim, rep.rhs_dim) == (1, 1)
    assert rep.degree_relation_holds


def test_duality_delta_string():
    lam = GYD((1, 0), 2)
    dims = [duality_dims(lam, AffineWeight((1, 1), (0, 0), -k), 10) for k in range(4)]
    assert [(r.lhs_dim, r.rhs_dim) for r in dims] == [(1, 1), (2, 2), (4, 4), (8, 8)]


def test_duality_congruence_gate():
    rep = duality_dims(GYD((1, 0), 2), AffineWeight((2, 0), (0, 0), 0), 6)
    assert (rep.lhs_dim, rep.rhs_dim) == (0, 0)


def test_tensor_with_vacuum():
    lam1, vac = GYD((1, 0), 1), GYD((0, 0), 1)
    assert tensor_multiplicity(GYD((1, 0), 2), lam1, vac, 4) == 1


# level-one tensor squares of affine sl(2) branch with Ising minimal-model characters:
# chi_0 = 1 + q^2 + q^3 + 2q^4 + 2q^5, chi_1/16 = 1 + q + q^2 + 2q^3 + 2q^4 + 3q^5
ISING_0 = [1, 0, 1, 1, 2, 2]
ISING_SIGMA = [1, 1, 1, 2, 2, 3]


@pytest.mark.parametrize("lam,lam1,lam2,string", [
    ((0, 0), (0, 0), (0, 0), ISING_0),
    ((2, 0), (1, 0), (1, 0), ISING_0),
    ((1, 0), (1, 0), (0, 0), ISING_SIGMA),
])
def test_tensor_delta_strings_are_ising_characters(lam, lam1, lam2, string):
    got = [tensor_multiplicity(GYD(lam, 2), GYD(lam1, 1), GYD(lam2, 1), 14, k) for k in range(6)]
    assert got == string


def test_tensor_size_mismatch():
    assert tensor_multiplicity(GYD((1, 0), 2), GYD((1, 0), 1), GYD((1, 0), 1), 4) == 0


def test_tensor_two_routes_small():
    r1 = [g for g in all_gyds(2, 1, 2)]
    for a in r1:
        for b in r1:
            for lam in all_gyds(2, 2, 4):
                if lam.size != a.size + b.size:
                    continue
                for k in range(2):
                    try:
                        x = tensor_multiplicity(lam, a, b, 3, k)
                    except InconclusiveDepthError:
                        continue
                    assert x == tensor_multiplicity_dual(lam, a, b, 8, k)


def test_involution_size_charge_exhaustive():
    for l in range(1, 4):
        for r in range(1, 4):
            for lam in all_gyds(l, r, 5):
                t = transpose(lam)
                assert transpose(t) == lam
                assert t.size == lam.size
                assert charge(gyd_to_maya(lam)) == lam.size


gyds = st.integers(2, 3).flatmap(
    lambda l: st.integers(1, 3).flatmap(lambda r: st.sampled_from(all_gyds(l, r, 6))))


@given(gyds, st.integers(-3, 3))
def test_shift_invariance_and_lift(lam, k):
    moved = lam.shifted(k)
    assert gyd_to_weight(moved) == gyd_to_weight(lam)
    assert unique_mu_lift(moved, gyd_to_weight(lam)) == moved


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(all_gyds(2, 2, 3)), st.integers(0, 2))
def test_duality_degree_relation_and_congruence(lam, k):
    for mu in dominant_weights_within(lam, k):
        if mu.d_value() != -k:
            continue
        rep = duality_dims(lam, mu, 12)
        assert rep.degree_relation_holds
        assert rep.lhs_dim == rep.rhs_dim
        try:
            unique_mu_lift(lam, mu)
        except PreconditionError:
            assert (rep.lhs_dim, rep.rhs_dim) == (0, 0)
