from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C_AFF_A1
from quiverstrata.crystal import (
    ColoredPartition,
    as_tensor,
    character,
    crystal_b_lambda,
    epsilon,
    freudenthal_character,
    is_highest,
    kashiwara,
    levi_highest,
    mv_count,
    phi,
    tensor_character_expected,
    tensor_crystal,
)
from quiverstrata.errors import PreconditionError
from quiverstrata.kmcore import AffineWeight, unit, vadd
from quiverstrata.levelrank import GYD, duality_dims
from quiverstrata.mult import freudenthal


def parts_of_content(r, i0, depth, v):
    return sorted(e.parts for e in crystal_b_lambda(r, i0, depth) if e.content() == v)


def test_depth_zero_is_vacuum():
    assert [e.parts for e in crystal_b_lambda(2, 0, 0)] == [()]


def test_weight_minus_delta():
    assert parts_of_content(2, 0, 2, (1, 1)) == [(2,)]


def test_weight_minus_two_delta():
    assert parts_of_content(2, 0, 4, (2, 2)) == [(3, 1), (4,)]


def test_f0_on_vacuum():
    x = kashiwara(ColoredPartition((), 0, 2), 0, "f")
    assert x.factors[0].parts == (1,)


def test_e_on_highest_is_bottom():
    vac = ColoredPartition((), 1, 3)
    assert all(kashiwara(vac, i, "e") is None for i in range(3))


def test_epsilon_of_single_box():
    one = ColoredPartition((1,), 0, 2)
    assert (epsilon(one, 0), epsilon(one, 1)) == (1, 0)


def test_regularity_enforced():
    with pytest.raises(PreconditionError):
        ColoredPartition((1, 1), 0, 2)
    ColoredPartition((1, 1), 0, 3)


def test_single_factor_depth_zero():
    cr = tensor_crystal(2, (0,), 0)
    assert len(cr) == 1 and is_highest(cr.elements[0])


def test_tensor_01_at_minus_delta_matches_freudenthal_product():
    cr = tensor_crystal(2, (0, 1), 2)
    count = len(cr.by_content().get((1, 1), []))
    assert count == tensor_character_expected(2, (0, 1), 2)[(1, 1)]


def test_levi_highest_empty_lists_all():
    cr = tensor_crystal(3, (0, 2), 3)
    assert len(levi_highest(cr, [])) == len(cr)


def test_levi_highest_contains_global_highest():
    cr = tensor_crystal(2, (0, 1), 3)
    vac = [x for x in cr.elements if x.weight().total_content() == (0, 0)]
    listed = [x for x, _ in levi_highest(cr, [1])]
    assert vac[0] in listed


def test_mv_count_vacuum():
    assert mv_count(3, (0, 1), (0, 0, 0), 0) == 1


def test_mv_count_level_two_delta():
    expected = freudenthal((2, 0), C_AFF_A1, 2)((1, 1))
    assert mv_count(2, (0, 0), (1, 1), 2) == expected == 1
    rep = duality_dims(GYD((0, 0), 2), AffineWeight((2, 0), (0, 0), -1), 6)
    assert rep.rhs_dim == rep.lhs_dim == 1


def test_mv_count_nondominant_is_zero():
    # Lambda_0 - alpha_0 is not dominant
    assert mv_count(2, (0,), (1, 0), 2) == 0


@pytest.mark.parametrize("r,i0", [(2, 0), (2, 1), (3, 0), (3, 2), (4, 1)])
def test_character_matches_freudenthal(r, i0):
    depth = 6 if r < 4 else 5
    assert character(crystal_b_lambda(r, i0, depth)) == freudenthal_character(r, i0, depth)


@pytest.mark.parametrize("r,i0", [(2, 0), (3, 1)])
def test_crystal_axioms(r, i0):
    depth = 5
    els = crystal_b_lambda(r, i0, depth)
    for x in els:
        for i in range(r):
            y = kashiwara(x, i, "f")
            if y is None:
                assert phi(x, i) == 0
                continue
            assert y.weight().content == vadd(as_tensor(x).weight().content, unit(r, i))
            assert epsilon(y, i) == epsilon(x, i) + 1
            assert phi(y, i) == phi(x, i) - 1
            assert kashiwara(y, i, "e") == as_tensor(x)
            z = kashiwara(x, i, "e")
            if z is not None:
                assert kashiwara(z, i, "f") == as_tensor(x)


@pytest.mark.parametrize("r,residues,depth", [(2, (0, 1), 4), (2, (0, 0), 4), (3, (0, 2), 4), (3, (1, 1, 0), 3)])
def test_tensor_character_multiplicativity(r, residues, depth):
    cr = tensor_crystal(r, residues, depth)
    got = Counter(x.weight().total_content() for x in cr.elements)
    assert got == tensor_character_expected(r, residues, depth)


def test_levi_branching_reproduces_character():
    depth = 4
    cr = tensor_crystal(2, (0,), depth)
    full = Counter(x.weight().total_content() for x in cr.elements)
    rebuilt: Counter = Counter()
    for x, wt in levi_highest(cr, [1]):
        top = wt.pairing(1)
        assert top >= 0
        for k in range(top + 1):
            rebuilt[vadd(wt.total_content(), (0, k))] += 1
    for v, n in full.items():
        assert rebuilt[v] == n


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 3), st.lists(st.integers(0, 2), min_size=1, max_size=2), st.integers(0, 3))
def test_mv_count_nonnegative_and_bounded(r, residues, height):
    residues = tuple(x % r for x in residues)
    cr = tensor_crystal(r, residues, height)
    for v, xs in cr.by_content().items():
        if sum(v) == height:
            n = mv_count(r, residues, v, height)
            assert 0 <= n <= sum(1 for x in xs if is_highest(x))
