from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C_A1, C_AFF_A1, C_AFF_A2
from quiverstrata.errors import InconclusiveDepthError
from quiverstrata.kmcore import vectors_up_to
from quiverstrata.mult import freudenthal
from quiverstrata.nonempty import (
    affine_stratum_nonempty,
    ale_stable_dimvectors,
    cb_stable_nonempty,
    levi_stratum_nonempty,
    witness_fails,
)
from quiverstrata.stability import StabilityParam, face_of, in_closure

Z0 = StabilityParam((0,))


def test_a1_v1_w2():
    assert cb_stable_nonempty(C_A1, (1,), (2,), Z0).nonempty


def test_a1_v2_w2_witness():
    verdict = cb_stable_nonempty(C_A1, (2,), (2,), Z0)
    assert not verdict.nonempty
    assert verdict.witness == {"v0": [0], "betas": [[1], [1]]}
    assert witness_fails(C_A1, (2,), (2,), verdict)


def test_v_zero_is_vacuous():
    assert cb_stable_nonempty(C_AFF_A1, (0, 0), (1, 0), StabilityParam((0, 0))).nonempty


def test_generic_chamber_reduces_to_weight_test():
    # zeta.beta != 0 for every positive root of height <= 4 with these irrational-like weights
    z = StabilityParam((Fraction(1), Fraction(7, 3)))
    w = (1, 0)
    table = freudenthal(w, C_AFF_A1, 4)
    for v in vectors_up_to(2, 4):
        assert cb_stable_nonempty(C_AFF_A1, v, w, z).nonempty == table.is_weight(v)


def test_depth_too_small_is_inconclusive():
    with pytest.raises(InconclusiveDepthError):
        cb_stable_nonempty(C_A1, (3,), (2,), Z0, depth=2)


def test_ale_stable_dimvectors_examples():
    assert dict(ale_stable_dimvectors(C_AFF_A1, {1})) == {(1, 1): "a", (0, 1): "b", (1, 0): "c"}
    assert ale_stable_dimvectors(C_AFF_A1, set()) == [((1, 1), "a")]
    assert dict(ale_stable_dimvectors(C_AFF_A2, {1, 2})) == {
        (1, 1, 1): "a", (0, 1, 0): "b", (0, 0, 1): "b", (1, 0, 0): "c"}


def test_affine_stratum_examples():
    assert affine_stratum_nonempty(C_AFF_A1, (0, 0), (1, 0), {1})
    assert not affine_stratum_nonempty(C_AFF_A1, (1, 0), (1, 0), {1})


def test_levi_full_level_one():
    assert not levi_stratum_nonempty(C_AFF_A1, (1, 1), (1, 0), {0, 1})
    assert levi_stratum_nonempty(C_AFF_A1, (0, 0), (1, 0), {0, 1})


def test_unframed_stable_are_roots_with_p_at_most_one():
    z = StabilityParam((0, 0, 0))
    for v in vectors_up_to(3, 5):
        if any(v) and cb_stable_nonempty(C_AFF_A2, v, (0, 0, 0), z).nonempty:
            assert C_AFF_A2.form(v, v) <= 2


halves = st.integers(-4, 4).map(lambda k: Fraction(k, 2))


@settings(max_examples=60, deadline=None)
@given(st.tuples(halves, halves), st.tuples(halves, halves),
       st.tuples(st.integers(0, 3), st.integers(0, 3)),
       st.sampled_from([(1, 0), (1, 1), (2, 0)]))
def test_closure_monotonicity(z, zb, v, w):
    zt, zbt = StabilityParam(z), StabilityParam(zb)
    f = face_of(zt, v, w, C_AFF_A1)
    fb = face_of(zbt, v, w, C_AFF_A1)
    if not in_closure(fb, f):
        return
    if not cb_stable_nonempty(C_AFF_A1, v, w, zt).nonempty:
        assert not cb_stable_nonempty(C_AFF_A1, v, w, zbt).nonempty
