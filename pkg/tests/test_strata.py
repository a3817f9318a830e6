from __future__ import annotations

import pytest

from conftest import C_A2, C_AFF_A1, C_AFF_A2, C_AFF_A3
from quiverstrata.errors import PreconditionError
from quiverstrata.kmcore import CartanMatrix, cartan_type, expected_dim, vectors_up_to
from quiverstrata.strata import (
    StratumIndex,
    enumerate_strata_ale,
    enumerate_strata_levi,
    fiber_dim_bound,
    local_model,
    partitions,
    stratum_dim,
    stratum_local_model,
)


def is_definite_block(entries) -> bool:
    return cartan_type(CartanMatrix(entries)) in ("finite", "affine", "jordan")


def test_partitions_order():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_levi_empty_set_single_stratum():
    assert enumerate_strata_levi(C_A2, (1, 1), (1, 1), set()) == [((1, 1), None)]


def test_levi_a2_both_candidates():
    assert enumerate_strata_levi(C_A2, (1, 1), (1, 1), {0}) == [((0, 1), None), ((1, 1), None)]


def test_levi_v_zero():
    assert enumerate_strata_levi(C_A2, (0, 0), (1, 0), {0, 1}) == [((0, 0), None)]


def test_levi_full_set_level_one_only_v0_zero():
    for v in vectors_up_to(2, 6):
        for v0, _ in enumerate_strata_levi(C_AFF_A1, v, (1, 0), {0, 1}):
            assert v0 == (0, 0)


def test_ale_delta_level_one():
    out = enumerate_strata_ale(C_AFF_A1, (1, 1), (1, 0), set())
    assert out == [StratumIndex((0, 0), (1,), (), ())]


def test_ale_v_zero():
    assert enumerate_strata_ale(C_AFF_A1, (0, 0), (1, 0), {1}) == [
        StratumIndex((0, 0), (), ((1, 0),), (((1,), 0),))]


def test_ale_e0_level_one():
    out = enumerate_strata_ale(C_AFF_A1, (1, 0), (1, 0), {1})
    assert [s.to_dict() for s in out] == [{"v0": [0, 0], "lambda": [], "m": {"1": 0}, "n": {"1": 1}}]


def test_local_model_jordan_piece():
    lm = local_model(C_AFF_A1, (0, 0), [((1, 1), 1)], (1, 0))
    assert lm.hat_cartan == ((0,),)
    assert lm.block_types() == ["jordan"]


def test_local_model_simple_pieces_restrict_cartan():
    pieces = [((0, 1, 0), 1), ((0, 0, 1), 2)]
    lm = local_model(C_AFF_A2, (0, 0, 0), pieces, (1, 0, 0))
    assert lm.hat_cartan == C_AFF_A2.restrict([1, 2]).entries


def test_local_model_affine_a1_shape():
    lm = local_model(C_AFF_A1, (0, 0), [((1, 0), 1), ((0, 1), 1)], (1, 0))
    assert lm.hat_cartan == ((2, -2), (-2, 2))


def test_fiber_dim_bound():
    assert fiber_dim_bound(4, 4) == 0
    assert fiber_dim_bound(4, 2) == 1
    with pytest.raises(PreconditionError):
        fiber_dim_bound(2, 4)


GRID = [(C_AFF_A1, (1, 0)), (C_AFF_A1, (1, 1)), (C_AFF_A1, (2, 0)),
        (C_AFF_A2, (1, 0, 0)), (C_AFF_A3, (1, 0, 0, 0))]


def _subsets(n):
    for mask in range(1 << (n - 1)):
        yield {i for i in range(1, n) if mask >> (i - 1) & 1}


def test_ale_strata_invariants():
    for C, w in GRID:
        depth = 6 if C.n == 2 else 4
        for I00 in _subsets(C.n):
            for v in vectors_up_to(C.n, depth):
                amb = expected_dim(v, w, C)
                for s in enumerate_strata_ale(C, v, w, I00):
                    assert s.total(C) == v
                    lm = stratum_local_model(C, s, w)
                    for blk in lm.blocks():
                        sub = CartanMatrix(lm.hat_cartan).restrict(blk)
                        assert is_definite_block(sub.entries)
                    # ambient = stratum + normal slice; each Jordan vertex of the
                    # local model carries a translation plane already in the stratum
                    hat_c = CartanMatrix(lm.hat_cartan)
                    slice_dim = sum(x * (2 * y - z) for x, y, z in
                                    zip(lm.hat_v, lm.hat_w, hat_c.apply(lm.hat_v)))
                    assert amb - stratum_dim(C, s, w) == slice_dim - 2 * len(s.lam)
