from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import A1, A2, AFF_A1, C_A2, JORDAN, a1_module
from quiverstrata.errors import PreconditionError
from quiverstrata.kmcore import vectors_up_to
from quiverstrata.modrep import (
    GradedModule,
    all_modules,
    count_hn_flags,
    direct_sum,
    enumerate_submodules,
    hn_filtration,
    is_semistable,
    jh_factors,
    moment_map,
    random_module,
    stability_verdict,
    subquotient_slope,
)
from quiverstrata.stability import StabilityParam, face_of, in_closure, is_chamber, normalize


def simple(graph, i: int) -> GradedModule:
    """Vertex simple ``S_i`` without framing."""
    n = graph.n
    v = tuple(1 if k == i else 0 for k in range(n))
    B = tuple(((0,),) if v[t] and v[o] else tuple(() for _ in range(v[t]))
              for (o, t, _, _) in graph.arrows())
    a = tuple(tuple(() for _ in range(v[k])) for k in range(n))
    b = tuple(() for _ in range(n))
    return GradedModule(graph, 2, v, (0,) * n, B, a, b)


def subs(m):
    return sorted((s.dims, s.w_flag) for s in enumerate_submodules(m))


def test_moment_map_zero_module():
    m = a1_module(0, 0)
    assert moment_map(m) == (((0,),),)


def test_moment_map_a1_is_ab():
    assert moment_map(a1_module(1, 1)) == (((1,),),)


def test_moment_map_jordan_commutator():
    x, y = ((0, 1), (0, 0)), ((0, 0), (1, 0))
    m = GradedModule(JORDAN, 2, (2,), (0,), (x, y), (((), ()),), ((),))
    assert moment_map(m) != (((0, 0), (0, 0)),)


def test_submodules_b_zero():
    assert subs(a1_module(0, 0)) == [((0,), True), ((1,), False), ((1,), True)]


def test_submodules_b_nonzero():
    assert ((1,), False) not in subs(a1_module(0, 1))


def test_submodules_zero_dim():
    m = GradedModule(A1, 2, (0,), (1,), (), ((),), (((),),))
    assert subs(m) == [((0,), True)]


def test_verdict_examples():
    z = normalize(StabilityParam((1,)), (1,), (1,))
    assert stability_verdict(a1_module(0, 1), z) == "stable"
    assert stability_verdict(a1_module(0, 0), z) == "unstable"


def test_zeta_zero_everything_semistable():
    z = StabilityParam((0, 0), 0)
    for m in all_modules(A2, (1, 1), (1, 0)):
        assert is_semistable(stability_verdict(m, z))


def test_hn_semistable_trivial():
    z = normalize(StabilityParam((1,)), (1,), (1,))
    assert hn_filtration(a1_module(0, 1), z).length == 0


def test_hn_a1_two_steps():
    z = StabilityParam((1,), -1)
    hn = hn_filtration(a1_module(0, 0), z)
    assert hn.to_dict() == {"dims": [[1], [1], [0]], "wFlags": [True, False, False], "kW": 0,
                            "grSlopes": ["-1", "1"]}


def test_hn_direct_sum_distinct_slopes():
    s0, s1 = simple(A2, 0), simple(A2, 1)
    z = StabilityParam((1, -1), 0)
    m = direct_sum(s0, s1)
    hn = hn_filtration(m, z)
    assert hn.length == 1
    assert hn.flag[1].dims == (1, 0)
    assert hn.gr_slopes == (Fraction(-1), Fraction(1))


def test_jh_stable_singleton():
    z = normalize(StabilityParam((1,)), (1,), (1,))
    assert [f[:2] for f in jh_factors(a1_module(0, 1), z)] == [((1,), True)]


def test_jh_two_simples():
    s = simple(A1, 0)
    z = StabilityParam((0,), 0)
    assert [f[:2] for f in jh_factors(direct_sum(s, s), z)] == [((1,), False), ((1,), False)]


def test_jh_zeta_zero_composition_series():
    z = StabilityParam((0,), 0)
    assert [f[:2] for f in jh_factors(a1_module(0, 1), z)] == [((0,), True), ((1,), False)]


def test_jh_rejects_unstable():
    z = StabilityParam((1,), -1)
    with pytest.raises(PreconditionError):
        jh_factors(a1_module(0, 0), z)


def test_hn_unique_small_exhaustive():
    zetas = [StabilityParam((1, -1)), StabilityParam((-1, 2)), StabilityParam((0, 1))]
    for v in vectors_up_to(2, 2):
        for w in [(0, 0), (1, 0)]:
            for m in all_modules(A2, v, w):
                for z in zetas:
                    if not any(w) and z.pair(v) != 0:
                        z = StabilityParam(z.zeta, 0)
                        if z.pair(v) != 0:
                            continue
                    zt = normalize(z, v, w)
                    assert count_hn_flags(m, zt) == 1


small_dims = st.tuples(st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), small_dims, st.sampled_from([(1, 0), (0, 1), (1, 1)]))
def test_slope_see_saw_on_submodules(seed, v, w):
    m = random_module(AFF_A1, v, w, 2, random.Random(seed))
    zt = normalize(StabilityParam((Fraction(1, 2), -1)), v, w)
    whole = max(enumerate_submodules(m), key=lambda s: s.size)
    zero_subs = [s for s in enumerate_submodules(m) if s.size == 0]
    if whole.size == 0 or not zero_subs:
        return
    zero = zero_subs[0]
    total = subquotient_slope(zt, whole, zero)
    for s in enumerate_submodules(m):
        if s.size in (0, whole.size):
            continue
        a = subquotient_slope(zt, s, zero)
        b = subquotient_slope(zt, whole, s)
        assert (a <= total) == (b >= total)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), small_dims)
def test_same_face_same_verdict_and_chamber_collapse(seed, v):
    w = (1, 0)
    m = random_module(A2, v, w, 2, random.Random(seed))
    grid = [Fraction(k, 2) for k in range(-3, 4)]
    by_face: dict = {}
    for x in grid:
        for y in grid:
            zt = normalize(StabilityParam((x, y)), v, w)
            f = face_of(zt, v, w, C_A2)
            verdict = stability_verdict(m, zt)
            by_face.setdefault(f, set()).add(verdict)
            if is_chamber(f):
                assert verdict != "strictlySemistable"
    for f, verdicts in by_face.items():
        assert len(verdicts) == 1
    for fb, vb in by_face.items():
        for f, vf in by_face.items():
            if in_closure(fb, f):
                (b,), (a,) = vb, vf
                if is_semistable(a):
                    assert is_semistable(b)
                if b == "stable":
                    assert a == "stable"
