"""Cross-verification harness: one check per acceptance criterion.

Each check runs two independent computations over a fixed grid and counts
disagreements. The grids are deterministic; the random corpus of the face
check is drawn from a seeded generator.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .crystal import character, crystal_b_lambda, freudenthal_character, plain_highest_count
from .errors import QuiverError
from .kmcore import (
    CartanMatrix,
    cartan_from_graph,
    cycle_graph,
    delta,
    path_graph,
    vectors_up_to,
)
from .levelrank import (
    all_gyds,
    charge,
    dominant_weights_within,
    duality_dims,
    gyd_to_maya,
    gyd_to_weight,
    tensor_content,
    tensor_multiplicity,
    tensor_multiplicity_dual,
    transpose,
)
from .modrep import (
    SEMISTABLE,
    STABLE,
    all_modules,
    count_hn_flags,
    is_semistable,
    jh_factors,
    random_module,
    stability_verdict,
)
from .mult import freudenthal, root_mult_extended
from .nonempty import affine_stratum_nonempty, ale_stable_dimvectors, cb_stable_nonempty
from .stability import StabilityParam, ale_face, face_of, in_closure, is_chamber, normalize
from .strata import enumerate_strata_ale, stratum_local_model


@dataclass
class CheckResult:
    """Outcome of one acceptance check."""

    key: str
    title: str
    checked: int = 0
    violations: int = 0
    seconds: float = 0.0
    limit: float = 0.0
    examples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.checked > 0 and self.seconds <= self.limit

    def fail(self, example) -> None:
        self.violations += 1
        if len(self.examples) < 5:
            self.examples.append(example)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.key} {self.title}: {self.checked} checked, "
                f"{self.violations} violations, {self.seconds:.2f}s (limit {self.limit:.0f}s)")

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "title": self.title,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violations,
            "seconds": round(self.seconds, 3),
            "limitSeconds": self.limit,
            "examples": [repr(x) for x in self.examples],
        }


def _timed(key: str, title: str, limit: float):
    def deco(fn):
        def run(*args, **kwargs) -> CheckResult:
            res = CheckResult(key, title, limit=limit)
            t0 = time.perf_counter()
            fn(res, *args, **kwargs)
            res.seconds = time.perf_counter() - t0
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.limit = limit
        return run
    return deco


def _a2() -> CartanMatrix:
    return cartan_from_graph(path_graph(2))


def _affine(r: int) -> CartanMatrix:
    return cartan_from_graph(cycle_graph(r))


def _dominant_up_to(n: int, total: int) -> list:
    return [w for w in vectors_up_to(n, total) if any(w)]


@_timed("C1", "extended-quiver roots vs Freudenthal", 10)
def check_extended_roots(res: CheckResult, max_w: int = 2, max_v: int = 8) -> None:
    """Root multiplicity of ``v + alpha_inf`` equals ``dim V(w)_{w-v}``."""
    for C in (_a2(), _affine(2)):
        for w in _dominant_up_to(C.n, max_w):
            table = freudenthal(w, C, max_v)
            for v in vectors_up_to(C.n, max_v):
                res.checked += 1
                a = root_mult_extended(C, v, w)
                b = table(v)
                if a != b:
                    res.fail((C.tolist(), w, v, a, b))


def _zeta_grid(n: int) -> list:
    vals = [Fraction(x, 2) for x in range(-4, 5)]
    return [StabilityParam(z) for z in product(vals, repeat=n)]


@_timed("C2", "face lemmas on random F2 modules", 60)
def check_face_lemmas(res: CheckResult, n_modules: int = 240, seed: int = 0) -> None:
    """Same face gives the same verdict, closure monotonicity, no strict semistability in chambers.

    Modules are uniform random points of ``mu^{-1}(0)`` over F_2 with
    ``v, w <= (2, 2)`` and ``w != 0``, split evenly between A_2 and affine A_1.
    """
    rng = random.Random(seed)
    graphs = [path_graph(2), cycle_graph(2)]
    boxes = [x for x in product(range(3), repeat=2) if any(x)]
    zetas = _zeta_grid(2)
    for k in range(n_modules):
        g = graphs[k % 2]
        C = cartan_from_graph(g)
        v, w = rng.choice(boxes), rng.choice(boxes)
        m = random_module(g, v, w, 2, rng)
        by_face: dict = {}
        for z in zetas:
            f = face_of(z, v, w, C)
            verdict = stability_verdict(m, normalize(z, v, w))
            by_face.setdefault(f, set()).add(verdict)
        for f, verdicts in by_face.items():
            res.checked += 1
            if len(verdicts) != 1:
                res.fail(("face", v, w, sorted(verdicts)))
            if is_chamber(f) and SEMISTABLE in verdicts:
                res.fail(("chamber", v, w))
        faces = list(by_face)
        for fb in faces:
            for f in faces:
                if fb == f or not in_closure(fb, f):
                    continue
                res.checked += 1
                vb = next(iter(by_face[fb]))
                vf = next(iter(by_face[f]))
                if is_semistable(vf) and not is_semistable(vb):
                    res.fail(("semistable not inherited", v, w))
                if vb == STABLE and vf != STABLE:
                    res.fail(("stable not inherited", v, w))


HN_ZETAS = {
    1: [(1,), (-1,), (0,)],
    2: [(1, -1), (-1, 2), (0, 1)],
}


def _hn_param(zeta, v, w) -> StabilityParam:
    z = StabilityParam(zeta)
    if any(w):
        return normalize(z, v, w)
    return StabilityParam(z.zeta, Fraction(0))


@_timed("C3", "unique HN flag and tie-break independent JH factors", 120)
def check_hn_jh(res: CheckResult, max_dim: int = 4) -> None:
    """Exhaustive over all F_2 modules on A_1 and A_2 with ``sum v <= max_dim``.

    Framings are ``0`` and each unit vector. Every module is counted for
    every stability parameter in :data:`HN_ZETAS`.
    """
    for n in (1, 2):
        g = path_graph(n)
        framings = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
        for w in framings:
            for v in vectors_up_to(n, max_dim):
                if not any(v) and not any(w):
                    continue
                for m in all_modules(g, v, w, 2, mu_zero=False):
                    for zeta in HN_ZETAS[n]:
                        zt = _hn_param(zeta, v, w)
                        res.checked += 1
                        c = count_hn_flags(m, zt)
                        if c != 1:
                            res.fail(("hn", v, w, zeta, c))
                        if not any(v):
                            continue
                        if is_semistable(stability_verdict(m, zt)):
                            if jh_factors(m, zt, "min") != jh_factors(m, zt, "max"):
                                res.fail(("jh", v, w, zeta))


CB_FRAMINGS = [(1, 0), (1, 1), (2, 0)]


@_timed("C4", "criterion vs affine shortcut at ALE faces", 30)
def check_cb_affine(res: CheckResult, max_v: int = 6) -> None:
    C = _affine(2)
    for w in CB_FRAMINGS:
        for I00 in [(), (1,)]:
            z = ale_face(C, I00).sample_zeta
            for v in vectors_up_to(2, max_v):
                res.checked += 1
                a = affine_stratum_nonempty(C, v, w, I00)
                b = cb_stable_nonempty(C, v, w, z).nonempty
                if a != b:
                    res.fail((w, I00, v, a, b))


@_timed("C5", "stable unframed dimension vectors at ALE faces", 30)
def check_ale_classification(res: CheckResult) -> None:
    """The criterion over ``sum v <= sum delta`` with ``zeta . v = 0`` reproduces the list."""
    for r in (2, 3, 4):
        C = _affine(r)
        d = delta(C)
        zero = (0,) * r
        for k in range(r):
            for I00 in combinations(range(1, r), k):
                z = ale_face(C, I00).sample_zeta
                got = {v for v in vectors_up_to(r, sum(d))
                       if any(v) and z.pair(v) == 0 and cb_stable_nonempty(C, v, zero, z).nonempty}
                expected = {v for v, _ in ale_stable_dimvectors(C, I00)}
                res.checked += 1
                if got != expected:
                    res.fail((r, I00, sorted(got ^ expected)))


@_timed("C6", "crystal character vs Freudenthal", 60)
def check_crystal_character(res: CheckResult, depth: int = 6) -> None:
    for r in (2, 3):
        for i0 in range(r):
            got = character(crystal_b_lambda(r, i0, depth))
            expected = freudenthal_character(r, i0, depth)
            for v in set(got) | set(expected):
                res.checked += 1
                if got.get(v, 0) != expected.get(v, 0):
                    res.fail((r, i0, v, got.get(v, 0), expected.get(v, 0)))


@_timed("C7", "level-rank weight duality", 300)
def check_duality(res: CheckResult, delta_depth: int = 3, max_size: int = 4) -> None:
    """``l = r = 2``: every GYD with ``||lam|| <= max_size`` and every dominant ``mu_bar`` within ``delta_depth``."""
    for lam in all_gyds(2, 2, max_size):
        for mb in dominant_weights_within(lam, delta_depth):
            rep = duality_dims(lam, mb, 4 * (delta_depth + 1) + 4)
            res.checked += 1
            if rep.lhs_dim != rep.rhs_dim or not rep.degree_relation_holds:
                res.fail((lam.parts, mb.framing, str(mb.d_value()), rep.lhs_dim, rep.rhs_dim))


@_timed("C8", "Maya transposition and charge", 5)
def check_maya(res: CheckResult, max_size: int = 5) -> None:
    for l in (1, 2, 3):
        for r in (1, 2, 3):
            for lam in all_gyds(l, r, max_size):
                res.checked += 1
                t = transpose(lam)
                if transpose(t) != lam or t.size != lam.size or charge(gyd_to_maya(lam)) != lam.size:
                    res.fail((l, r, lam.parts, t.parts))


@_timed("C9", "tensor multiplicities vs dual and crystal routes", 120)
def check_tensor(res: CheckResult, delta_depth: int = 3, max_size: int = 2) -> None:
    """``l = 2``, ``r1 = r2 = 1``: Freudenthal product vs the two brute-force routes.

    The crystal route counts highest elements of ``B(lam1_bar) (x) B(lam2_bar)``;
    the dual route reads Heisenberg-highest weight multiplicities of
    ``V(t(lam)_bar)``.
    """
    depth = 4 * delta_depth + 8
    small = all_gyds(2, 1, max_size)
    for lam1 in small:
        for lam2 in small:
            res1 = [gyd_to_weight(x).framing.index(1) for x in (lam1, lam2)]
            for lam in all_gyds(2, 2, 2 * max_size):
                if lam.size != lam1.size + lam2.size:
                    continue
                for k in range(delta_depth + 1):
                    res.checked += 1
                    a = tensor_multiplicity(lam, lam1, lam2, depth, k)
                    b = tensor_multiplicity_dual(lam, lam1, lam2, depth, k)
                    u = tensor_content(lam, lam1, lam2, k)
                    c = plain_highest_count(2, res1, u) if u is not None else 0
                    if not a == b == c:
                        res.fail((lam.parts, lam1.parts, lam2.parts, k, a, b, c))


@_timed("C10", "local-model identity and block types", 10)
def check_local_models(res: CheckResult, max_v: int = 6) -> None:
    C = _affine(2)
    for w in CB_FRAMINGS:
        for I00 in [(), (1,)]:
            for v in vectors_up_to(2, max_v):
                for s in enumerate_strata_ale(C, v, w, I00):
                    res.checked += 1
                    try:
                        lm = stratum_local_model(C, s, w)
                    except QuiverError as exc:
                        res.fail((v, w, I00, s.to_dict(), repr(exc)))
                        continue
                    types = lm.block_types()
                    if not set(types) <= {"finite", "affine", "jordan"}:
                        res.fail((v, w, I00, s.to_dict(), types))


CHECKS = {
    "C1": check_extended_roots,
    "C2": check_face_lemmas,
    "C3": check_hn_jh,
    "C4": check_cb_affine,
    "C5": check_ale_classification,
    "C6": check_crystal_character,
    "C7": check_duality,
    "C8": check_maya,
    "C9": check_tensor,
    "C10": check_local_models,
}

SUITES = {
    "roots": ["C1"],
    "faces": ["C2"],
    "filtrations": ["C3"],
    "nonempty": ["C4", "C5"],
    "crystal": ["C6"],
    "levelrank": ["C7", "C8", "C9"],
    "strata": ["C10"],
    "all": list(CHECKS),
}


def run_suite(name: str, depth: int | None = None, seed: int = 0) -> list:
    """Run a named suite. ``depth`` sets the delta-depth of the level-rank checks."""
    if name not in SUITES:
        raise KeyError(name)
    out = []
    for key in SUITES[name]:
        fn = CHECKS[key]
        if key in ("C7", "C9") and depth is not None:
            out.append(fn(delta_depth=depth))
        elif key == "C2":
            out.append(fn(seed=seed))
        else:
            out.append(fn())
    return out


__all__ = ["CHECKS", "CheckResult", "SUITES", "run_suite"]
