"""Nonemptiness of stable loci: the root-decomposition criterion and its affine shortcuts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InconclusiveDepthError, PreconditionError
from .kmcore import (
    CartanMatrix,
    box,
    components,
    delta,
    dot,
    is_affine_type,
    is_finite_type,
    p_value,
    pairings,
    unit,
    vadd,
    vsub,
)
from .mult import freudenthal, in_weyl_orbit_of_highest, positive_roots
from .stability import StabilityParam

_NEG_INF = None


@dataclass(frozen=True)
class CBVerdict:
    """Outcome of the criterion.

    ``witness`` is ``{"v0": ..., "betas": [...]}`` for a failing decomposition,
    ``{"reason": ...}`` when ``v`` fails the root or weight test, and ``None``
    when every decomposition passes.
    """

    nonempty: bool
    witness: dict | None = None
    decompositions_checked: int = 0

    def to_dict(self) -> dict:
        out = {"nonempty": self.nonempty, "witness": self.witness}
        out["decompositionsChecked"] = self.decompositions_checked
        return out


def _q_form(C: CartanMatrix, v, w) -> Fraction:
    """``tv (w - C v / 2)``."""
    return Fraction(dot(v, w)) - Fraction(C.form(v, v), 2)


class _BestSplit:
    """Maximum of ``sum p(beta)`` over decompositions of ``u`` into pool roots.

    ``best1[u]`` allows one or more parts. Built bottom-up over the box below
    ``v``; this is the exhaustive search over multisets with the subproblem
    values shared.
    """

    def __init__(self, C: CartanMatrix, v: tuple, pool: list):
        self.pool = pool
        self.p = {b: p_value(b, C) for b in pool}
        cells = sorted(box(v), key=lambda x: (sum(x), x))
        best: dict = {}
        for u in cells:
            cur = _NEG_INF
            for b in pool:
                if b == u:
                    cand = self.p[b]
                elif all(x <= y for x, y in zip(b, u)):
                    rest = best.get(vsub(u, b), _NEG_INF)
                    if rest is _NEG_INF:
                        continue
                    cand = self.p[b] + rest
                else:
                    continue
                if cur is _NEG_INF or cand > cur:
                    cur = cand
            best[u] = cur
        self.best1 = best
        self.states = len(cells)

    def at_least_two(self, u: tuple):
        """Best value over decompositions of ``u`` with two or more parts."""
        cur = _NEG_INF
        for b in self.pool:
            if b != u and all(x <= y for x, y in zip(b, u)):
                rest = self.best1.get(vsub(u, b), _NEG_INF)
                if rest is _NEG_INF:
                    continue
                cand = self.p[b] + rest
                if cur is _NEG_INF or cand > cur:
                    cur = cand
        return cur

    def decomposition(self, u: tuple, min_parts: int = 1) -> list:
        """A decomposition of ``u`` attaining the optimum, with parts sorted."""
        parts = []
        target = self.best1[u] if min_parts == 1 else self.at_least_two(u)
        first = True
        while any(u):
            for b in self.pool:
                if first and min_parts == 2 and b == u:
                    continue
                if b == u:
                    if self.p[b] == target:
                        parts.append(b)
                        u = vsub(u, b)
                        break
                    continue
                if not all(x <= y for x, y in zip(b, u)):
                    continue
                rest = self.best1.get(vsub(u, b), _NEG_INF)
                if rest is not _NEG_INF and self.p[b] + rest == target:
                    parts.append(b)
                    u = vsub(u, b)
                    target = rest
                    break
            first = False
        return sorted(parts)


def _root_pool(C: CartanMatrix, v: tuple, zeta: StabilityParam) -> list:
    roots = positive_roots(C, sum(v)).roots
    pool = [b for b in roots if all(x <= y for x, y in zip(b, v)) and zeta.pair(b) == 0]
    return sorted(pool)


def cb_stable_nonempty(C: CartanMatrix, v: Sequence[int], w: Sequence[int], zeta: StabilityParam,
                       depth: int | None = None) -> CBVerdict:
    """Decide whether the stable locus of ``(v, w)`` at ``zeta`` is nonempty.

    Parameters
    ----------
    C : CartanMatrix
        Loop-free Cartan matrix.
    v, w : sequence of int
        Dimension and framing vectors.
    zeta : StabilityParam
        Only ``zeta.zeta`` is used.
    depth : int, optional
        Character depth available to the weight test. Defaults to ``sum(v)``;
        anything smaller cannot certify the answer.

    Returns
    -------
    CBVerdict
    """
    v, w = tuple(v), tuple(w)
    if len(v) != C.n or len(w) != C.n:
        raise PreconditionError("vectors do not match the Cartan matrix")
    if any(x < 0 for x in v) or any(x < 0 for x in w):
        raise PreconditionError("dimension vectors must be nonnegative")
    if not C.is_loop_free():
        raise PreconditionError("the criterion is implemented for loop-free graphs only")
    need = sum(v)
    if depth is not None and depth < need:
        raise InconclusiveDepthError(f"depth {depth} < {need} cannot decide the weight test")
    if not any(w):
        return _case_unframed(C, v, zeta)
    return _case_framed(C, v, w, zeta)


def _case_unframed(C, v, zeta) -> CBVerdict:
    if zeta.pair(v) != 0:
        raise PreconditionError("w = 0 requires zeta.v = 0")
    if not any(v):
        return CBVerdict(False, {"reason": "zero dimension vector"}, 0)
    roots = positive_roots(C, sum(v)).roots
    if v not in roots:
        return CBVerdict(False, {"reason": "not a positive root"}, 0)
    pool = _root_pool(C, v, zeta)
    split = _BestSplit(C, v, pool)
    best = split.at_least_two(v)
    if best is not _NEG_INF and p_value(v, C) <= best:
        return CBVerdict(False, {"v0": None, "betas": [list(b) for b in split.decomposition(v, 2)]},
                         split.states)
    return CBVerdict(True, None, split.states)


def _case_framed(C, v, w, zeta) -> CBVerdict:
    table = freudenthal(w, C, sum(v))
    if not table.is_weight(v):
        return CBVerdict(False, {"reason": "w - v is not a weight"}, 0)
    pool = _root_pool(C, v, zeta)
    split = _BestSplit(C, v, pool)
    lhs = _q_form(C, v, w)
    checked = split.states
    for v0 in box(v):
        if v0 == v or not table.is_weight(v0):
            continue
        u = vsub(v, v0)
        checked += 1
        best = split.best1.get(u, _NEG_INF)
        if best is _NEG_INF:
            continue
        if lhs <= _q_form(C, v0, w) + best:
            betas = split.decomposition(u, 1)
            return CBVerdict(False, {"v0": list(v0), "betas": [list(b) for b in betas]}, checked)
    return CBVerdict(True, None, checked)


def witness_fails(C: CartanMatrix, v, w, verdict: CBVerdict) -> bool:
    """Re-evaluate the failure inequality for a decomposition witness."""
    wit = verdict.witness
    if wit is None or "betas" not in wit:
        return False
    betas = [tuple(b) for b in wit["betas"]]
    total = sum(p_value(b, C) for b in betas)
    if wit["v0"] is None:
        s = tuple(map(sum, zip(*betas)))
        return s == tuple(v) and len(betas) >= 2 and p_value(v, C) <= total
    v0 = tuple(wit["v0"])
    s = v0
    for b in betas:
        s = vadd(s, b)
    return s == tuple(v) and len(betas) >= 1 and _q_form(C, v, w) <= _q_form(C, v0, w) + total


# ---------------------------------------------------------------------------
# affine shortcuts


def _require_affine(C: CartanMatrix):
    if not is_affine_type(C) or not C.is_loop_free():
        raise PreconditionError("graph must be of affine type")


def _climb_to_highest(C: CartanMatrix, comp: Sequence[int]) -> int:
    """Height of the highest root of a finite simply-laced component."""
    sub = C.restrict(comp)
    alpha = list(unit(len(comp), 0))
    moved = True
    while moved:
        moved = False
        for j in range(len(comp)):
            if sub.form(alpha, unit(len(comp), j)) < 0:
                alpha[j] += 1
                moved = True
                break
    return sum(alpha)


def highest_root(C: CartanMatrix, comp: Sequence[int]) -> tuple:
    """Highest root of the finite root system on ``comp``, embedded in ``I``."""
    comp = tuple(sorted(comp))
    sub = C.restrict(comp)
    if not is_finite_type(sub):
        raise PreconditionError("component is not of finite type")
    h = _climb_to_highest(C, comp)
    roots = positive_roots(sub, h).roots
    top = max(sum(r) for r in roots)
    highest = [r for r in roots if sum(r) == top]
    if len(highest) != 1:
        raise PreconditionError("highest root is not unique")
    out = [0] * C.n
    for k, i in enumerate(comp):
        out[i] = highest[0][k]
    return tuple(out)


def i00_components(C: CartanMatrix, I00: Iterable[int]) -> list:
    return components(C, I00)


def ale_stable_dimvectors(C: CartanMatrix, I00: Iterable[int]) -> list:
    """Dimension vectors of stable unframed modules at the ALE face of ``I00``.

    Returns ``(vector, tag)`` pairs: ``delta`` tagged ``a``, ``e_i`` for
    ``i`` in ``I00`` tagged ``b`` and ``delta - alpha_h^c`` per component
    tagged ``c``.
    """
    _require_affine(C)
    I00 = frozenset(I00)
    if 0 in I00 or not I00 <= frozenset(range(C.n)):
        raise PreconditionError("I00 must be a subset of I minus {0}")
    d = delta(C)
    out = [(d, "a")]
    out += [(unit(C.n, i), "b") for i in sorted(I00)]
    out += [(vsub(d, highest_root(C, c)), "c") for c in i00_components(C, I00)]
    return out


def _delta_w(C, w) -> int:
    return dot(delta(C), w)


def ale_inequalities(C: CartanMatrix, v, w, I00) -> bool:
    """``t(delta - alpha_h^c)(w - Cv) >= 0`` for all components and ``(w - Cv)_i >= 0`` on I00."""
    p = pairings(C, w, v)
    d = delta(C)
    for c in i00_components(C, I00):
        if dot(vsub(d, highest_root(C, c)), p) < 0:
            return False
    return all(p[i] >= 0 for i in I00)


def affine_stratum_nonempty(C: CartanMatrix, v: Sequence[int], w: Sequence[int], I00: Iterable[int],
                            depth: int | None = None) -> bool:
    """Nonemptiness of the stable locus at the ALE face of ``I00`` for an affine graph."""
    _require_affine(C)
    v, w, I00 = tuple(v), tuple(w), frozenset(I00)
    if not any(w):
        raise PreconditionError("w must be nonzero")
    if depth is not None and depth < sum(v):
        raise InconclusiveDepthError(f"depth {depth} < {sum(v)}")
    if any(x < 0 for x in v):
        return False
    if _delta_w(C, w) == 1:
        first = in_weyl_orbit_of_highest(C, w, v)
    else:
        first = freudenthal(w, C, sum(v)).is_weight(v)
    return first and ale_inequalities(C, v, w, I00)


def levi_stratum_nonempty(C: CartanMatrix, v: Sequence[int], w: Sequence[int], I0: Iterable[int],
                          depth: int | None = None) -> bool:
    """Nonemptiness of the stable locus at the Levi face of ``I0`` for an affine graph."""
    _require_affine(C)
    v, w, I0 = tuple(v), tuple(w), frozenset(I0)
    if not any(w):
        raise PreconditionError("w must be nonzero")
    if depth is not None and depth < sum(v):
        raise InconclusiveDepthError(f"depth {depth} < {sum(v)}")
    if any(x < 0 for x in v):
        return False
    if I0 == frozenset(range(C.n)) and _delta_w(C, w) == 1:
        return not any(v)
    p = pairings(C, w, v)
    if any(p[i] < 0 for i in I0):
        return False
    return freudenthal(w, C, sum(v)).is_weight(v)
