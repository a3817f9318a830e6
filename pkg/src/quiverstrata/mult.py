"""Root multiplicities, weight multiplicities and Weyl group conjugation.

All tables are truncations: a value is only known for content vectors inside
the stated depth, and callers must not read "absent" as "zero" outside it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ConsistencyError, InconclusiveDepthError, PreconditionError
from .kmcore import (
    AffineWeight,
    CartanMatrix,
    box,
    dot,
    extend_cartan,
    pairings,
    unit,
    vectors_up_to,
    vle,
    vsub,
)


@dataclass(frozen=True)
class RootDatum:
    """Positive roots of height at most ``height_bound`` with multiplicities."""

    cartan: CartanMatrix
    height_bound: int
    roots: dict

    def mult(self, beta: Sequence[int]) -> int:
        beta = tuple(beta)
        if sum(beta) > self.height_bound:
            raise InconclusiveDepthError(f"root {beta} is above the height bound {self.height_bound}")
        return self.roots.get(beta, 0)

    def is_root(self, beta: Sequence[int]) -> bool:
        return self.mult(beta) > 0


def _require_loop_free(C: CartanMatrix):
    if not C.is_loop_free():
        raise PreconditionError("root systems with loop vertices are not supported")


def _candidates(n: int, bound: int, cap: Sequence[int] | None):
    if cap is None:
        return [x for x in vectors_up_to(n, bound) if any(x)]
    out = [x for x in box(cap) if any(x) and sum(x) <= bound]
    out.sort(key=lambda x: (sum(x), x))
    return out


def _peterson(C: CartanMatrix, bound: int, cap: Sequence[int] | None) -> dict:
    """Peterson's recurrence.

    With ``c_beta = sum_{k | beta} mult(beta/k) / k`` one has
    ``((beta|beta) - 2 ht(beta)) c_beta = sum_{beta'+beta''=beta} (beta'|beta'') c_beta' c_beta''``
    over ordered pairs of positive vectors.
    """
    n = C.n
    cand = _candidates(n, bound, cap)
    c: dict = {}
    mult: dict = {}
    for beta in cand:
        h = sum(beta)
        if h == 1:
            c[beta] = Fraction(1)
            mult[beta] = 1
            continue
        rhs = Fraction(0)
        for b1 in box(beta):
            if not any(b1) or b1 == beta:
                continue
            c1 = c.get(b1)
            if not c1:
                continue
            b2 = vsub(beta, b1)
            c2 = c.get(b2)
            if not c2:
                continue
            rhs += C.form(b1, b2) * c1 * c2
        g = 0
        for x in beta:
            g = _gcd(g, x)
        divisors = Fraction(0)
        for k in range(2, g + 1):
            if g % k == 0:
                divisors += Fraction(mult.get(tuple(x // k for x in beta), 0), k)
        coef = C.form(beta, beta) - 2 * h
        if coef == 0:
            # only non-roots have a vanishing coefficient; c_beta comes from divisors
            if rhs != 0:
                raise ConsistencyError(f"Peterson recurrence degenerate at {beta}")
            c[beta] = divisors
            continue
        cb = rhs / coef
        c[beta] = cb
        m = cb - divisors
        if m.denominator != 1 or m < 0:
            raise ConsistencyError(f"non-integral root multiplicity {m} at {beta}")
        if m:
            mult[beta] = int(m)
    return mult


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=256)
def _positive_roots_cached(C: CartanMatrix, bound: int) -> RootDatum:
    return RootDatum(C, bound, _peterson(C, bound, None))


def positive_roots(C: CartanMatrix, bound: int) -> RootDatum:
    """All positive roots of height at most ``bound``.

    Parameters
    ----------
    C : CartanMatrix
        Loop-free symmetric Cartan matrix.
    bound : int
        Maximal height.

    Returns
    -------
    RootDatum
    """
    _require_loop_free(C)
    return _positive_roots_cached(C, bound)


def root_multiplicity(C: CartanMatrix, beta: Sequence[int]) -> int:
    """Multiplicity of a single positive root, computing only below ``beta``."""
    _require_loop_free(C)
    beta = tuple(beta)
    if not any(beta):
        return 0
    return _peterson(C, sum(beta), beta).get(beta, 0)


# ---------------------------------------------------------------------------
# weight multiplicities


@dataclass(frozen=True)
class WeightMultTable:
    """Multiplicities ``dim V(w)_{w - v}`` for all ``v`` with ``sum(v) <= depth_bound``."""

    cartan: CartanMatrix
    highest: tuple
    depth_bound: int
    mults: dict

    def __call__(self, v: Sequence[int]) -> int:
        v = tuple(v)
        if any(x < 0 for x in v):
            return 0
        if sum(v) > self.depth_bound:
            raise InconclusiveDepthError(f"content {v} lies beyond depth {self.depth_bound}")
        return self.mults.get(v, 0)

    def is_weight(self, v: Sequence[int]) -> bool:
        return self(v) > 0

    def support(self) -> list:
        return sorted(self.mults, key=lambda x: (sum(x), x))


def freudenthal(w: Sequence[int], C: CartanMatrix, depth: int) -> WeightMultTable:
    """Weight multiplicities of the integrable highest weight module ``V(w)``.

    Freudenthal's formula written in content coordinates. With ``lambda = w``
    and ``mu = w - v``::

        ((lambda+rho|lambda+rho) - (mu+rho|mu+rho)) m(v)
            = 2 sum_{alpha > 0} mult(alpha) sum_{k >= 1} (mu + k alpha | alpha) m(v - k alpha)

    where the left coefficient equals ``2 sum_i v_i (w_i + 1) - tv C v``.
    """
    w = tuple(w)
    if len(w) != C.n:
        raise PreconditionError("highest weight has the wrong length")
    if any(x < 0 for x in w):
        raise PreconditionError(f"highest weight {w} is not dominant")
    return _freudenthal_cached(w, C, depth)


@lru_cache(maxsize=512)
def _freudenthal_cached(w: tuple, C: CartanMatrix, depth: int) -> WeightMultTable:
    _require_loop_free(C)
    n = C.n
    roots = positive_roots(C, depth).roots
    root_list = sorted(roots.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    # (lambda | alpha) = sum_i w_i alpha_i with (Lambda_i | alpha_j) = delta_ij
    lam_alpha = {a: dot(w, a) for a, _ in root_list}
    calpha = {a: C.apply(a) for a, _ in root_list}
    m: dict = {}
    vecs = vectors_up_to(n, depth)
    for v in vecs:
        if not any(v):
            m[v] = 1
            continue
        coef = 2 * sum(vi * (wi + 1) for vi, wi in zip(v, w)) - C.form(v, v)
        rhs = 0
        for a, ma in root_list:
            if not vle(a, v):
                continue
            ca = calpha[a]
            u = vsub(v, a)
            while all(x >= 0 for x in u):
                mu = m.get(u, 0)
                if mu:
                    # (w - u | alpha) = (w|alpha) - tu C alpha
                    rhs += ma * (lam_alpha[a] - dot(u, ca)) * mu
                u = vsub(u, a)
        rhs *= 2
        if coef == 0:
            if rhs != 0:
                raise ConsistencyError(f"Freudenthal recurrence degenerate at {v}")
            continue
        if rhs % coef:
            raise ConsistencyError(f"non-integral weight multiplicity at {v}")
        val = rhs // coef
        if val < 0:
            raise ConsistencyError(f"negative weight multiplicity at {v}")
        if val:
            m[v] = val
    return WeightMultTable(C, w, depth, m)


def weight_multiplicity(w: Sequence[int], C: CartanMatrix, v: Sequence[int]) -> int:
    """``dim V(w)_{w - v}`` with the depth taken from ``v``."""
    return freudenthal(w, C, sum(v))(v)


def root_mult_extended(C: CartanMatrix, v: Sequence[int], w: Sequence[int]) -> int:
    """Multiplicity of ``sum v_i alpha_i + alpha_inf`` for the graph extended by ``w``.

    Computed with Peterson's recurrence on the extended Cartan matrix,
    independently of :func:`freudenthal`.
    """
    _require_loop_free(C)
    Ct = extend_cartan(C, w)
    beta = tuple(v) + (1,)
    return root_multiplicity(Ct, beta)


# ---------------------------------------------------------------------------
# Weyl group


DEFAULT_STEP_BUDGET = 100_000


def dominant_conjugate(C: CartanMatrix, wv: AffineWeight, max_steps: int = DEFAULT_STEP_BUDGET):
    """Move ``w - v`` into the dominant chamber by simple reflections.

    Returns
    -------
    (AffineWeight, int)
        The dominant representative (same framing, new content) and the number
        of reflections used.

    Raises
    ------
    PreconditionError
        If the step budget is exhausted, i.e. the weight is not in the Tits cone.
    """
    v = list(wv.content)
    w = wv.framing
    steps = 0
    while True:
        p = pairings(C, w, v)
        i = next((k for k, x in enumerate(p) if x < 0), None)
        if i is None:
            return AffineWeight(w, tuple(v), wv.extra_degree), steps
        if steps >= max_steps:
            raise PreconditionError("dominant_conjugate exceeded its step budget")
        # s_i(w - v) = w - v - <h_i, w - v> alpha_i
        v[i] += p[i]
        steps += 1


def simple_reflection(C: CartanMatrix, wv: AffineWeight, i: int) -> AffineWeight:
    p = pairings(C, wv.framing, wv.content)[i]
    v = list(wv.content)
    v[i] += p
    return AffineWeight(wv.framing, tuple(v), wv.extra_degree)


def in_weyl_orbit_of_highest(C: CartanMatrix, w: Sequence[int], v: Sequence[int]) -> bool:
    """Whether ``w - v`` is Weyl conjugate to the dominant weight ``w``."""
    if any(x < 0 for x in v):
        return False
    dom, _ = dominant_conjugate(C, AffineWeight(tuple(w), tuple(v)))
    return not any(dom.content)


def simple_root(n: int, i: int) -> tuple:
    return unit(n, i)


def hw_decomposition(char: dict, w: Sequence[int], C: CartanMatrix, depth: int) -> dict:
    """Split a truncated character into irreducible characters.

    ``char`` maps content ``v`` (the weight is ``w - v``) to a multiplicity
    and must be complete up to height ``depth``. Returns ``{v: n}``: the
    module contains ``V(w - v)`` exactly ``n`` times. Peels the topmost
    remaining weight off repeatedly.
    """
    rest = {tuple(k): int(x) for k, x in char.items() if x and sum(k) <= depth}
    out: dict = {}
    while rest:
        v = min(rest, key=lambda x: (sum(x), x))
        n = rest[v]
        if n < 0:
            raise ConsistencyError(f"character is not a sum of irreducibles at {v}")
        hw = pairings(C, w, v)
        if any(x < 0 for x in hw):
            raise ConsistencyError(f"top weight at {v} is not dominant")
        out[v] = n
        sub = freudenthal(hw, C, depth - sum(v))
        for u, m in sub.mults.items():
            key = tuple(a + b for a, b in zip(v, u))
            left = rest.get(key, 0) - n * m
            if left:
                rest[key] = left
            else:
                rest.pop(key, None)
    return out
