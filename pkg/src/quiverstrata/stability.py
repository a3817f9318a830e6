"""Slopes, the finite root set R_+(v), faces and chambers of stability parameters.

Everything is exact: parameters are tuples of :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionError
from .kmcore import CartanMatrix, box, delta, dot, is_affine_type


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class StabilityParam:
    """A stability parameter ``zeta`` with an optional framing component ``zeta_inf``."""

    zeta: tuple
    zeta_inf: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "zeta", tuple(_fr(x) for x in self.zeta))
        if self.zeta_inf is not None:
            object.__setattr__(self, "zeta_inf", _fr(self.zeta_inf))

    @classmethod
    def of(cls, *values, zeta_inf=None) -> "StabilityParam":
        return cls(tuple(values), zeta_inf)

    def pair(self, v: Sequence[int]) -> Fraction:
        return dot(self.zeta, v)


def slope(zt: StabilityParam, v: Sequence[int], with_w: bool) -> Fraction:
    """Slope of a module of dimension ``v`` with framing flag ``with_w``.

    Parameters
    ----------
    zt : StabilityParam
        ``zeta_inf`` is read as 0 when absent.
    v : sequence of int
        Dimension vector of the V-part.
    with_w : bool
        Whether the W-part is present.

    Returns
    -------
    Fraction
        ``(zeta.v + zeta_inf [with_w]) / ([with_w] + sum v)``.
    """
    flag = 1 if with_w else 0
    den = flag + sum(v)
    if den == 0:
        raise PreconditionError("slope of the zero module is undefined")
    zinf = zt.zeta_inf if zt.zeta_inf is not None else Fraction(0)
    return (zt.pair(v) + zinf * flag) / den


def normalize(zt: StabilityParam, v: Sequence[int], w: Sequence[int]) -> StabilityParam:
    """Choose ``zeta_inf`` so that the slope of ``(v, W)`` vanishes."""
    s = zt.pair(v)
    if any(w):
        return StabilityParam(zt.zeta, -s)
    if s != 0:
        raise PreconditionError(f"w = 0 requires zeta.v = 0, got {s}")
    return StabilityParam(zt.zeta, Fraction(0))


def rplus(v: Sequence[int], C: CartanMatrix) -> frozenset:
    """Nonzero ``theta <= v`` with ``t(theta) C theta <= 2``."""
    out = set()
    for th in box(v):
        if any(th) and C.form(th, th) <= 2:
            out.add(th)
    return frozenset(out)


@dataclass(frozen=True)
class Face:
    """Sign partition of R_+(v) against a stability parameter."""

    r_zero: frozenset
    r_plus: frozenset
    r_minus: frozenset
    dim_vector: tuple
    w_is_zero: bool

    def _key(self):
        return (self.r_zero, self.r_plus, self.r_minus)

    def __eq__(self, other):
        return isinstance(other, Face) and self._key() == other._key() and \
            self.dim_vector == other.dim_vector and self.w_is_zero == other.w_is_zero

    def __hash__(self):
        return hash((self._key(), self.dim_vector, self.w_is_zero))

    def to_dict(self) -> dict:
        return {
            "rZero": [list(x) for x in sorted(self.r_zero)],
            "rPlus": [list(x) for x in sorted(self.r_plus)],
            "rMinus": [list(x) for x in sorted(self.r_minus)],
            "v": list(self.dim_vector),
            "wIsZero": self.w_is_zero,
        }


def face_of(zt: StabilityParam, v: Sequence[int], w: Sequence[int], C: CartanMatrix) -> Face:
    v = tuple(v)
    w_zero = not any(w)
    if w_zero and zt.pair(v) != 0:
        raise PreconditionError("w = 0 requires zeta.v = 0")
    roots = rplus(v, C)
    if w_zero:
        roots = roots - {v}
    z, p, m = set(), set(), set()
    for th in roots:
        s = zt.pair(th)
        (z if s == 0 else p if s > 0 else m).add(th)
    return Face(frozenset(z), frozenset(p), frozenset(m), v, w_zero)


def is_chamber(f: Face) -> bool:
    return not f.r_zero


def in_closure(f_bullet: Face, f: Face) -> bool:
    """Whether ``f_bullet`` lies in the closure of ``f``.

    Strict signs of ``f_bullet`` must be kept by ``f``; zeros may relax.
    """
    if f_bullet.dim_vector != f.dim_vector or f_bullet.w_is_zero != f.w_is_zero:
        raise PreconditionError("faces computed against different data")
    return f_bullet.r_plus <= f.r_plus and f_bullet.r_minus <= f.r_minus


@dataclass(frozen=True)
class FaceSpec:
    """A face given by vertex-set sign data together with a rational sample point.

    ``kind`` is ``levi``, ``aleOpen`` or ``aleBullet``. ``partition`` is
    ``(zero_set, plus_set)``.
    """

    kind: str
    partition: tuple
    sample_zeta: StabilityParam


def levi_face(I0: Iterable[int], n: int) -> FaceSpec:
    """zeta_i = 0 on I0 and 1 elsewhere."""
    I0 = frozenset(I0)
    if not I0 <= frozenset(range(n)):
        raise PreconditionError("I0 must be a set of vertices")
    zeta = tuple(Fraction(0) if i in I0 else Fraction(1) for i in range(n))
    plus = frozenset(range(n)) - I0
    return FaceSpec("levi", (I0, plus), StabilityParam(zeta))


def ale_face(C: CartanMatrix, I00: Iterable[int]) -> FaceSpec:
    """Sample point of the face with zeta.delta = 0, zeta_i = 0 on I00 and 1 on the rest of I_0.

    Vertex 0 is the extending vertex.
    """
    if not is_affine_type(C):
        raise PreconditionError("ale_face needs an affine graph")
    I00 = frozenset(I00)
    I_0 = frozenset(range(1, C.n))
    if not I00 <= I_0:
        raise PreconditionError("I00 must be a subset of I_0 = I minus {0}")
    d = delta(C)
    zeta = [Fraction(0) if i in I00 else Fraction(1) for i in range(C.n)]
    zeta[0] = -Fraction(sum(d[i] * zeta[i] for i in range(1, C.n)), d[0])
    kind = "aleOpen" if not I00 else "aleBullet"
    return FaceSpec(kind, (I00, I_0 - I00), StabilityParam(tuple(zeta)))


def gieseker_zeta(C: CartanMatrix, v: Sequence[int]) -> StabilityParam:
    """A concrete point of the chamber next to the open ALE face on the side zeta.delta < 0.

    zeta_i = 1 for i != 0 and zeta.delta = -eps with eps = 1/(1 + sum v)^2,
    which is small enough that no theta in R_+(v) changes sign.
    """
    base = ale_face(C, ()).sample_zeta.zeta
    d = delta(C)
    eps = Fraction(1, (1 + sum(v)) ** 2)
    zeta = list(base)
    zeta[0] -= eps / d[0]
    return StabilityParam(tuple(zeta))
