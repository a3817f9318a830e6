"""Generalized Young diagrams, Maya diagrams and level-rank duality checks.

Conventions
-----------
A GYD ``lam`` in ``Y^r_l`` has ``l`` rows. Maya sites are ``(i, p, n)`` with
color ``1 <= i <= r``, row ``1 <= p <= l`` and ``n`` in ``Z + 1/2``; a site is
filled iff ``r (n - 1/2) + i <= lam_p``. The vacuum fills exactly ``n < 0``.

Lifts: ``<d^X, lam_bar> = 0`` for every GYD, hence ``<d^Y, t(lam)>`` equals the
degree of ``M(lam)``. Fundamental weights of the ``Y`` side pair to zero with
``d^Y``. Degrees are kept as :class:`fractions.Fraction`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .crystal import cyclic_cartan, euler_coefficients, mv_count
from .errors import ConsistencyError, InconclusiveDepthError, PreconditionError
from .kmcore import AffineWeight, CartanMatrix, unit, vadd
from .mult import freudenthal, hw_decomposition

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GYD:
    """``lam_1 >= ... >= lam_l`` with ``lam_1 - lam_l <= r``."""

    parts: tuple
    r: int

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        if not self.parts:
            raise PreconditionError("a GYD needs at least one row")
        if self.r < 1:
            raise PreconditionError("level r must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise PreconditionError(f"{self.parts} is not weakly decreasing")
        if self.parts[0] - self.parts[-1] > self.r:
            raise PreconditionError(f"{self.parts} violates the level {self.r} bound")

    @property
    def l(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def shifted(self, k: int) -> "GYD":
        return GYD(tuple(x + k for x in self.parts), self.r)

    def to_dict(self) -> dict:
        return {"l": self.l, "r": self.r, "parts": list(self.parts)}


def all_gyds(l: int, r: int, max_abs_size: int) -> list:
    """Every GYD in ``Y^r_l`` with ``|size| <= max_abs_size``."""
    out = []
    lo = -(max_abs_size + r * l)
    hi = max_abs_size + r * l

    def rec(prefix: list):
        if len(prefix) == l:
            if abs(sum(prefix)) <= max_abs_size:
                out.append(GYD(tuple(prefix), r))
            return
        top = prefix[-1] if prefix else hi
        bottom = prefix[0] - r if prefix else lo
        for x in range(top, max(bottom, lo) - 1, -1):
            rec(prefix + [x])

    rec([])
    out.sort(key=lambda g: (g.size, tuple(-x for x in g.parts)))
    return out


def gyd_to_weight(lam: GYD) -> AffineWeight:
    """``(r - lam_1 + lam_l) Lambda_0 + sum_p (lam_p - lam_{p+1}) Lambda_p``."""
    p = lam.parts
    coef = (lam.r - p[0] + p[-1],) + tuple(p[k] - p[k + 1] for k in range(lam.l - 1))
    return AffineWeight(coef, (0,) * lam.l)


@dataclass(frozen=True)
class MayaDiagram:
    """Finite deviation from the vacuum.

    ``deviations`` holds sites ``(color, row, n)``: filled when ``n > 0`` and
    empty when ``n < 0``. ``colors`` and ``rows`` give the rectangle shape.
    """

    colors: int
    rows: int
    deviations: frozenset

    def filled(self, color: int, row: int, n: Fraction) -> bool:
        n = Fraction(n)
        if (color, row, n) in self.deviations:
            return n > 0
        return n < 0

    def transposed(self) -> "MayaDiagram":
        return MayaDiagram(self.rows, self.colors, frozenset((p, i, n) for i, p, n in self.deviations))


def gyd_to_maya(lam: GYD) -> MayaDiagram:
    r = lam.r
    dev = set()
    for p, lp in enumerate(lam.parts, start=1):
        for i in range(1, r + 1):
            # last filled n is m + 1/2 with m = floor((lam_p - i) / r)
            m = (lp - i) // r
            if m >= 0:
                dev.update((i, p, j + HALF) for j in range(m + 1))
            else:
                dev.update((i, p, -(j + HALF)) for j in range(-m - 1))
    return MayaDiagram(r, lam.l, frozenset(dev))


def charge(M: MayaDiagram) -> int:
    """Filled sites with ``n > 0`` minus empty sites with ``n < 0``."""
    return sum(1 if n > 0 else -1 for _, _, n in M.deviations)


def degree(M: MayaDiagram) -> Fraction:
    """``-sum n`` over filled ``n > 0`` plus ``sum n`` over empty ``n < 0``."""
    return sum((-n if n > 0 else n for _, _, n in M.deviations), Fraction(0))


def maya_to_gyd(M: MayaDiagram) -> GYD:
    """Read rows back from a Maya diagram, checking that each row is a GYD row."""
    c = M.colors
    parts = []
    for row in range(1, M.rows + 1):
        sites = [(i, n) for i, p, n in M.deviations if p == row]
        value = sum(1 if n > 0 else -1 for _, n in sites)
        # row is realizable iff filled exactly when c (n - 1/2) + i <= value
        for i, n in sites:
            k = c * (n - HALF) + i
            if (n > 0) != (k <= value):
                raise ConsistencyError("Maya row is not the diagram of a GYD row")
        lo = min([c * (n - HALF) + i for i, n in sites] + [value + 1, 1])
        hi = max([c * (n - HALF) + i for i, n in sites] + [value, 0])
        for k in range(int(lo) - c, int(hi) + c + 1):
            n = HALF + Fraction((k - 1) // c)
            i = k - c * (n - HALF)
            if M.filled(int(i), row, n) != (k <= value):
                raise ConsistencyError("Maya row is not the diagram of a GYD row")
        parts.append(value)
    return GYD(tuple(parts), c)


def transpose(lam: GYD) -> GYD:
    """``t(lam)`` in ``Y^l_r`` by transposing every ``l x r`` rectangle of ``M(lam)``."""
    out = maya_to_gyd(gyd_to_maya(lam).transposed())
    if out.size != lam.size:
        raise ConsistencyError("transposition changed the size")
    return out


def maya_degree(lam: GYD) -> Fraction:
    return degree(gyd_to_maya(lam))


def unique_mu_lift(lam: GYD, mu_bar) -> GYD:
    """The GYD ``mu`` of size ``|lam|`` with weight ``mu_bar``.

    Parameters
    ----------
    lam : GYD
    mu_bar : AffineWeight or sequence of int
        Level ``r`` dominant weight, read from ``framing`` when an AffineWeight.

    Raises
    ------
    PreconditionError
        When ``|lam|`` and the size class of ``mu_bar`` differ mod ``l``; then
        ``mu_bar`` is not a weight of ``V(lam_bar)``.
    """
    coef = tuple(mu_bar.framing if isinstance(mu_bar, AffineWeight) else mu_bar)
    l = lam.l
    if len(coef) != l or any(x < 0 for x in coef) or sum(coef) != lam.r:
        raise PreconditionError(f"{coef} is not a dominant weight of level {lam.r}")
    base = [0] * l
    for p in range(l - 2, -1, -1):
        base[p] = base[p + 1] + coef[p + 1]
    diff = lam.size - sum(base)
    if diff % l:
        raise PreconditionError("mu_bar is not a weight of V(lam_bar): size classes differ mod l")
    return GYD(tuple(x + diff // l for x in base), lam.r)


def _solve_content(C: CartanMatrix, rhs: Sequence[int], x0) -> tuple | None:
    """Solve ``C x = rhs`` with ``x_0`` prescribed; ``None`` unless integral."""
    n = C.n
    x0 = Fraction(x0)
    # rows 1..n-1 restricted to vertices 1..n-1 form a finite Cartan matrix
    a = [[Fraction(C.entries[i][j]) for j in range(1, n)] + [Fraction(rhs[i]) - C.entries[i][0] * x0]
         for i in range(1, n)]
    m = n - 1
    for col in range(m):
        piv = next(k for k in range(col, m) if a[k][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for k in range(m):
            if k != col and a[k][col] != 0:
                f = a[k][col] / a[col][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[col])]
    sol = [x0] + [a[k][m] / a[k][k] for k in range(m)]
    if sum(C.entries[0][j] * sol[j] for j in range(n)) != rhs[0]:
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


@dataclass(frozen=True)
class DualityReport:
    lhs_dim: int
    rhs_dim: int
    t: Fraction | None
    degree_relation_holds: bool
    x_content: tuple | None = None
    y_content: tuple | None = None
    residues: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "lhsDim": self.lhs_dim,
            "rhsDim": self.rhs_dim,
            "t": None if self.t is None else str(self.t),
            "degreeRelationHolds": self.degree_relation_holds,
            "xContent": None if self.x_content is None else list(self.x_content),
            "yContent": None if self.y_content is None else list(self.y_content),
            "residues": None if self.residues is None else list(self.residues),
        }


def _require_nondegenerate(lam: GYD) -> None:
    if lam.l < 2 or lam.r < 2:
        raise PreconditionError("duality needs l >= 2 and r >= 2")


def duality_dims(lam: GYD, mu_bar: AffineWeight, depth: int) -> DualityReport:
    """Both sides of the weight-space duality at one weight ``mu_bar``.

    ``mu_bar.framing`` holds the dominant coefficients of ``mu_bar`` and
    ``mu_bar.d_value()`` its pairing with ``d^X``.

    The left side is ``dim V(lam_bar)_{mu_bar}`` by Freudenthal on affine
    ``A_{l-1}``. The right side counts ``gl(r)``-highest components of weight
    ``t(lam) + t delta`` in ``(x)_p V(Lambda_{mu_p})`` through the crystal.
    ``depth`` bounds the content height on both sides.
    """
    _require_nondegenerate(lam)
    l, r = lam.l, lam.r
    CX, CY = cyclic_cartan(l), cyclic_cartan(r)
    wX = gyd_to_weight(lam).framing
    m = tuple(mu_bar.framing)
    if len(m) != l or any(x < 0 for x in m) or sum(m) != r:
        raise PreconditionError(f"{m} is not a dominant weight of level {r}")
    d_mu = mu_bar.d_value()
    if d_mu.denominator != 1:
        return DualityReport(0, 0, None, True)
    u = _solve_content(CX, tuple(a - b for a, b in zip(wX, m)), -d_mu)
    try:
        mu = unique_mu_lift(lam, m)
    except PreconditionError:
        if u is not None:
            raise ConsistencyError("congruence gate disagrees with the content solve")
        return DualityReport(0, 0, None, True)
    if u is None:
        raise ConsistencyError("size classes agree but the content is not integral")
    if sum(u) > depth:
        raise InconclusiveDepthError(f"content {u} lies beyond depth {depth}")
    lhs = freudenthal(wX, CX, depth)(u) if all(x >= 0 for x in u) else 0

    deg_lam, deg_mu = maya_degree(lam), maya_degree(mu)
    t = d_mu - deg_mu
    residues = tuple(x % r for x in mu.parts)
    wY = (0,) * r
    for k in residues:
        wY = vadd(wY, unit(r, k))
    target = gyd_to_weight(transpose(lam)).framing
    v0 = u[0] + deg_mu - deg_lam
    v = None
    if v0.denominator == 1:
        v = _solve_content(CY, tuple(a - b for a, b in zip(wY, target)), v0)
    if v is None or any(x < 0 for x in v):
        rhs = 0
    else:
        if sum(v) > depth:
            raise InconclusiveDepthError(f"dual content {v} lies beyond depth {depth}")
        rhs = mv_count(r, residues, v, depth)
    # <d^X, lam_bar - mu_bar> = -<d^Y, t(lam) + t delta> + <d, M(lam)> - <d, M(mu)>
    d_y_lam = deg_lam
    holds = (0 - d_mu) == -(d_y_lam + t) + deg_lam - deg_mu
    if v is not None:
        holds = holds and -Fraction(v[0]) == d_y_lam + t
    return DualityReport(lhs, rhs, t, holds, u, v, residues)


def dominant_weights_within(lam: GYD, delta_depth: int) -> list:
    """Dominant ``mu_bar`` of level ``r`` paired with ``d``-values ``0 .. -delta_depth``.

    Each entry is an AffineWeight whose framing is the dominant coefficient
    vector and whose ``d_value`` is ``-k``. Non-weights of ``V(lam_bar)`` are
    included on purpose; both sides must vanish there.
    """
    l, r = lam.l, lam.r
    out = []

    def rec(prefix: list, left: int):
        if len(prefix) == l - 1:
            coef = tuple(prefix + [left])
            coef = (coef[-1],) + coef[:-1]
            for k in range(delta_depth + 1):
                out.append(AffineWeight(coef, (0,) * l, Fraction(-k)))
            return
        for x in range(left, -1, -1):
            rec(prefix + [x], left - x)

    rec([], r)
    out.sort(key=lambda a: (-a.d_value(), a.framing))
    return out


# ---------------------------------------------------------------------------
# tensor products


def _char_product(C: CartanMatrix, ws: Sequence[tuple], depth: int) -> Counter:
    cur: Counter = Counter({(0,) * C.n: 1})
    for w in ws:
        table = freudenthal(w, C, depth)
        nxt: Counter = Counter()
        for a, ca in cur.items():
            for b, cb in table.mults.items():
                if sum(a) + sum(b) <= depth:
                    nxt[vadd(a, b)] += ca * cb
        cur = nxt
    return cur


def tensor_content(lam: GYD, lam1: GYD, lam2: GYD, delta_shift: int = 0) -> tuple | None:
    """Content ``u`` with ``lam1_bar + lam2_bar - u = lam_bar - delta_shift delta``, or ``None``."""
    C = cyclic_cartan(lam.l)
    w12 = vadd(gyd_to_weight(lam1).framing, gyd_to_weight(lam2).framing)
    wl = gyd_to_weight(lam).framing
    return _solve_content(C, tuple(a - b for a, b in zip(w12, wl)), delta_shift)


def _check_tensor_args(lam: GYD, lam1: GYD, lam2: GYD) -> None:
    if not lam.l == lam1.l == lam2.l:
        raise PreconditionError("all three GYDs need the same number of rows")
    if lam.r != lam1.r + lam2.r:
        raise PreconditionError("levels must satisfy r = r1 + r2")
    if lam.l < 2:
        raise PreconditionError("l must be at least 2")


def tensor_multiplicity(lam: GYD, lam1: GYD, lam2: GYD, depth: int, delta_shift: int = 0) -> int:
    """Multiplicity of ``V(lam_bar - delta_shift delta)`` in ``V(lam1_bar) (x) V(lam2_bar)``.

    Computed on the ``sl(l)`` side: the Freudenthal characters of the factors
    are multiplied and split by peeling off highest weights. Zero unless
    ``|lam| = |lam1| + |lam2|``.
    """
    _check_tensor_args(lam, lam1, lam2)
    if lam.size != lam1.size + lam2.size or delta_shift < 0:
        return 0
    u = tensor_content(lam, lam1, lam2, delta_shift)
    if u is None or any(x < 0 for x in u):
        return 0
    if sum(u) > depth:
        raise InconclusiveDepthError(f"content {u} lies beyond depth {depth}")
    C = cyclic_cartan(lam.l)
    w1, w2 = gyd_to_weight(lam1).framing, gyd_to_weight(lam2).framing
    prod = _char_product(C, [w1, w2], depth)
    return hw_decomposition(prod, vadd(w1, w2), C, depth).get(u, 0)


def tensor_degree_offset(lam: GYD, lam1: GYD, lam2: GYD) -> Fraction:
    """``<d, M(lam)> - <d, M(lam1)> - <d, M(lam2)>``."""
    return maya_degree(lam) - maya_degree(lam1) - maya_degree(lam2)


def tensor_multiplicity_dual(lam: GYD, lam1: GYD, lam2: GYD, depth: int, delta_shift: int = 0) -> int:
    """The same multiplicity read on the ``sl(r)`` side, for ``r1 = r2 = 1``.

    With one-dimensional ``Y_1``, ``Y_2`` the ``sl(Y_1) + sl(Y_2)`` conditions
    are empty. What remains is the space of vectors of ``V(t(lam)_bar)`` with
    ``J^0(0)``-charge ``-|lam1| + |lam2|`` and the prescribed degree that
    are highest for the Heisenberg algebra generated by the ``J^0(n)``. Its
    dimension is the weight multiplicity with one Euler factor removed.
    """
    _check_tensor_args(lam, lam1, lam2)
    if lam1.r != 1 or lam2.r != 1:
        raise PreconditionError("the dual route is implemented for r1 = r2 = 1")
    if lam.size != lam1.size + lam2.size or delta_shift < 0:
        return 0
    tl = transpose(lam)
    wY = gyd_to_weight(tl).framing
    offset = tensor_degree_offset(lam, lam1, lam2)
    depth_y = offset + delta_shift
    if depth_y.denominator != 1 or depth_y < 0:
        return 0
    depth_y = int(depth_y)
    # finite part: t(lam) - (|lam1|, |lam2|) = c alpha_1
    c = tl.parts[0] - lam1.size
    v = (depth_y, depth_y + c)
    if any(x < 0 for x in v):
        return 0
    if sum(v) > depth:
        raise InconclusiveDepthError(f"dual content {v} lies beyond depth {depth}")
    table = freudenthal(wY, cyclic_cartan(2), depth)
    total = sum(e * table((v[0] - k, v[1] - k)) for k, e in enumerate(euler_coefficients(depth_y)))
    if total < 0:
        raise ConsistencyError("negative Heisenberg-highest count")
    return total


__all__ = [
    "DualityReport",
    "GYD",
    "MayaDiagram",
    "all_gyds",
    "charge",
    "degree",
    "dominant_weights_within",
    "duality_dims",
    "gyd_to_maya",
    "gyd_to_weight",
    "maya_degree",
    "maya_to_gyd",
    "tensor_content",
    "tensor_degree_offset",
    "tensor_multiplicity",
    "tensor_multiplicity_dual",
    "transpose",
    "unique_mu_lift",
]
