"""Explicit framed quiver modules over F_2 and F_3.

A module is ``(B, a, b)`` on the doubled quiver with ``B_h : V_out(h) -> V_in(h)``,
``a_i : W_i -> V_i`` and ``b_i : V_i -> W_i``. Matrices are tuples of rows
acting on column vectors. Submodules are enumerated exhaustively, which makes
the verdicts here a ground truth for the face and filtration statements.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from itertools import combinations, product

from .errors import BudgetError, ConsistencyError, PreconditionError
from .kmcore import QuiverGraph, vsub
from .stability import StabilityParam, slope

SUBSPACE_BUDGET = 10**6
GROUP_BUDGET = 200_000

STABLE = "stable"
SEMISTABLE = "strictlySemistable"
UNSTABLE = "unstable"


# ---------------------------------------------------------------------------
# linear algebra over F_q


def zeros(rows: int, cols: int) -> tuple:
    return tuple((0,) * cols for _ in range(rows))


def matvec(M, x, q):
    return tuple(sum(a * b for a, b in zip(row, x)) % q for row in M)


def matmul(X, Y, q, rows: int, inner: int, cols: int):
    """``X @ Y`` for an ``rows x inner`` and an ``inner x cols`` matrix."""
    return tuple(
        tuple(sum(X[i][k] * Y[k][j] for k in range(inner)) % q for j in range(cols))
        for i in range(rows)
    )


def column(M, j):
    return tuple(row[j] for row in M)


def encode(x, q: int) -> int:
    code = 0
    for a in x:
        code = code * q + a
    return code


def rref(vectors, n: int, q: int) -> tuple:
    """Reduced row echelon basis of the span of ``vectors`` in F_q^n."""
    rows = [list(v) for v in vectors if any(v)]
    out = []
    col = 0
    r = 0
    while r < len(rows) and col < n:
        piv = next((k for k in range(r, len(rows)) if rows[k][col] % q), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], q - 2, q)
        rows[r] = [(x * inv) % q for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] % q:
                f = rows[k][col]
                rows[k] = [(x - f * y) % q for x, y in zip(rows[k], rows[r])]
        r += 1
        col += 1
    out = [tuple(x) for x in rows[:r] if any(x)]
    return tuple(out)


def rank(vectors, n: int, q: int) -> int:
    return len(rref(vectors, n, q))


def span(basis, n: int, q: int) -> frozenset:
    """All vectors of the span, as a frozenset of tuples."""
    out = set()
    for coeffs in product(range(q), repeat=len(basis)):
        vec = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                for k in range(n):
                    vec[k] = (vec[k] + c * b[k]) % q
        out.add(tuple(vec))
    return frozenset(out)


@lru_cache(maxsize=None)
def all_subspaces(n: int, q: int) -> tuple:
    """Every subspace of F_q^n as an RREF basis, ordered by dimension then basis."""
    out = []
    for k in range(n + 1):
        for pivots in combinations(range(n), k):
            free = []
            for r, p in enumerate(pivots):
                for c in range(p + 1, n):
                    if c not in pivots:
                        free.append((r, c))
            for vals in product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), x in zip(free, vals):
                    rows[r][c] = x
                out.append(tuple(tuple(x) for x in rows))
    return tuple(out)


def count_subspaces(n: int, q: int) -> int:
    return len(all_subspaces(n, q)) if n <= 8 else 10**9


@lru_cache(maxsize=None)
def general_linear(n: int, q: int) -> tuple:
    """All ``(g, g^{-1})`` pairs in GL_n(F_q)."""
    if n == 0:
        return (((), ()),)
    mats = []
    for entries in product(range(q), repeat=n * n):
        g = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if rank(g, n, q) == n:
            mats.append(g)
    return tuple((g, _inverse(g, n, q)) for g in mats)


def gl_order(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q**n - q**k
    return out


def _inverse(g, n, q):
    aug = [list(g[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] % q)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], q - 2, q)
        aug[c] = [(x * inv) % q for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class GradedModule:
    """A module ``(B, a, b)`` over F_q on the doubled quiver of ``graph``.

    ``B`` is indexed like :meth:`QuiverGraph.arrows`. ``mu_verified`` records
    whether the moment map was checked to vanish.
    """

    graph: QuiverGraph
    q: int
    v_dims: tuple
    w_dims: tuple
    B: tuple
    a: tuple
    b: tuple
    mu_verified: bool = False

    def __post_init__(self):
        if self.q not in (2, 3):
            raise PreconditionError("ground field must be F_2 or F_3")
        n = self.graph.n
        if len(self.v_dims) != n or len(self.w_dims) != n:
            raise PreconditionError("dimension vectors do not match the graph")
        arrows = self.graph.arrows()
        if len(self.B) != len(arrows):
            raise PreconditionError("one matrix per arrow of the doubled quiver is required")
        for (o, i, _, _), M in zip(arrows, self.B):
            _check_shape(M, self.v_dims[i], self.v_dims[o])
        for k in range(n):
            _check_shape(self.a[k], self.v_dims[k], self.w_dims[k])
            _check_shape(self.b[k], self.w_dims[k], self.v_dims[k])

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def has_w(self) -> bool:
        return any(self.w_dims)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "v": list(self.v_dims),
            "w": list(self.w_dims),
            "B": [[list(r) for r in M] for M in self.B],
            "a": [[list(r) for r in M] for M in self.a],
            "b": [[list(r) for r in M] for M in self.b],
            "muVerified": self.mu_verified,
        }


def _check_shape(M, rows, cols):
    if len(M) != rows or any(len(r) != cols for r in M):
        raise PreconditionError(f"matrix shape mismatch, expected {rows}x{cols}")


def moment_map(m: GradedModule) -> tuple:
    """``sum_{in(h) = i} eps(h) B_h B_hbar + a_i b_i`` for every vertex ``i``."""
    q = m.q
    arrows = m.graph.arrows()
    out = []
    for i in range(m.n):
        vi = m.v_dims[i]
        acc = [[0] * vi for _ in range(vi)]
        for h, (o, t, eps, partner) in enumerate(arrows):
            if t != i:
                continue
            prod_ = matmul(m.B[h], m.B[partner], q, vi, m.v_dims[o], vi)
            for r in range(vi):
                for c in range(vi):
                    acc[r][c] += eps * prod_[r][c]
        ab = matmul(m.a[i], m.b[i], q, vi, m.w_dims[i], vi)
        out.append(tuple(tuple((acc[r][c] + ab[r][c]) % q for c in range(vi)) for r in range(vi)))
    return tuple(out)


def is_in_mu_zero(m: GradedModule) -> bool:
    return all(not any(any(r) for r in M) for M in moment_map(m))


def random_module(graph: QuiverGraph, v, w, q: int = 2, rng: random.Random | None = None,
                  mu_zero: bool = True, max_tries: int = 100_000) -> GradedModule:
    """Uniform random module, conditioned on the moment map vanishing when ``mu_zero``."""
    rng = rng or random.Random(0)
    v, w = tuple(v), tuple(w)
    arrows = graph.arrows()

    def rmat(r, c):
        return tuple(tuple(rng.randrange(q) for _ in range(c)) for _ in range(r))

    for _ in range(max_tries):
        B = tuple(rmat(v[t], v[o]) for (o, t, _, _) in arrows)
        a = tuple(rmat(v[i], w[i]) for i in range(graph.n))
        b = tuple(rmat(w[i], v[i]) for i in range(graph.n))
        m = GradedModule(graph, q, v, w, B, a, b)
        if not mu_zero:
            return m
        if is_in_mu_zero(m):
            return GradedModule(graph, q, v, w, B, a, b, True)
    raise BudgetError("could not sample a module with vanishing moment map")


def all_modules(graph: QuiverGraph, v, w, q: int = 2, mu_zero: bool = True):
    """Every module with the given dimensions (optionally only those in mu^{-1}(0))."""
    v, w = tuple(v), tuple(w)
    arrows = graph.arrows()
    shapes = [(v[t], v[o]) for (o, t, _, _) in arrows]
    shapes += [(v[i], w[i]) for i in range(graph.n)]
    shapes += [(w[i], v[i]) for i in range(graph.n)]
    sizes = [r * c for r, c in shapes]
    total = sum(sizes)
    if q ** total > 10**7:
        raise BudgetError("too many modules to enumerate")
    na = len(arrows)
    for bits in product(range(q), repeat=total):
        mats = []
        pos = 0
        for (r, c), s in zip(shapes, sizes):
            chunk = bits[pos:pos + s]
            pos += s
            mats.append(tuple(tuple(chunk[i * c:(i + 1) * c]) for i in range(r)))
        B = tuple(mats[:na])
        a = tuple(mats[na:na + graph.n])
        b = tuple(mats[na + graph.n:])
        m = GradedModule(graph, q, v, w, B, a, b)
        if mu_zero:
            if not is_in_mu_zero(m):
                continue
            m = GradedModule(graph, q, v, w, B, a, b, True)
        yield m


def direct_sum(m1: GradedModule, m2: GradedModule) -> GradedModule:
    """Block direct sum; framings add."""
    if m1.graph != m2.graph or m1.q != m2.q:
        raise PreconditionError("direct sum needs the same graph and field")
    g, q = m1.graph, m1.q

    def block(X, Y, r1, c1, r2, c2):
        rows = [tuple(X[i]) + (0,) * c2 for i in range(r1)]
        rows += [(0,) * c1 + tuple(Y[i]) for i in range(r2)]
        return tuple(rows)

    v = tuple(x + y for x, y in zip(m1.v_dims, m2.v_dims))
    w = tuple(x + y for x, y in zip(m1.w_dims, m2.w_dims))
    B = tuple(
        block(X, Y, m1.v_dims[t], m1.v_dims[o], m2.v_dims[t], m2.v_dims[o])
        for (o, t, _, _), X, Y in zip(g.arrows(), m1.B, m2.B)
    )
    a = tuple(block(m1.a[i], m2.a[i], m1.v_dims[i], m1.w_dims[i], m2.v_dims[i], m2.w_dims[i]) for i in range(g.n))
    b = tuple(block(m1.b[i], m2.b[i], m1.w_dims[i], m1.v_dims[i], m2.w_dims[i], m2.v_dims[i]) for i in range(g.n))
    return GradedModule(g, q, v, w, B, a, b, m1.mu_verified and m2.mu_verified)


# ---------------------------------------------------------------------------
# submodules


@dataclass(frozen=True)
class Submodule:
    """A submodule ``(V', 0)`` or ``(V', W)``; ``basis`` holds one RREF basis per vertex."""

    basis: tuple
    w_flag: bool
    dims: tuple = field(compare=False)
    mask: int = field(compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "size", sum(self.dims) + (1 if self.w_flag else 0))

    def contains(self, other: "Submodule") -> bool:
        return (other.mask & ~self.mask) == 0 and (self.w_flag or not other.w_flag)

    def sort_key(self):
        return (self.basis, self.w_flag)

    def to_dict(self) -> dict:
        return {"basis": [[list(x) for x in bs] for bs in self.basis], "wFlag": self.w_flag}


class _Lattice:
    """All submodules of ``m`` (including zero) with precomputed containment."""

    def __init__(self, m: GradedModule):
        self.m = m
        q = m.q
        n = m.n
        cands = 1
        for k in range(n):
            cands *= count_subspaces(m.v_dims[k], q)
            if cands > SUBSPACE_BUDGET:
                raise BudgetError(f"more than {SUBSPACE_BUDGET} candidate graded subspaces")
        arrows = m.graph.arrows()
        offsets = []
        off = 0
        for k in range(n):
            offsets.append(off)
            off += q ** m.v_dims[k]
        per_vertex = []
        for k in range(n):
            lst = []
            for bs in all_subspaces(m.v_dims[k], q):
                sp = span(bs, m.v_dims[k], q)
                mask = 0
                for x in sp:
                    mask |= 1 << (offsets[k] + encode(x, q))
                in_ker_b = all(not any(matvec(m.b[k], x, q)) for x in bs)
                has_im_a = all(column(m.a[k], j) in sp for j in range(m.w_dims[k]))
                lst.append((bs, sp, mask, in_ker_b, has_im_a))
            per_vertex.append(lst)
        flags = (False, True) if m.has_w else (False,)
        subs = []
        for choice in product(*per_vertex):
            invariant = True
            for h, (o, t, _, _) in enumerate(arrows):
                sp_t = choice[t][1]
                if any(matvec(m.B[h], x, q) not in sp_t for x in choice[o][0]):
                    invariant = False
                    break
            if not invariant:
                continue
            basis = tuple(c[0] for c in choice)
            dims = tuple(len(c[0]) for c in choice)
            mask = 0
            for c in choice:
                mask |= c[2]
            for fl in flags:
                ok = all(c[4] for c in choice) if fl else all(c[3] for c in choice)
                if ok:
                    subs.append(Submodule(basis, fl, dims, mask))
        subs.sort(key=lambda s: (s.size, s.sort_key()))
        self.subs = subs
        self.zero = subs[0]
        self.whole = subs[-1]
        if self.zero.size != 0 or self.whole.dims != m.v_dims or self.whole.w_flag != m.has_w:
            raise ConsistencyError("submodule lattice is missing its bottom or top")
        self.index = {s: k for k, s in enumerate(subs)}

    def above(self, s: Submodule) -> list:
        """Submodules strictly containing ``s``."""
        return [t for t in self.subs if t.size > s.size and t.contains(s)]

    def between(self, s: Submodule, t: Submodule) -> list:
        """Submodules ``u`` with ``s < u < t``."""
        return [u for u in self.subs if s.size < u.size < t.size and t.contains(u) and u.contains(s)]


@lru_cache(maxsize=32)
def _lattice(m: GradedModule) -> _Lattice:
    # the lattice does not depend on zeta; callers sweep many parameters per module
    return _Lattice(m)


def enumerate_submodules(m: GradedModule) -> list:
    """All nonzero submodules, the whole module included."""
    lat = _lattice(m)
    return [s for s in lat.subs if s.size > 0]


def subquotient_slope(zt: StabilityParam, t: Submodule, s: Submodule) -> Fraction:
    return slope(zt, vsub(t.dims, s.dims), t.w_flag and not s.w_flag)


def _with_zeta_inf(zt: StabilityParam) -> StabilityParam:
    return zt if zt.zeta_inf is not None else StabilityParam(zt.zeta, Fraction(0))


class _Slopes:
    """Integer numerators and ranks of every submodule for one parameter.

    The slope of ``t / s`` is ``(num[t] - num[s]) / (den * (rank[t] - rank[s]))``;
    comparisons cross-multiply and never build fractions.
    """

    def __init__(self, lat: _Lattice, zt: StabilityParam):
        zt = _with_zeta_inf(zt)
        den = 1
        for x in zt.zeta + (zt.zeta_inf,):
            den = den * x.denominator // gcd(den, x.denominator)
        z = [int(x * den) for x in zt.zeta]
        zi = int(zt.zeta_inf * den)
        self.den = den
        self.num = {}
        for sub in lat.subs:
            self.num[sub] = sum(a * b for a, b in zip(z, sub.dims)) + (zi if sub.w_flag else 0)

    def key(self, t: Submodule, s: Submodule) -> tuple:
        return self.num[t] - self.num[s], t.size - s.size

    def value(self, t: Submodule, s: Submodule) -> Fraction:
        a, b = self.key(t, s)
        return Fraction(a, self.den * b)


def _verdict(lat: _Lattice, sl: _Slopes, bottom: Submodule, top: Submodule) -> str:
    a, b = sl.key(top, bottom)
    result = STABLE
    for u in lat.between(bottom, top):
        c, d = sl.key(u, bottom)
        if c * b > a * d:
            return UNSTABLE
        if c * b == a * d:
            result = SEMISTABLE
    return result


def stability_verdict(m: GradedModule, zt: StabilityParam) -> str:
    """``stable``, ``strictlySemistable`` or ``unstable``.

    Compares every proper nonzero submodule with the slope of the whole
    module, so the verdict does not depend on how ``zeta_inf`` is normalized
    as long as it is fixed.
    """
    lat = _lattice(m)
    if lat.whole.size == 0:
        raise PreconditionError("the zero module has no stability verdict")
    return _verdict(lat, _Slopes(lat, zt), lat.zero, lat.whole)


def is_semistable(verdict: str) -> bool:
    return verdict in (STABLE, SEMISTABLE)


# ---------------------------------------------------------------------------
# filtrations


@dataclass(frozen=True)
class HNFiltration:
    """``flag[0] = V  >  flag[1]  > ... > flag[N]  > 0``.

    ``gr_slopes[k]`` is the slope of ``flag[k] / flag[k+1]`` and increases
    strictly with ``k``. ``kw`` is the largest ``k`` whose ``flag[k]``
    carries ``W`` (``-1`` when the module has no framing).
    """

    flag: tuple
    kw: int
    gr_slopes: tuple

    @property
    def length(self) -> int:
        """``N``: the number of subquotients minus one, so 0 for a semistable module."""
        return len(self.flag) - 2

    def to_dict(self) -> dict:
        return {
            "dims": [list(s.dims) for s in self.flag],
            "wFlags": [s.w_flag for s in self.flag],
            "kW": self.kw,
            "grSlopes": [str(x) for x in self.gr_slopes],
        }


def hn_filtration(m: GradedModule, zt: StabilityParam) -> HNFiltration:
    """Harder-Narasimhan filtration by repeated maximal destabilizing subobjects.

    Starting from zero, the next step is the submodule ``T`` above the current
    one whose quotient slope is maximal, of maximal size among those, ties
    broken by the lexicographically smallest basis.
    """
    lat = _lattice(m)
    sl = _Slopes(lat, zt)
    chain = [lat.zero]
    slopes = []
    cur = lat.zero
    while cur != lat.whole:
        best = None
        for t in lat.above(cur):
            if best is None:
                best = t
                continue
            a, b = sl.key(t, cur)
            c, d = sl.key(best, cur)
            if a * d > c * b or (a * d == c * b and (t.size, _neg(t.sort_key())) > (best.size, _neg(best.sort_key()))):
                best = t
        slopes.append(sl.value(best, cur))
        chain.append(best)
        cur = best
    flag = tuple(reversed(chain))
    gr = tuple(reversed(slopes))
    if any(x >= y for x, y in zip(gr, gr[1:])):
        raise ConsistencyError("HN slopes are not strictly increasing")
    kw = max((k for k, s in enumerate(flag) if s.w_flag), default=-1)
    return HNFiltration(flag, kw, gr)


class _neg:
    """Reverses the order of a sort key."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k

    def __gt__(self, other):
        return self.k < other.k

    def __eq__(self, other):
        return self.k == other.k


def count_hn_flags(m: GradedModule, zt: StabilityParam) -> int:
    """Number of flags with semistable subquotients of strictly increasing slope.

    Exhaustive search over chains in the submodule lattice; the HN theorem
    says the answer is 1.
    """
    lat = _lattice(m)
    sl = _Slopes(lat, zt)
    above = {s: lat.above(s) for s in lat.subs}
    semi: dict = {}
    memo: dict = {}

    def count(s, bound):
        # bound: slope (num, rank) that the next step must stay strictly below
        if s == lat.whole:
            return 1
        key = (s, bound)
        if key in memo:
            return memo[key]
        total = 0
        for t in above[s]:
            a, b = sl.key(t, s)
            if bound is not None and a * bound[1] >= bound[0] * b:
                continue
            step = (s, t)
            if step not in semi:
                semi[step] = is_semistable(_verdict(lat, sl, s, t))
            if semi[step]:
                g = gcd(a, b)
                total += count(t, (a // g, b // g))
        memo[key] = total
        return total

    return count(lat.zero, None)


def subquotient(m: GradedModule, t: Submodule, s: Submodule) -> GradedModule:
    """The module ``t / s``, with framing ``W`` iff ``t`` has it and ``s`` does not."""
    q, n = m.q, m.n
    comp = []
    full = []
    for k in range(n):
        base = list(s.basis[k])
        extra = []
        for x in t.basis[k]:
            if rank(base + extra + [x], m.v_dims[k], q) > len(base) + len(extra):
                extra.append(x)
        comp.append(extra)
        full.append(base + extra)

    def coords(k, y):
        # solve y = sum c_j full[k][j], return complement coordinates
        basis = full[k]
        dim = m.v_dims[k]
        nb = len(basis)
        for cs in product(range(q), repeat=nb):
            vec = [0] * dim
            for c, b in zip(cs, basis):
                if c:
                    for j in range(dim):
                        vec[j] = (vec[j] + c * b[j]) % q
            if tuple(vec) == tuple(y):
                return tuple(cs[len(s.basis[k]):])
        raise ConsistencyError("vector outside the subquotient")

    has_w = t.w_flag and not s.w_flag
    vd = tuple(len(c) for c in comp)
    wd = tuple(m.w_dims) if has_w else (0,) * n
    B = []
    for h, (o, tt, _, _) in enumerate(m.graph.arrows()):
        cols = [coords(tt, matvec(m.B[h], x, q)) for x in comp[o]]
        B.append(tuple(tuple(cols[j][i] for j in range(vd[o])) for i in range(vd[tt])))
    a, b = [], []
    for k in range(n):
        if has_w:
            cols = [coords(k, column(m.a[k], j)) for j in range(wd[k])]
            a.append(tuple(tuple(cols[j][i] for j in range(wd[k])) for i in range(vd[k])))
            imgs = [matvec(m.b[k], x, q) for x in comp[k]]
            b.append(tuple(tuple(imgs[j][i] for j in range(vd[k])) for i in range(wd[k])))
        else:
            a.append(zeros(vd[k], 0))
            b.append(zeros(0, vd[k]))
    return GradedModule(m.graph, q, vd, wd, tuple(B), tuple(a), tuple(b))


def canonical_form(m: GradedModule):
    """Orbit representative of ``(B, a, b)`` under ``prod GL(V_i)``; ``None`` if too large."""
    q, n = m.q, m.n
    size = 1
    for d in m.v_dims:
        size *= gl_order(d, q)
        if size > GROUP_BUDGET:
            return None
    arrows = m.graph.arrows()
    best = None
    for gs in product(*(general_linear(d, q) for d in m.v_dims)):
        B = tuple(
            matmul(matmul(gs[t][0], m.B[h], q, m.v_dims[t], m.v_dims[t], m.v_dims[o]),
                   gs[o][1], q, m.v_dims[t], m.v_dims[o], m.v_dims[o])
            for h, (o, t, _, _) in enumerate(arrows)
        )
        a = tuple(matmul(gs[k][0], m.a[k], q, m.v_dims[k], m.v_dims[k], m.w_dims[k]) for k in range(n))
        b = tuple(matmul(m.b[k], gs[k][1], q, m.w_dims[k], m.v_dims[k], m.v_dims[k]) for k in range(n))
        key = (B, a, b)
        if best is None or key < best:
            best = key
    return best


def jh_factors(m: GradedModule, zt: StabilityParam, prefer: str = "min") -> list:
    """Jordan-Holder factors of a semistable module.

    Returns a sorted list of ``(dims, w_flag, iso)`` where ``iso`` is the
    canonical form of the factor (``None`` above the group budget).
    ``prefer`` picks the smallest (``min``) or largest (``max``) candidate
    among the minimal equal-slope steps, giving two independent flags.
    """
    lat = _lattice(m)
    sl = _Slopes(lat, zt)
    if not is_semistable(_verdict(lat, sl, lat.zero, lat.whole)):
        raise PreconditionError("Jordan-Holder factors need a semistable module")
    a, b = sl.key(lat.whole, lat.zero)
    cur = lat.zero
    factors = []
    while cur != lat.whole:
        cands = []
        for t in lat.above(cur):
            c, d = sl.key(t, cur)
            if c * b == a * d:
                cands.append(t)
        minimal = [t for t in cands if not any(u.size < t.size and t.contains(u) for u in cands)]
        minimal.sort(key=lambda t: (t.sort_key(), t.mask))
        nxt = minimal[0] if prefer == "min" else minimal[-1]
        if _verdict(lat, sl, cur, nxt) != STABLE:
            raise ConsistencyError("Jordan-Holder step is not stable")
        f = subquotient(m, nxt, cur)
        factors.append((f.v_dims, nxt.w_flag and not cur.w_flag, canonical_form(f)))
        cur = nxt
    factors.sort(key=lambda x: (x[0], x[1], repr(x[2])))
    return factors
