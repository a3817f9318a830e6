"""Graphs, symmetric Cartan matrices, dimension vectors and weights.

Dimension vectors are plain tuples of ints aligned with the vertex order of
the graph they belong to. Vertex labels are strings; every algorithm works
with vertex indices internally.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import PreconditionError

Vec = tuple  # tuple[int, ...]


# ---------------------------------------------------------------------------
# vector helpers


def vadd(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def vscale(k: int, x: Sequence[int]) -> Vec:
    return tuple(k * a for a in x)


def vle(x: Sequence[int], y: Sequence[int]) -> bool:
    """Componentwise ``x <= y``."""
    return all(a <= b for a, b in zip(x, y))


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def unit(n: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(n))


def zero(n: int) -> Vec:
    return (0,) * n


def box(v: Sequence[int]) -> Iterable[Vec]:
    """All nonnegative integer vectors ``u <= v``, in lexicographic order."""
    return product(*(range(a + 1) for a in v))


def vectors_of_height(n: int, total: int) -> Iterable[Vec]:
    """All nonnegative vectors of length ``n`` with entry sum ``total``."""
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in vectors_of_height(n - 1, total - first):
            yield (first,) + rest


def vectors_up_to(n: int, depth: int) -> list[Vec]:
    """All nonnegative vectors of length ``n`` with entry sum at most ``depth``, by height."""
    out: list[Vec] = []
    for h in range(depth + 1):
        out.extend(sorted(vectors_of_height(n, h)))
    return out


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class QuiverGraph:
    """A finite graph with optional orientation.

    Parameters
    ----------
    vertices : tuple of str
        Vertex labels, in the order used by all dimension vectors.
    edges : tuple of (str, str)
        Unordered edges; repetition encodes multiplicity and ``(i, i)`` is a loop.
    orientation : tuple of (str, str), optional
        One directed pair per edge. When omitted each edge is oriented as listed.
    """

    vertices: tuple
    edges: tuple = ()
    orientation: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(x) for x in self.vertices))
        object.__setattr__(self, "edges", tuple((str(a), str(b)) for a, b in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise PreconditionError("duplicate vertex labels")
        labels = set(self.vertices)
        for a, b in self.edges:
            if a not in labels or b not in labels:
                raise PreconditionError(f"edge ({a},{b}) has an endpoint outside the vertex set")
        if self.orientation is not None:
            orient = tuple((str(a), str(b)) for a, b in self.orientation)
            object.__setattr__(self, "orientation", orient)
            want = Counter(frozenset(e) for e in self.edges)
            got = Counter(frozenset(e) for e in orient)
            if want != got:
                raise PreconditionError("orientation must cover every edge exactly once")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, label) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise PreconditionError(f"unknown vertex {label!r}") from None

    def indices(self, labels: Iterable) -> frozenset:
        return frozenset(self.index(x) for x in labels)

    def loops(self, i: int) -> int:
        lab = self.vertices[i]
        return sum(1 for a, b in self.edges if a == lab and b == lab)

    def is_loop_free(self) -> bool:
        return all(a != b for a, b in self.edges)

    def oriented_edges(self) -> tuple:
        """Directed edges (out, in) as index pairs, one per edge of the orientation Omega."""
        src = self.orientation if self.orientation is not None else self.edges
        return tuple((self.index(a), self.index(b)) for a, b in src)

    def arrows(self) -> tuple:
        """The doubled arrow set H as ``(out, in, eps, partner)`` tuples.

        Arrow ``2k`` is the k-th oriented edge (``eps = +1``) and ``2k+1`` its
        reverse (``eps = -1``); ``partner`` is the index of the reversed arrow.
        """
        out = []
        for k, (a, b) in enumerate(self.oriented_edges()):
            out.append((a, b, 1, 2 * k + 1))
            out.append((b, a, -1, 2 * k))
        return tuple(out)


@dataclass(frozen=True)
class CartanMatrix:
    """Symmetric generalized Cartan matrix ``C = 2 Id - A``."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise PreconditionError("Cartan matrix must be square")
            if row[i] > 2 or (2 - row[i]) % 2:
                raise PreconditionError("diagonal entries must be 2 - 2*(number of loops)")
            for j in range(n):
                if rows[j][i] != row[j]:
                    raise PreconditionError("Cartan matrix must be symmetric")
                if i != j and row[j] > 0:
                    raise PreconditionError("off-diagonal entries must be <= 0")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def apply(self, v: Sequence) -> Vec:
        return tuple(dot(row, v) for row in self.entries)

    def form(self, x: Sequence, y: Sequence):
        """The symmetric bilinear form ``tx C y``."""
        return dot(x, self.apply(y))

    def is_loop_free(self) -> bool:
        return all(self.entries[i][i] == 2 for i in range(self.n))

    def restrict(self, subset: Sequence[int]) -> "CartanMatrix":
        idx = list(subset)
        return CartanMatrix(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def tolist(self) -> list:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class AffineWeight:
    """The weight ``w - v`` with ``w = sum w_i Lambda_i`` and ``v = sum v_i alpha_i``.

    ``extra_degree`` carries an explicit shift of the pairing with ``d`` on top
    of the ``-v_0`` coming from the content. Fundamental weights pair to zero
    with ``d``.
    """

    framing: tuple
    content: tuple
    extra_degree: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "framing", tuple(int(x) for x in self.framing))
        object.__setattr__(self, "content", tuple(int(x) for x in self.content))
        object.__setattr__(self, "extra_degree", Fraction(self.extra_degree))
        if len(self.framing) != len(self.content):
            raise PreconditionError("framing and content must have equal length")

    def d_value(self, zero_vertex: int = 0) -> Fraction:
        return self.extra_degree - self.content[zero_vertex]


# ---------------------------------------------------------------------------
# core operations


def cartan_from_graph(graph: QuiverGraph) -> CartanMatrix:
    n = graph.n
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for a, b in graph.edges:
        i, j = graph.index(a), graph.index(b)
        if i == j:
            m[i][i] -= 2
        else:
            m[i][j] -= 1
            m[j][i] -= 1
    return CartanMatrix(tuple(tuple(r) for r in m))


def p_value(x: Sequence[int], C: CartanMatrix):
    """``1 - (tx C x)/2``; an int whenever ``tx C x`` is even."""
    q = C.form(x, x)
    if q % 2 == 0:
        return 1 - q // 2
    return 1 - Fraction(q, 2)


def pairing(C: CartanMatrix, i: int, wv: AffineWeight) -> int:
    """``<h_i, w - v> = w_i - (Cv)_i``."""
    return wv.framing[i] - dot(C.entries[i], wv.content)


def pairings(C: CartanMatrix, w: Sequence[int], v: Sequence[int]) -> Vec:
    """All ``w_i - (Cv)_i`` at once."""
    return vsub(w, C.apply(v))


def expected_dim(v: Sequence[int], w: Sequence[int], C: CartanMatrix) -> int:
    if any(w):
        return dot(v, vsub(vscale(2, w), C.apply(v)))
    return 2 - C.form(v, v)


@dataclass(frozen=True)
class ExtendedQuiver:
    """The graph with a new vertex ``inf`` (last) joined to ``i`` by ``w_i`` edges."""

    base: QuiverGraph
    framing: tuple
    graph: QuiverGraph

    @property
    def infinity(self) -> int:
        return self.graph.n - 1


INFINITY_LABEL = "inf"


def extend_quiver(graph: QuiverGraph, w: Sequence[int]) -> ExtendedQuiver:
    if len(w) != graph.n or any(x < 0 for x in w):
        raise PreconditionError("framing must be a nonnegative vector on the vertex set")
    label = INFINITY_LABEL
    while label in graph.vertices:
        label += "'"
    edges = list(graph.edges)
    for lab, k in zip(graph.vertices, w):
        edges.extend([(label, lab)] * k)
    orient = None
    if graph.orientation is not None:
        orient = tuple(graph.orientation) + tuple(e for e in edges[len(graph.edges):])
    ext = QuiverGraph(graph.vertices + (label,), tuple(edges), orient)
    return ExtendedQuiver(graph, tuple(w), ext)


def extend_cartan(C: CartanMatrix, w: Sequence[int]) -> CartanMatrix:
    """Cartan matrix of the extended graph, with the new vertex last."""
    n = C.n
    rows = [list(C.entries[i]) + [-w[i]] for i in range(n)]
    rows.append([-x for x in w] + [2])
    return CartanMatrix(tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# type detection


def _det(m: list) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def nullspace(m: Sequence[Sequence[int]]) -> list:
    """Basis of the rational kernel of an integer matrix."""
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = len(a), (len(a[0]) if a else 0)
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if a[k][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for k in range(rows):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            vec[pc] = -a[k][fc]
        basis.append(vec)
    return basis


def components(C: CartanMatrix, subset: Iterable[int] | None = None) -> list:
    """Connected components of the graph of ``C`` restricted to ``subset``.

    Components are returned as sorted tuples, ordered by their smallest vertex.
    """
    verts = sorted(set(range(C.n)) if subset is None else set(subset))
    seen: set = set()
    out = []
    for s in verts:
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in verts:
                if j not in seen and C.entries[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        out.append(tuple(sorted(comp)))
    return out


def is_finite_type(C: CartanMatrix) -> bool:
    """Positive definite, tested by leading principal minors."""
    m = C.tolist()
    return all(_det([row[:k] for row in m[:k]]) > 0 for k in range(1, C.n + 1))


def delta(C: CartanMatrix) -> Vec:
    """The primitive positive kernel vector of an affine Cartan matrix, with 0-entry 1."""
    if not is_affine_type(C):
        raise PreconditionError("graph is not of affine type")
    (vec,) = nullspace(C.entries)
    scale = vec[0]
    vec = [x / scale for x in vec]
    den = 1
    for x in vec:
        den = den * x.denominator // _gcd(den, x.denominator)
    out = tuple(int(x * den) for x in vec)
    if out[0] != 1:
        raise PreconditionError("kernel vector does not have 0-entry 1")
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def is_affine_type(C: CartanMatrix) -> bool:
    """Connected, positive semidefinite with a one-dimensional kernel.

    For an indecomposable generalized Cartan matrix this is equivalent to the
    kernel being spanned by a strictly positive vector.
    """
    if C.n == 0 or len(components(C)) != 1:
        return False
    ker = nullspace(C.entries)
    if len(ker) != 1:
        return False
    vec = ker[0]
    sign = 1 if vec[0] > 0 else -1
    if not all(sign * x > 0 for x in vec):
        return False
    # every proper principal submatrix of an affine matrix is finite type
    return all(is_finite_type(C.restrict([j for j in range(C.n) if j != i])) for i in range(C.n))


def cartan_type(C: CartanMatrix) -> str:
    """One of ``finite``, ``affine``, ``jordan`` or ``indefinite`` for a connected C."""
    if C.n == 1 and C.entries[0][0] == 0:
        return "jordan"
    if is_finite_type(C):
        return "finite"
    if is_affine_type(C):
        return "affine"
    return "indefinite"


# ---------------------------------------------------------------------------
# standard graphs


def path_graph(n: int) -> QuiverGraph:
    """Finite type A_n with vertices ``"1" .. "n"``."""
    labels = tuple(str(i) for i in range(1, n + 1))
    return QuiverGraph(labels, tuple((labels[i], labels[i + 1]) for i in range(n - 1)))


def cycle_graph(r: int) -> QuiverGraph:
    """Affine type A_{r-1}: a cycle on ``"0" .. "r-1"``; ``r = 2`` gives a double edge."""
    if r < 2:
        raise PreconditionError("affine A needs at least two vertices")
    labels = tuple(str(i) for i in range(r))
    return QuiverGraph(labels, tuple((labels[i], labels[(i + 1) % r]) for i in range(r)))


def jordan_quiver() -> QuiverGraph:
    return QuiverGraph(("0",), (("0", "0"),))


def affine_d_graph(n: int) -> QuiverGraph:
    """Affine D_n (n >= 4) with the extending vertex ``"0"`` attached to vertex ``"2"``."""
    if n < 4:
        raise PreconditionError("affine D_n needs n >= 4")
    labels = tuple(str(i) for i in range(n + 1))
    edges = [("0", "2"), ("1", "2")]
    edges += [(str(i), str(i + 1)) for i in range(2, n - 2)]
    edges += [(str(n - 2), str(n - 1)), (str(n - 2), str(n))]
    return QuiverGraph(labels, tuple(edges))
