"""Affine type A crystals realized on colored partitions.

``B(Lambda_i0)`` is realized on r-regular partitions (no part repeated ``r``
or more times). The box in row ``a``, column ``c`` (both from 0) has residue
``(c - a + i0) mod r``. Kashiwara operators follow the signature rule:

* list the addable (``+``) and removable (``-``) ``i``-nodes by decreasing
  content ``c - a``;
* for a tensor product, concatenate the lists of the factors in order;
* cancel ``+-`` pairs repeatedly; what is left reads ``-...-+...+``;
* ``f_i`` adds the node of the leftmost remaining ``+``, ``e_i`` removes the
  node of the rightmost remaining ``-``.

Fock shifts ``T_{-n delta}`` are carried as partitions next to each factor.
They twist weights only and never block an operator.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConsistencyError, InconclusiveDepthError, PreconditionError
from .kmcore import cartan_from_graph, cycle_graph, unit, vadd, vscale, vsub
from .mult import freudenthal


def _check_r(r: int) -> None:
    if r < 2:
        raise PreconditionError("rank r must be at least 2")


@dataclass(frozen=True, order=True)
class ColoredPartition:
    """An element of ``B(Lambda_shift)`` for affine ``sl(r)``."""

    parts: tuple
    shift: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        object.__setattr__(self, "shift", int(self.shift) % int(self.r))
        if any(x <= 0 for x in self.parts) or any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise PreconditionError(f"{self.parts} is not a partition")
        if any(c >= self.r for c in Counter(self.parts).values()):
            raise PreconditionError(f"{self.parts} is not {self.r}-regular")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def residue(self, row: int, col: int) -> int:
        return (col - row + self.shift) % self.r

    def content(self) -> tuple:
        """Number of boxes of each residue."""
        out = [0] * self.r
        for a, length in enumerate(self.parts):
            for c in range(length):
                out[self.residue(a, c)] += 1
        return tuple(out)

    def signature(self, i: int) -> list:
        """``(content, sign, row)`` for the addable and removable ``i``-nodes, by decreasing content."""
        p = self.parts
        out = []
        for a in range(len(p) + 1):
            length = p[a] if a < len(p) else 0
            above = p[a - 1] if a > 0 else None
            if (above is None or above > length) and self.residue(a, length) == i:
                out.append((length - a, +1, a))
            below = p[a + 1] if a + 1 < len(p) else 0
            if length > below and self.residue(a, length - 1) == i:
                out.append((length - 1 - a, -1, a))
        out.sort(key=lambda t: -t[0])
        return out

    def add_box(self, row: int) -> "ColoredPartition":
        p = list(self.parts)
        if row == len(p):
            p.append(1)
        else:
            p[row] += 1
        return ColoredPartition(tuple(p), self.shift, self.r)

    def remove_box(self, row: int) -> "ColoredPartition":
        p = list(self.parts)
        p[row] -= 1
        if p[row] == 0:
            p.pop()
        return ColoredPartition(tuple(p), self.shift, self.r)

    def to_list(self) -> list:
        return list(self.parts)


@dataclass(frozen=True, order=True)
class TensorElement:
    """``b_1 (x) ... (x) b_l`` together with one Fock partition per factor."""

    factors: tuple
    fock: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        fock = tuple(tuple(x) for x in self.fock) if self.fock else tuple(() for _ in self.factors)
        if len(fock) != len(self.factors):
            raise PreconditionError("one Fock partition per factor is required")
        object.__setattr__(self, "fock", fock)
        if not self.factors:
            raise PreconditionError("a tensor element needs at least one factor")
        if len({f.r for f in self.factors}) != 1:
            raise PreconditionError("all factors must have the same rank")

    @property
    def r(self) -> int:
        return self.factors[0].r

    @property
    def residues(self) -> tuple:
        return tuple(f.shift for f in self.factors)

    def weight(self) -> "CrystalWeight":
        r = self.r
        v = (0,) * r
        for f in self.factors:
            v = vadd(v, f.content())
        framing = (0,) * r
        for f in self.factors:
            framing = vadd(framing, unit(r, f.shift))
        return CrystalWeight(len(self.factors), framing, v, sum(sum(x) for x in self.fock))

    def to_dict(self) -> dict:
        return {
            "factors": [f.to_list() for f in self.factors],
            "residues": list(self.residues),
            "fock": [list(x) for x in self.fock],
        }


@dataclass(frozen=True)
class CrystalWeight:
    """``sum Lambda_{mu_p} - sum v_i alpha_i - delta_shift * delta``."""

    level: int
    framing: tuple
    content: tuple
    delta_shift: int = 0

    def total_content(self) -> tuple:
        return vadd(self.content, (self.delta_shift,) * len(self.content))

    def pairing(self, i: int) -> int:
        """``<h_i, wt>`` on the cyclic Cartan matrix."""
        r = len(self.content)
        v = self.content
        if r == 2:
            cv = 2 * v[i] - 2 * v[1 - i]
        else:
            cv = 2 * v[i] - v[(i - 1) % r] - v[(i + 1) % r]
        return self.framing[i] - cv

    def to_dict(self) -> dict:
        return {"level": self.level, "w": list(self.framing), "v": list(self.content),
                "deltaShift": self.delta_shift}


def as_tensor(x) -> TensorElement:
    return x if isinstance(x, TensorElement) else TensorElement((x,))


def _reduced(elem: TensorElement, i: int) -> tuple:
    """Uncancelled entries ``(minus, plus)`` as lists of ``(factor, row)``."""
    plus: list = []
    minus: list = []
    for k, f in enumerate(elem.factors):
        for _, sign, row in f.signature(i):
            if sign > 0:
                plus.append((k, row))
            elif plus:
                plus.pop()
            else:
                minus.append((k, row))
    return minus, plus


def kashiwara(elem, i: int, direction: str):
    """Apply ``e_i`` or ``f_i``; returns ``None`` when the operator annihilates."""
    elem = as_tensor(elem)
    if not 0 <= i < elem.r:
        raise PreconditionError(f"residue {i} out of range")
    minus, plus = _reduced(elem, i)
    if direction == "f":
        if not plus:
            return None
        k, row = plus[0]
        new = elem.factors[k].add_box(row)
    elif direction == "e":
        if not minus:
            return None
        k, row = minus[-1]
        new = elem.factors[k].remove_box(row)
    else:
        raise PreconditionError("direction must be 'e' or 'f'")
    factors = elem.factors[:k] + (new,) + elem.factors[k + 1:]
    return TensorElement(factors, elem.fock)


def epsilon(elem, i: int) -> int:
    return len(_reduced(as_tensor(elem), i)[0])


def phi(elem, i: int) -> int:
    return len(_reduced(as_tensor(elem), i)[1])


def is_highest(elem, I: Iterable[int] | None = None) -> bool:
    elem = as_tensor(elem)
    idx = range(elem.r) if I is None else I
    return all(epsilon(elem, i) == 0 for i in idx)


@lru_cache(maxsize=128)
def _b_lambda(r: int, i0: int, depth: int) -> tuple:
    seen = {ColoredPartition((), i0, r)}
    layer = list(seen)
    for _ in range(depth):
        nxt = set()
        for b in layer:
            for i in range(r):
                y = kashiwara(b, i, "f")
                if y is not None:
                    nxt.add(y.factors[0])
        nxt -= seen
        seen |= nxt
        layer = sorted(nxt)
    return tuple(sorted(seen, key=lambda b: (b.size, b.parts)))


def crystal_b_lambda(r: int, i0: int, depth: int) -> list:
    """Elements of ``B(Lambda_i0)`` with at most ``depth`` boxes, as the closure of the empty partition under ``f``."""
    _check_r(r)
    if depth < 0:
        raise PreconditionError("depth must be nonnegative")
    return list(_b_lambda(r, i0 % r, depth))


def character(elements: Iterable) -> Counter:
    """Element counts per total content vector."""
    out: Counter = Counter()
    for x in elements:
        out[as_tensor(x).weight().total_content()] += 1
    return out


def partitions_of(n: int, max_part: int | None = None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class TensorCrystal:
    """All tensor elements with total content height at most ``depth``."""

    r: int
    residues: tuple
    depth: int
    elements: tuple

    def by_content(self) -> dict:
        out: dict = {}
        for x in self.elements:
            out.setdefault(x.weight().total_content(), []).append(x)
        return out

    def __len__(self) -> int:
        return len(self.elements)


def tensor_crystal(r: int, residues: Sequence[int], depth: int) -> TensorCrystal:
    """``(x)_p (B(Lambda_{mu_p}) (+) Fock shifts)`` truncated at total height ``depth``."""
    _check_r(r)
    residues = tuple(int(m) % r for m in residues)
    if not residues:
        raise PreconditionError("at least one factor is required")
    return _tensor_crystal(r, residues, depth)


@lru_cache(maxsize=64)
def _tensor_crystal(r: int, residues: tuple, depth: int) -> TensorCrystal:
    # each factor: (element, fock partition, height)
    pieces = []
    for m in residues:
        opts = []
        for b in _b_lambda(r, m, depth):
            for n in range((depth - b.size) // r + 1):
                for lam in partitions_of(n):
                    opts.append((b, lam, b.size + r * n))
        pieces.append(opts)
    out = []

    def rec(k: int, used: int, factors: list, fock: list):
        if k == len(pieces):
            out.append(TensorElement(tuple(factors), tuple(fock)))
            return
        for b, lam, h in pieces[k]:
            if used + h <= depth:
                rec(k + 1, used + h, factors + [b], fock + [lam])

    rec(0, 0, [], [])
    out.sort(key=lambda x: (x.weight().total_content(), x))
    return TensorCrystal(r, residues, depth, tuple(out))


def levi_highest(crystal: TensorCrystal, I0: Iterable[int]) -> list:
    """Elements with ``epsilon_i = 0`` for all ``i`` in ``I0``, each with its weight."""
    I0 = sorted(set(I0))
    return [(x, x.weight()) for x in crystal.elements if is_highest(x, I0)]


def euler_coefficients(n: int) -> list:
    """Coefficients of ``prod_{k >= 1} (1 - q^k)`` up to ``q^n``."""
    c = [0] * (n + 1)
    c[0] = 1
    for k in range(1, n + 1):
        for j in range(n, k - 1, -1):
            c[j] -= c[j - k]
    return c


def mv_count(r: int, residues: Sequence[int], v: Sequence[int], depth: int) -> int:
    """Number of ``gl(r)``-highest components of weight ``w - v`` in the tensor crystal.

    Every ``gl(r)``-highest component contributes one ``sl(r)``-highest
    element for each partition of its Heisenberg degree. The count of
    highest elements (Fock shifts included) is divided by that generating
    function, i.e. multiplied by ``prod (1 - q^k)`` in ``q = e^{-delta}``.
    """
    v = tuple(int(x) for x in v)
    if len(v) != r:
        raise PreconditionError("v has the wrong length")
    if any(x < 0 for x in v):
        return 0
    if depth < sum(v):
        raise InconclusiveDepthError(f"depth {depth} < {sum(v)}")
    cr = tensor_crystal(r, residues, sum(v))
    groups = cr.by_content()
    e = euler_coefficients(min(v))
    total = 0
    for k, ek in enumerate(e):
        if ek:
            u = vsub(v, (k,) * r)
            total += ek * sum(1 for x in groups.get(u, ()) if is_highest(x))
    if total < 0:
        raise ConsistencyError(f"negative highest-weight count at {v}")
    return total


def cyclic_cartan(r: int):
    _check_r(r)
    return cartan_from_graph(cycle_graph(r))


def freudenthal_character(r: int, i0: int, depth: int) -> dict:
    """Nonzero weight multiplicities of ``V(Lambda_i0)`` keyed by content."""
    table = freudenthal(unit(r, i0 % r), cyclic_cartan(r), depth)
    return dict(table.mults)


def tensor_character_expected(r: int, residues: Sequence[int], depth: int) -> Counter:
    """Product of factor characters times ``prod (1 - q^n)^{-l}``, truncated at height ``depth``."""
    C = cyclic_cartan(r)
    cur: Counter = Counter({(0,) * r: 1})
    for m in residues:
        table = freudenthal(unit(r, m % r), C, depth)
        fock: Counter = Counter()
        for n in range(depth // r + 1):
            fock[vscale(n, (1,) * r)] = sum(1 for _ in partitions_of(n))
        factor: Counter = Counter()
        for a, ca in table.mults.items():
            for b, cb in fock.items():
                s = vadd(a, b)
                if sum(s) <= depth:
                    factor[s] += ca * cb
        nxt: Counter = Counter()
        for a, ca in cur.items():
            for b, cb in factor.items():
                s = vadd(a, b)
                if sum(s) <= depth:
                    nxt[s] += ca * cb
        cur = nxt
    return cur


__all__ = [
    "ColoredPartition",
    "CrystalWeight",
    "TensorCrystal",
    "TensorElement",
    "character",
    "crystal_b_lambda",
    "cyclic_cartan",
    "epsilon",
    "euler_coefficients",
    "freudenthal_character",
    "is_highest",
    "kashiwara",
    "levi_highest",
    "mv_count",
    "phi",
    "plain_highest_count",
    "tensor_character_expected",
    "tensor_crystal",
]


def plain_highest_count(r: int, residues: Sequence[int], v: Sequence[int]) -> int:
    """Highest elements of content ``v`` in ``(x)_p B(Lambda_{mu_p})`` without Fock shifts."""
    v = tuple(v)
    if any(x < 0 for x in v):
        return 0
    cr = tensor_crystal(r, residues, sum(v))
    return sum(1 for x in cr.by_content().get(v, ())
               if not any(x.fock) and is_highest(x))
