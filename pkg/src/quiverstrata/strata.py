"""Stratum indices for Levi and ALE faces and the local-model data around a stratum."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConsistencyError, PreconditionError
from .kmcore import (
    CartanMatrix,
    box,
    cartan_type,
    components,
    delta,
    dot,
    is_affine_type,
    pairings,
    unit,
    vadd,
    vscale,
    vsub,
)
from .nonempty import (
    affine_stratum_nonempty,
    cb_stable_nonempty,
    highest_root,
    i00_components,
    levi_stratum_nonempty,
)
from .stability import levi_face


def partitions(k: int, max_part: int | None = None):
    """Partitions of ``k`` in reverse lexicographic order."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class StratumIndex:
    """``(v0, lambda, m, n)`` with ``v = v0 + |lambda| delta + sum m_i e_i + sum n_c (delta - alpha_h^c)``.

    ``m_vals`` and ``n_vals`` are tuples of pairs keyed by vertex and by
    component (a sorted tuple of vertices).
    """

    v0: tuple
    lam: tuple
    m_vals: tuple
    n_vals: tuple

    def total(self, C: CartanMatrix) -> tuple:
        d = delta(C)
        v = vadd(self.v0, vscale(sum(self.lam), d))
        for i, m in self.m_vals:
            v = vadd(v, vscale(m, unit(C.n, i)))
        for c, n in self.n_vals:
            v = vadd(v, vscale(n, vsub(d, highest_root(C, c))))
        return v

    def to_dict(self) -> dict:
        return {
            "v0": list(self.v0),
            "lambda": list(self.lam),
            "m": {str(i): m for i, m in self.m_vals},
            "n": {",".join(map(str, c)): n for c, n in self.n_vals},
        }


def enumerate_strata_levi(C: CartanMatrix, v: Sequence[int], w: Sequence[int], I0: Iterable[int],
                          depth: int | None = None) -> list:
    """Strata of the Levi face of ``I0``: pairs ``(v0, residual)``.

    ``residual`` is ``v - v0`` on ``I0`` when the residual stratum lives on a
    nontrivial subgraph, and ``None`` when the subgraph is of finite type and
    the residual stratum is the single point (always the case for affine
    graphs with ``I0 != I``).
    """
    v, w, I0 = tuple(v), tuple(w), frozenset(I0)
    if not C.is_loop_free():
        raise PreconditionError("Levi strata are implemented for loop-free graphs")
    if not any(w):
        raise PreconditionError("w must be nonzero")
    affine = is_affine_type(C)
    zeta = levi_face(I0, C.n).sample_zeta
    sub_finite = all(cartan_type(C.restrict(c)) == "finite" for c in components(C, I0)) if I0 else True
    out = []
    for v0 in box(v):
        diff = vsub(v, v0)
        if any(diff[i] for i in range(C.n) if i not in I0):
            continue
        if affine:
            ok = levi_stratum_nonempty(C, v0, w, I0, depth)
        else:
            ok = cb_stable_nonempty(C, v0, w, zeta, depth).nonempty
        if ok:
            out.append((v0, None if sub_finite else diff))
    return out


def enumerate_strata_ale(C: CartanMatrix, v: Sequence[int], w: Sequence[int], I00: Iterable[int],
                         depth: int | None = None) -> list:
    """All stratum indices of ``(v, w)`` at the ALE face of ``I00``.

    Returns
    -------
    list of StratumIndex
        Sorted by ``v0`` then partition.
    """
    if not is_affine_type(C):
        raise PreconditionError("graph must be of affine type")
    v, w, I00 = tuple(v), tuple(w), tuple(sorted(set(I00)))
    if not any(w):
        raise PreconditionError("w must be nonzero")
    d = delta(C)
    comps = i00_components(C, I00)
    bvecs = [vsub(d, highest_root(C, c)) for c in comps]
    pieces = [d] + [unit(C.n, i) for i in I00] + bvecs
    out = []

    def rec(k: int, rest: tuple, coeffs: list):
        if k == len(pieces):
            if affine_stratum_nonempty(C, rest, w, I00, depth):
                size = coeffs[0]
                m_vals = tuple(zip(I00, coeffs[1:1 + len(I00)]))
                n_vals = tuple(zip(comps, coeffs[1 + len(I00):]))
                for lam in partitions(size):
                    out.append(StratumIndex(rest, lam, m_vals, n_vals))
            return
        piece = pieces[k]
        c = 0
        cur = rest
        while all(x >= 0 for x in cur):
            rec(k + 1, cur, coeffs + [c])
            c += 1
            cur = vsub(cur, piece)

    rec(0, v, [])
    out.sort(key=lambda s: (s.v0, s.m_vals, s.n_vals, tuple(-x for x in s.lam)))
    for s in out:
        if s.total(C) != v:
            raise ConsistencyError("stratum index does not reassemble to v")
    return out


@dataclass(frozen=True)
class LocalModel:
    """Quiver data ``(C_hat, v_hat, w_hat)`` of the normal slice to a stratum."""

    hat_cartan: tuple
    hat_v: tuple
    hat_w: tuple

    def blocks(self) -> list:
        n = len(self.hat_v)
        return components(_as_cartan(self.hat_cartan), range(n)) if n else []

    def block_types(self) -> list:
        C = _as_cartan(self.hat_cartan)
        return [cartan_type(C.restrict(b)) for b in self.blocks()]

    def to_dict(self) -> dict:
        return {"hatCartan": [list(r) for r in self.hat_cartan], "hatV": list(self.hat_v),
                "hatW": list(self.hat_w)}


def _as_cartan(entries) -> CartanMatrix:
    return CartanMatrix(entries)


def local_model(C: CartanMatrix, v0: Sequence[int], pieces: Sequence[tuple], w: Sequence[int]) -> LocalModel:
    """Local model around the stratum of ``v0 + sum hat_v_k v^k``.

    Parameters
    ----------
    C : CartanMatrix
    v0 : sequence of int
        The framed piece.
    pieces : sequence of (vector, multiplicity)
        The unframed stable summands ``v^k`` with their multiplicities.
    w : sequence of int

    Returns
    -------
    LocalModel
        ``c_hat[k][l] = t(v^k) C v^l`` and ``w_hat[k] = t(v^k) (w - C v0)``.
    """
    v0, w = tuple(v0), tuple(w)
    vecs = [tuple(p[0]) for p in pieces]
    mults = tuple(int(p[1]) for p in pieces)
    hat_c = tuple(tuple(C.form(a, b) for b in vecs) for a in vecs)
    base = pairings(C, w, v0)
    hat_w = tuple(dot(a, base) for a in vecs)
    lm = LocalModel(hat_c, mults, hat_w)
    check_local_identity(C, v0, pieces, w, lm)
    return lm


def check_local_identity(C: CartanMatrix, v0, pieces, w, lm: LocalModel) -> None:
    """``w_hat_k - sum_l c_hat_kl v_hat_l == t(v^k)(w - C v)`` for the total ``v``."""
    total = tuple(v0)
    for vec, mult in pieces:
        total = vadd(total, vscale(mult, vec))
    target = pairings(C, w, total)
    for k, (vec, _) in enumerate(pieces):
        lhs = lm.hat_w[k] - sum(lm.hat_cartan[k][l] * lm.hat_v[l] for l in range(len(pieces)))
        if lhs != dot(vec, target):
            raise ConsistencyError(f"local model identity fails at piece {k}")


def stratum_pieces(C: CartanMatrix, s: StratumIndex) -> list:
    """Unframed summands of a stratum: one Jordan piece per part of lambda, then S_i, then B_c."""
    d = delta(C)
    pieces = [(d, part) for part in s.lam]
    pieces += [(unit(C.n, i), m) for i, m in s.m_vals]
    pieces += [(vsub(d, highest_root(C, c)), n) for c, n in s.n_vals]
    return pieces


def stratum_local_model(C: CartanMatrix, s: StratumIndex, w: Sequence[int]) -> LocalModel:
    return local_model(C, s.v0, stratum_pieces(C, s), w)


def stratum_dim(C: CartanMatrix, s: StratumIndex, w: Sequence[int]) -> int:
    """Dimension of the stratum: the stable locus of ``v0`` times the symmetric-product stratum."""
    return dot(s.v0, vsub(vscale(2, w), C.apply(s.v0))) + 2 * len(s.lam)


def fiber_dim_bound(ambient_dim: int, stratum_dim_: int) -> int:
    """``(ambient - stratum) / 2``; the two dimensions must have the same parity."""
    if ambient_dim < stratum_dim_:
        raise PreconditionError("stratum dimension exceeds the ambient dimension")
    if (ambient_dim - stratum_dim_) % 2:
        raise PreconditionError("ambient and stratum dimensions have different parity")
    return (ambient_dim - stratum_dim_) // 2


__all__ = [
    "LocalModel",
    "StratumIndex",
    "enumerate_strata_ale",
    "enumerate_strata_levi",
    "fiber_dim_bound",
    "local_model",
    "partitions",
    "stratum_dim",
    "stratum_local_model",
    "stratum_pieces",
]
