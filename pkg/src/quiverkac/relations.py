"""Linear relations ``R ⊆ V ⊕ W`` over a finite field.

A relation is stored as a :class:`~quiverkac.gf.Subspace` of
``F^(dim_v + dim_w)``; the first ``dim_v`` coordinates are the ``V`` block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .gf import FieldSpec, Subspace, enumerate_subspaces, inverse, nullspace, pivot_columns, rank, rref


class RelationType(NamedTuple):
    r: int
    s: int


TYPES = (RelationType(0, 0), RelationType(0, 1), RelationType(1, 0), RelationType(1, 1))


@dataclass(frozen=True)
class RelationInvariants:
    ker: Subspace
    dom: Subspace  # domain of definition
    ind: Subspace
    ima: Subspace

    @property
    def rank(self) -> int:
        return self.dom.dim - self.ker.dim


@dataclass(frozen=True)
class LinearRelation:
    dim_v: int
    dim_w: int
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.dim_v + self.dim_w:
            raise DomainError(
                f"relation space has ambient dimension {self.space.ambient_dim}, "
                f"expected {self.dim_v} + {self.dim_w}"
            )

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    @classmethod
    def from_rows(cls, F: FieldSpec, dim_v: int, dim_w: int, rows) -> "LinearRelation":
        return cls(dim_v, dim_w, Subspace.span(F, rows, dim_v + dim_w))

    @classmethod
    def graph(cls, F: FieldSpec, A) -> "LinearRelation":
        """``{(v, A v)}`` for ``A`` of shape ``(dim_w, dim_v)``."""
        A = np.asarray(A, dtype=np.int64)
        w, v = A.shape
        return cls.from_rows(F, v, w, np.hstack([np.eye(v, dtype=np.int64), A.T]))

    @classmethod
    def full(cls, F: FieldSpec, dim_v: int, dim_w: int) -> "LinearRelation":
        return cls(dim_v, dim_w, Subspace.full(F, dim_v + dim_w))

    @classmethod
    def zero(cls, F: FieldSpec, dim_v: int, dim_w: int) -> "LinearRelation":
        return cls(dim_v, dim_w, Subspace.zero(F, dim_v + dim_w))

    def opposite(self) -> "LinearRelation":
        M = self.space.matrix
        swapped = np.hstack([M[:, self.dim_v :], M[:, : self.dim_v]])
        return LinearRelation.from_rows(self.field, self.dim_w, self.dim_v, swapped)

    def blocks(self) -> tuple[np.ndarray, np.ndarray]:
        M = self.space.matrix
        return M[:, : self.dim_v], M[:, self.dim_v :]

    def contains(self, v, w) -> bool:
        return np.concatenate([np.asarray(v), np.asarray(w)]) in self.space


def relation_invariants(R: LinearRelation) -> RelationInvariants:
    F = R.field
    X, Y = R.blocks()
    k = X.shape[0]

    def _restricted(kill, keep, n):
        # span of c @ keep over all c with c @ kill = 0
        if k == 0:
            return Subspace.zero(F, n)
        cs = nullspace(F, kill.T.reshape(kill.shape[1], k)).matrix
        if cs.shape[0] == 0:
            return Subspace.zero(F, n)
        return Subspace.span(F, F.matmul(cs, keep), n)

    return RelationInvariants(
        ker=_restricted(Y, X, R.dim_v),
        dom=Subspace.span(F, X, R.dim_v),
        ind=_restricted(X, Y, R.dim_w),
        ima=Subspace.span(F, Y, R.dim_w),
    )


def relation_rank(R: LinearRelation) -> int:
    return relation_invariants(R).rank


def check_type(R: LinearRelation, t) -> bool:
    """Is ``R`` an equipped relation of type ``t = (r, s)``?"""
    r, s = t
    inv = relation_invariants(R)
    ok_v = inv.ker.dim == 0 if r == 0 else inv.dom.dim == R.dim_v
    ok_w = inv.ind.dim == 0 if s == 0 else inv.ima.dim == R.dim_w
    return ok_v and ok_w


def _rank_factor(F: FieldSpec, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``f = C @ R`` with ``R`` the nonzero rows of rref(f) and ``C`` the pivot columns of ``f``."""
    rows, cols = f.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, 0), dtype=np.int64), np.zeros((0, cols), dtype=np.int64)
    Rf, d = rref(F, f)
    piv = pivot_columns(Rf[:d])
    return f[:, piv].reshape(rows, d), Rf[:d]


def _check_pair(F, t, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.ndim != 2 or b.ndim != 2:
        raise DomainError("configuration maps must be 2-d matrices")
    r, s = t
    # a: U -> V (r=0) or V -> U (r=1); b: U -> W (s=0) or W -> U (s=1)
    d_a = a.shape[1] if r == 0 else a.shape[0]
    d_b = b.shape[1] if s == 0 else b.shape[0]
    if d_a != d_b:
        raise DomainError(f"maps disagree on dim U: {d_a} vs {d_b}")
    d = d_a
    for name, m in (("a", a), ("b", b)):
        if rank(F, m) != d:
            raise DomainError(f"map {name} of shape {m.shape} does not have rank {d}")
    dim_v = a.shape[0] if r == 0 else a.shape[1]
    dim_w = b.shape[0] if s == 0 else b.shape[1]
    return a, b, d, dim_v, dim_w


def pair_to_relation(F: FieldSpec, t, a, b) -> LinearRelation:
    """The equipped relation of type ``t`` attached to a configuration ``(a, b)``.

    ======  =====================  ============================
    type    configuration          relation
    ======  =====================  ============================
    (0,0)   V <-a- U -b-> W        {(a u, b u)}
    (0,1)   V <-a- U <-b- W        {(a b w, w)}
    (1,0)   V -a-> U -b-> W        {(v, b a v)}
    (1,1)   V -a-> U <-b- W        {(v, w) : a v = b w}
    ======  =====================  ============================

    Maps on the ``V``/``W`` side of ``U`` are injective, maps into ``U`` surjective.
    """
    t = RelationType(*t)
    a, b, d, dv, dw = _check_pair(F, t, a, b)
    if t == (0, 0):
        rows = np.hstack([a.T, b.T]).reshape(d, dv + dw)
    elif t == (0, 1):
        ab = F.matmul(a, b).reshape(dv, dw)
        rows = np.hstack([ab.T, np.eye(dw, dtype=np.int64)]).reshape(dw, dv + dw)
    elif t == (1, 0):
        ba = F.matmul(b, a).reshape(dw, dv)
        rows = np.hstack([np.eye(dv, dtype=np.int64), ba.T]).reshape(dv, dv + dw)
    else:
        H = np.hstack([a, F.neg[b]]).reshape(d, dv + dw)
        return LinearRelation(dv, dw, nullspace(F, H))
    return LinearRelation.from_rows(F, dv, dw, rows)


def relation_to_pair(R: LinearRelation, t) -> tuple[int, np.ndarray, np.ndarray]:
    """A deterministic configuration ``(a, b)`` realising ``R`` for type ``t``.

    Inverse to :func:`pair_to_relation` up to the ``GL(U)`` action; the
    representative comes from RREF pivot columns.
    """
    t = RelationType(*t)
    if not check_type(R, t):
        raise DomainError(f"relation is not of type {tuple(t)}")
    F = R.field
    dv, dw = R.dim_v, R.dim_w
    X, Y = R.blocks()
    if t == (0, 0):
        d = X.shape[0]
        return d, X.T.reshape(dv, d), Y.T.reshape(dw, d)
    if t == (1, 0):
        # R has RREF basis [I | f^T]
        f = Y.T.reshape(dw, dv)
        C, Rf = _rank_factor(F, f)
        return Rf.shape[0], Rf, C
    if t == (0, 1):
        Xo, Yo = R.opposite().blocks()
        g = Yo.T.reshape(dv, dw)
        C, Rg = _rank_factor(F, g)
        return Rg.shape[0], C, Rg
    H = R.space.annihilator()
    d = H.shape[0]
    return d, H[:, :dv].reshape(d, dv), F.neg[H[:, dv:]].reshape(d, dw)


def transform_pair(F: FieldSpec, t, a, b, u) -> tuple[np.ndarray, np.ndarray]:
    """Move ``(a, b)`` along its ``GL(U)`` orbit by the invertible ``u``."""
    t = RelationType(*t)
    u = np.asarray(u, dtype=np.int64)
    ui = inverse(F, u)
    a2 = F.matmul(a, ui) if t.r == 0 else F.matmul(u, a)
    b2 = F.matmul(b, ui) if t.s == 0 else F.matmul(u, b)
    return a2, b2


def enumerate_relations(F: FieldSpec, dim_v: int, dim_w: int, t=None):
    """Every relation on ``F^dim_v ⊕ F^dim_w``, optionally only those of type ``t``."""
    for S in enumerate_subspaces(F, dim_v + dim_w):
        R = LinearRelation(dim_v, dim_w, S)
        if t is None or check_type(R, t):
            yield R
