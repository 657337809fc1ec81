"""Brute-force ground truth over F_q.

Counts isomorphism classes of absolutely indecomposable representations by
enumerating every representation, partitioning the points into
``GL(alpha)``-orbits, and testing the endomorphism algebra of one point per
orbit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import ConsistencyError, DomainError, ResourceError
from .gf import (
    FieldSpec,
    all_matrices,
    batch_rank,
    enumerate_subspaces,
    general_linear_group,
    gl_order,
    is_nilpotent,
    nullspace,
    rank,
    rref,
    _batch_eliminate,
)
from .quiver import AlphaLike, EquippedGraph, Quiver
from .relations import LinearRelation, check_type

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    """Caps on exhaustive work; exceeding one raises :class:`ResourceError`."""

    max_points: int = 10**6
    max_group: int = 10**6
    max_end_dim: int = 8
    max_end_elements: int = 10**6


DEFAULT_BUDGET = Budget()


@dataclass
class QuiverRep:
    quiver: Quiver
    field: FieldSpec
    dims: dict
    maps: dict  # arrow id -> matrix of shape (dims[head], dims[tail])

    def __post_init__(self):
        self.dims = self.quiver.dimvector(self.dims)
        maps = {}
        for a in self.quiver.arrows:
            shape = (self.dims[a.head], self.dims[a.tail])
            m = np.asarray(self.maps.get(a.id, np.zeros(shape)), dtype=np.int64).reshape(shape)
            if m.size and (m.min() < 0 or m.max() >= self.field.q):
                raise DomainError(f"map for arrow {a.id!r} has entries outside F_{self.field.q}")
            maps[a.id] = m
        self.maps = maps


@dataclass
class EquippedRep:
    """One relation per ``*``-orbit, read for the orbit representative ``a``:
    a subspace of ``X_t(a) ⊕ X_h(a)``.  The partner ``a*`` carries its
    opposite implicitly."""

    graph: EquippedGraph
    field: FieldSpec
    dims: dict
    relations: dict  # representative arrow id -> LinearRelation

    def __post_init__(self):
        self.dims = self.graph.quiver.dimvector(self.dims)
        for a, _ in self.graph.edges():
            R = self.relations.get(a.id)
            if R is None:
                raise DomainError(f"missing relation for edge {a.id!r}")
            if (R.dim_v, R.dim_w) != (self.dims[a.tail], self.dims[a.head]):
                raise DomainError(f"relation for edge {a.id!r} has wrong dimensions")
            if not check_type(R, self.graph.edge_type(a.id)):
                raise DomainError(f"relation for edge {a.id!r} violates type {self.graph.edge_type(a.id)}")

    def relation(self, arrow_id: str) -> LinearRelation:
        """``X_a`` for any arrow, materialising the opposite for partners."""
        if arrow_id in self.relations:
            return self.relations[arrow_id]
        return self.relations[self.graph.graph.star(arrow_id)].opposite()


@dataclass
class RepMorphism:
    components: dict  # vertex id -> square matrix


# -- endomorphism algebras -----------------------------------------------------


def _layout(vertices, dims):
    offsets = {}
    off = 0
    for v in vertices:
        offsets[v] = off
        off += dims[v] ** 2
    return offsets, off


def _end_equations(rep) -> tuple[np.ndarray, dict, int]:
    F = rep.field
    if isinstance(rep, QuiverRep):
        vertices = rep.quiver.vertices
    else:
        vertices = rep.graph.vertices
    dims = rep.dims
    off, n = _layout(vertices, dims)
    rows = []
    if isinstance(rep, QuiverRep):
        # theta_h x - x theta_t = 0
        for a in rep.quiver.arrows:
            x = rep.maps[a.id]
            dt, dh = dims[a.tail], dims[a.head]
            for i in range(dh):
                for j in range(dt):
                    row = np.zeros(n, dtype=np.int64)
                    for l in range(dh):
                        k = off[a.head] + i * dh + l
                        row[k] = F.add[row[k], x[l, j]]
                    for l in range(dt):
                        k = off[a.tail] + l * dt + j
                        row[k] = F.sub[row[k], x[i, l]]
                    rows.append(row)
    else:
        # H (theta_t x, theta_h y) = 0 for each basis vector (x, y) of R
        for a, _ in rep.graph.edges():
            R = rep.relations[a.id]
            dt, dh = R.dim_v, R.dim_w
            H = R.space.annihilator()
            X, Y = R.blocks()
            for xk, yk in zip(X, Y):
                for h in H:
                    row = np.zeros(n, dtype=np.int64)
                    for i in range(dt):
                        for j in range(dt):
                            k = off[a.tail] + i * dt + j
                            row[k] = F.add[row[k], F.mul[h[i], xk[j]]]
                    for i in range(dh):
                        for j in range(dh):
                            k = off[a.head] + i * dh + j
                            row[k] = F.add[row[k], F.mul[h[dt + i], yk[j]]]
                    rows.append(row)
    eqs = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    return eqs, off, n


def _vertices(rep):
    return rep.quiver.vertices if isinstance(rep, QuiverRep) else rep.graph.vertices


def _end_basis_vectors(rep) -> np.ndarray:
    eqs, _, n = _end_equations(rep)
    return nullspace(rep.field, eqs).matrix.reshape(-1, n)


def _unpack(rep, vec) -> RepMorphism:
    off, _ = _layout(_vertices(rep), rep.dims)
    comps = {}
    for v in _vertices(rep):
        d = rep.dims[v]
        comps[v] = np.asarray(vec[off[v] : off[v] + d * d]).reshape(d, d)
    return RepMorphism(comps)


def endomorphism_algebra(rep) -> list[RepMorphism]:
    """A basis of ``End(rep)``: the solutions of the linear conditions on
    ``(theta_i)`` that make it a morphism ``rep -> rep``."""
    return [_unpack(rep, v) for v in _end_basis_vectors(rep)]


def is_morphism(rep, theta: RepMorphism, target=None) -> bool:
    """Check the defining condition of a morphism ``rep -> target``."""
    target = rep if target is None else target
    F = rep.field
    if isinstance(rep, QuiverRep):
        for a in rep.quiver.arrows:
            lhs = F.matmul(theta.components[a.head], rep.maps[a.id])
            rhs = F.matmul(target.maps[a.id], theta.components[a.tail])
            if not np.array_equal(lhs, rhs):
                return False
        return True
    for a, _ in rep.graph.edges():
        R, R2 = rep.relations[a.id], target.relations[a.id]
        X, Y = R.blocks()
        for xk, yk in zip(X, Y):
            img = np.concatenate(
                [F.matmul(theta.components[a.tail], xk), F.matmul(theta.components[a.head], yk)]
            )
            if img not in R2.space:
                return False
    return True


@dataclass(frozen=True)
class EndStructure:
    """Outcome of the exhaustive locality test.

    ``residue_degree`` is ``k`` with ``End/rad ≅ F_{q^k}`` when local.
    """

    dim: int
    local: bool
    residue_degree: Optional[int]

    @property
    def indecomposable(self) -> bool:
        return self.local

    @property
    def absolutely_indecomposable(self) -> bool:
        return self.local and self.residue_degree == 1


def _blocks_of(rep, elems: np.ndarray):
    off, _ = _layout(_vertices(rep), rep.dims)
    for v in _vertices(rep):
        d = rep.dims[v]
        if d:
            yield v, elems[:, off[v] : off[v] + d * d].reshape(-1, d, d)


def end_structure(rep, budget: Budget = DEFAULT_BUDGET) -> EndStructure:
    """Decide locality of ``End(rep)`` by enumerating all of its elements.

    An element is invertible iff every vertex component is; the set of
    non-invertible elements must then be a subspace, of codimension ``k``.
    """
    F = rep.field
    if sum(rep.dims.values()) == 0:
        return EndStructure(0, False, None)
    B = _end_basis_vectors(rep)
    e = B.shape[0]
    if e > budget.max_end_dim:
        raise ResourceError("endomorphism algebra dimension", e, budget.max_end_dim)
    if F.q**e > budget.max_end_elements:
        raise ResourceError("endomorphism algebra elements", F.q**e, budget.max_end_elements)
    coeffs = all_matrices(F, 1, e).reshape(-1, e)
    elems = F.matmul(coeffs, B)
    invertible = np.ones(coeffs.shape[0], dtype=bool)
    for _, blocks in _blocks_of(rep, elems):
        invertible &= batch_rank(F, blocks) == blocks.shape[1]
    nonunits = coeffs[~invertible]
    nn = nonunits.shape[0]
    span_dim = rref(F, nonunits)[1] if nn else 0
    if nn != F.q**span_dim:
        return EndStructure(e, False, None)
    k = e - span_dim
    if k < 1:
        raise ConsistencyError("identity fell inside the set of non-units")
    return EndStructure(e, True, k)


def _scalar_plus_nilpotent(F, rep, vec) -> Optional[np.ndarray]:
    """Return ``vec - lambda*1`` if it is nilpotent for some ``lambda`` in F_q."""
    off, n = _layout(_vertices(rep), rep.dims)
    one = np.zeros(n, dtype=np.int64)
    for v in _vertices(rep):
        d = rep.dims[v]
        one[off[v] : off[v] + d * d] = np.eye(d, dtype=np.int64).reshape(-1)
    for lam in range(F.q):
        cand = F.sub[vec, F.mul[lam, one]]
        if all(is_nilpotent(F, blk[0]) for _, blk in _blocks_of(rep, cand[None, :])):
            return cand
    return None


def _compose(F, rep, x, y):
    out = np.zeros_like(x)
    off, _ = _layout(_vertices(rep), rep.dims)
    for v in _vertices(rep):
        d = rep.dims[v]
        if d:
            sl = slice(off[v], off[v] + d * d)
            out[sl] = F.matmul(x[sl].reshape(d, d), y[sl].reshape(d, d)).reshape(-1)
    return out


def algebraic_abs_indecomposable(rep) -> bool:
    """Linear-algebra criterion for ``End(rep)/rad ≅ F_q``.

    Every basis element must be ``lambda + n`` with ``n`` nilpotent, and the
    span ``J`` of the nilpotent parts must be closed under composition.  Then
    ``J`` is a nilpotent ideal of codimension one; conversely both hold
    whenever the rep is absolutely indecomposable.
    """
    F = rep.field
    if sum(rep.dims.values()) == 0:
        return False
    B = _end_basis_vectors(rep)
    parts = []
    for vec in B:
        n = _scalar_plus_nilpotent(F, rep, vec)
        if n is None:
            return False
        parts.append(n)
    J = np.array(parts, dtype=np.int64)
    jr = rank(F, J)
    if jr != B.shape[0] - 1:
        return False
    for x in J:
        for y in J:
            if rank(F, np.vstack([J, _compose(F, rep, x, y)])) != jr:
                return False
    return True


def is_absolutely_indecomposable(rep, budget: Budget = DEFAULT_BUDGET, method: str = "auto") -> bool:
    """``End(rep)`` local with residue field ``F_q``.

    ``method="exhaustive"`` enumerates ``End``; ``"algebraic"`` uses
    :func:`algebraic_abs_indecomposable`; ``"auto"`` rejects cheaply with the
    algebraic test and confirms every acceptance by enumeration.
    """
    if method == "algebraic":
        return algebraic_abs_indecomposable(rep)
    if method == "exhaustive":
        return end_structure(rep, budget).absolutely_indecomposable
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if not algebraic_abs_indecomposable(rep):
        return False
    if not end_structure(rep, budget).absolutely_indecomposable:
        raise ConsistencyError("algebraic and exhaustive locality tests disagree")
    return True


# -- group actions -------------------------------------------------------------


def _group(F: FieldSpec, vertices, dims, budget: Budget):
    order = 1
    for v in vertices:
        order *= gl_order(dims[v], F.q)
    if order > budget.max_group:
        raise ResourceError("group GL(alpha)", order, budget.max_group)
    stacks = {v: general_linear_group(F, dims[v]) for v in vertices}
    sizes = [stacks[v][0].shape[0] for v in vertices]
    idx = np.indices(sizes).reshape(len(sizes), -1) if sizes else np.zeros((0, 1), dtype=np.int64)
    g = {v: stacks[v][0][idx[n]] for n, v in enumerate(vertices)}
    ginv = {v: stacks[v][1][idx[n]] for n, v in enumerate(vertices)}
    return g, ginv, int(idx.shape[1])


def _sweep(total: int, reverse: bool):
    return range(total - 1, -1, -1) if reverse else range(total)


def count_abs_indec_quiver(
    Q: Quiver,
    alpha: AlphaLike,
    M: Iterable[str] = (),
    F: FieldSpec = None,
    budget: Budget = DEFAULT_BUDGET,
    reverse: bool = False,
    method: str = "auto",
) -> int:
    """Number of isoclasses of absolutely indecomposable ``M``-maximal
    representations of ``Q`` of dimension ``alpha`` over ``F``."""
    if F is None:
        raise ValueError("a field is required")
    dims = Q.dimvector(alpha)
    M = set(M)
    for a in M:
        Q.arrow(a)
    if sum(dims.values()) == 0:
        return 0
    shapes = [(dims[a.head], dims[a.tail]) for a in Q.arrows]
    sizes = [h * t for h, t in shapes]
    ndig = sum(sizes)
    total = F.q**ndig
    if total > budget.max_points:
        raise ResourceError("representation space", total, budget.max_points)
    g, ginv, gsize = _group(F, Q.vertices, dims, budget)
    powers = F.q ** np.arange(ndig - 1, -1, -1, dtype=np.int64)
    visited = np.zeros(total, dtype=bool)
    count = 0
    orbits = 0
    for idx in _sweep(total, reverse):
        if visited[idx]:
            continue
        digits = np.array([(idx // int(p)) % F.q for p in powers], dtype=np.int64)
        maps = {}
        pos = 0
        images = []
        for a, (h, t), sz in zip(Q.arrows, shapes, sizes):
            x = digits[pos : pos + sz].reshape(h, t)
            maps[a.id] = x
            pos += sz
            if sz:
                img = F.matmul(F.matmul(g[a.head], x), ginv[a.tail])
                images.append(img.reshape(gsize, sz))
        codes = (np.hstack(images) @ powers) if images else np.zeros(1, dtype=np.int64)
        visited[codes] = True
        orbits += 1
        if any(rank(F, maps[a]) != min(maps[a].shape) for a in M):
            continue
        rep = QuiverRep(Q, F, dims, maps)
        if is_absolutely_indecomposable(rep, budget, method):
            count += 1
    log.debug("quiver oracle q=%d alpha=%s: %d orbits, %d abs. indec.", F.q, dims, orbits, count)
    return count


def _canonical_codes(F: FieldSpec, mats: np.ndarray) -> np.ndarray:
    """Integer code of the RREF of every matrix in a stack ``(B, d, n)``."""
    B, d, n = mats.shape
    if d == 0 or n == 0:
        return np.zeros(B, dtype=np.int64)
    R, _ = _batch_eliminate(F, mats)
    powers = F.q ** np.arange(d * n - 1, -1, -1, dtype=np.int64)
    return R.reshape(B, d * n) @ powers


def count_abs_indec_equipped(
    EG: EquippedGraph,
    alpha: AlphaLike,
    F: FieldSpec = None,
    budget: Budget = DEFAULT_BUDGET,
    reverse: bool = False,
    method: str = "auto",
) -> int:
    """Number of isoclasses of absolutely indecomposable representations of
    an equipped graph of dimension ``alpha`` over ``F``."""
    if F is None:
        raise ValueError("a field is required")
    dims = EG.quiver.dimvector(alpha)
    if sum(dims.values()) == 0:
        return 0
    edges = EG.edges()
    per_edge = []
    total = 1
    for a, _ in edges:
        dv, dw = dims[a.tail], dims[a.head]
        t = EG.edge_type(a.id)
        rels = [LinearRelation(dv, dw, S) for S in enumerate_subspaces(F, dv + dw)]
        rels = [R for R in rels if check_type(R, t)]
        per_edge.append(rels)
        total *= len(rels)
        if total > budget.max_points:
            raise ResourceError("relation space", total, budget.max_points)
    if total == 0:
        return 0
    g, _, gsize = _group(F, EG.vertices, dims, budget)
    # lookup: (edge, dim, code of canonical basis) -> relation index
    lookup = []
    for rels in per_edge:
        table = {}
        for i, R in enumerate(rels):
            S = R.space
            code = int(_canonical_codes(F, S.matrix[None])[0]) if S.dim else 0
            table[(S.dim, code)] = i
        lookup.append(table)
    radix = [len(r) for r in per_edge]
    mult = np.cumprod([1] + radix[::-1][:-1])[::-1].astype(np.int64)
    visited = np.zeros(total, dtype=bool)
    count = 0
    for idx in _sweep(total, reverse):
        if visited[idx]:
            continue
        choice = [(idx // int(m)) % r for m, r in zip(mult, radix)]
        code_sum = np.zeros(gsize, dtype=np.int64)
        relations = {}
        for e, ((a, _), rels, c) in enumerate(zip(edges, per_edge, choice)):
            R = rels[c]
            relations[a.id] = R
            dv, dw = R.dim_v, R.dim_w
            d = R.space.dim
            if d == 0:
                continue  # the zero relation is fixed by the group
            block = np.zeros((gsize, dv + dw, dv + dw), dtype=np.int64)
            block[:, :dv, :dv] = g[a.tail]
            block[:, dv:, dv:] = g[a.head]
            moved = F.matmul(R.space.matrix[None], np.transpose(block, (0, 2, 1)))
            codes = _canonical_codes(F, moved)
            table = lookup[e]
            ids = np.array([table[(d, int(cd))] for cd in codes], dtype=np.int64)
            code_sum += (ids - c) * int(mult[e])
        visited[idx + code_sum] = True
        rep = EquippedRep(EG, F, dims, relations)
        if is_absolutely_indecomposable(rep, budget, method):
            count += 1
    return count
