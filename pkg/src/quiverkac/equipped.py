"""Representations of equipped graphs via the auxiliary quiver Δ.

Every ``*``-orbit ``[a]`` becomes a vertex of Δ, and each arrow ``a``
becomes an arrow ``a'`` joining ``t(a)`` and ``[a]``: pointing into ``[a]``
(to be represented surjectively) when ``phi(a) = 1``, out of ``[a]``
(injectively) when ``phi(a) = 0``.  Equipped representations are then the
representations of Δ with every arrow of maximal rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import ConsistencyError, DomainError
from .kac import PolynomialCache, kac_polynomial
from .maxrank import MaxRankSolver
from .oracle import DEFAULT_BUDGET, Budget, EquippedRep, QuiverRep
from .polynomial import IntPolynomial
from .quiver import AlphaLike, Arrow, EquippedGraph, Quiver, canonical_orientation
from .relations import pair_to_relation, relation_to_pair

# re-exported: the relation calculus is part of this module's surface
from .relations import (  # noqa: F401
    LinearRelation,
    RelationInvariants,
    RelationType,
    check_type,
    relation_invariants,
    relation_rank,
    transform_pair,
)


@dataclass(frozen=True)
class DeltaQuiver:
    quiver: Quiver
    orbit_vertex: dict  # representative arrow id -> vertex "[<id>]"
    arrow_map: dict  # arrow id of G -> arrow id of Δ

    @property
    def orbit_vertices(self) -> tuple[str, ...]:
        return tuple(self.orbit_vertex.values())


def orbit_vertex_name(a: str) -> str:
    return f"[{a}]"


def delta_quiver(EG: EquippedGraph) -> DeltaQuiver:
    orbit_vertex = {}
    of = {}
    for a, b in EG.edges():
        name = orbit_vertex_name(a.id)
        if name in EG.vertices:
            raise DomainError(f"vertex name {name!r} clashes with the orbit vertex of edge {a.id!r}")
        orbit_vertex[a.id] = name
        of[a.id] = of[b.id] = name
    arrows = []
    arrow_map = {}
    for a in EG.quiver.arrows:
        new = f"{a.id}'"
        if EG.phi[a.id] == 0:
            arrows.append(Arrow(new, of[a.id], a.tail))
        else:
            arrows.append(Arrow(new, a.tail, of[a.id]))
        arrow_map[a.id] = new
    Q = Quiver(EG.vertices + tuple(orbit_vertex.values()), tuple(arrows))
    return DeltaQuiver(Q, orbit_vertex, arrow_map)


def delta_dimension_vectors(EG: EquippedGraph, alpha: AlphaLike):
    """Every extension of ``alpha`` to Δ with ``0 <= alpha'_[a] <= min(alpha_t, alpha_h)``."""
    a = EG.quiver.dimvector(alpha)
    D = delta_quiver(EG)
    edges = EG.edges()
    ranges = [range(min(a[x.tail], a[x.head]) + 1) for x, _ in edges]
    for ds in itertools.product(*ranges):
        ext = dict(a)
        for (x, _), d in zip(edges, ds):
            ext[D.orbit_vertex[x.id]] = d
        yield ext


def equipped_count_terms(
    EG: EquippedGraph,
    alpha: AlphaLike,
    budget: Budget = DEFAULT_BUDGET,
    cache: Optional[PolynomialCache] = None,
    solver: Optional[MaxRankSolver] = None,
) -> list[tuple[dict, IntPolynomial]]:
    """The summands ``(alpha', A^{Δ_1}_{Δ, alpha'})``."""
    solver = solver or MaxRankSolver(budget, cache)
    D = delta_quiver(EG)
    all_arrows = D.quiver.arrow_ids
    return [(ext, solver.solve(D.quiver, all_arrows, ext)) for ext in delta_dimension_vectors(EG, alpha)]


def equipped_count_polynomial(
    EG: EquippedGraph,
    alpha: AlphaLike,
    budget: Budget = DEFAULT_BUDGET,
    cache: Optional[PolynomialCache] = None,
    verify: bool = False,
    solver: Optional[MaxRankSolver] = None,
) -> IntPolynomial:
    """Number of absolutely indecomposable representations of ``EG`` of
    dimension ``alpha`` over F_q, as a polynomial in ``q``.

    With ``verify=True`` it is compared against the Kac polynomial of an
    orientation of the underlying graph.
    """
    total = IntPolynomial()
    for _, term in equipped_count_terms(EG, alpha, budget, cache, solver):
        total = total + term
    if verify:
        expected = kac_polynomial(canonical_orientation(EG), alpha, budget, cache)
        if expected != total:
            raise ConsistencyError(f"equipped count {total} differs from Kac polynomial {expected}")
    return total


def equipped_rep_to_delta(rep: EquippedRep) -> QuiverRep:
    """Factor every relation through its configuration; the result is a
    representation of Δ with arrows into orbit vertices surjective and arrows
    out of them injective."""
    EG = rep.graph
    D = delta_quiver(EG)
    dims = dict(rep.dims)
    maps = {}
    for a, b in EG.edges():
        R = rep.relations[a.id]
        d, A, B = relation_to_pair(R, EG.edge_type(a.id))
        dims[D.orbit_vertex[a.id]] = d
        maps[D.arrow_map[a.id]] = A
        maps[D.arrow_map[b.id]] = B
    return QuiverRep(D.quiver, rep.field, dims, maps)


def delta_rep_to_equipped(EG: EquippedGraph, qrep: QuiverRep) -> EquippedRep:
    """Inverse of :func:`equipped_rep_to_delta`."""
    D = delta_quiver(EG)
    F = qrep.field
    relations = {}
    for a, b in EG.edges():
        A = qrep.maps[D.arrow_map[a.id]]
        B = qrep.maps[D.arrow_map[b.id]]
        relations[a.id] = pair_to_relation(F, EG.edge_type(a.id), A, B)
    dims = {v: qrep.dims[v] for v in EG.vertices}
    return EquippedRep(EG, F, dims, relations)
