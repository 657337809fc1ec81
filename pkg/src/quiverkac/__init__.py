"""Exact counts of absolutely indecomposable representations of quivers,
maximal-rank quiver representations and equipped graphs over finite fields."""

from .equipped import (
    DeltaQuiver,
    delta_quiver,
    delta_rep_to_equipped,
    equipped_count_polynomial,
    equipped_count_terms,
    equipped_rep_to_delta,
)
from .errors import (
    ConsistencyError,
    DomainError,
    NonIntegerCoefficients,
    NotChoiceInvariant,
    NotMonic,
    NotOrientationInvariant,
    QuiverKacError,
    ResourceError,
    SchemaError,
    SurplusMismatch,
    WrongDegree,
)
from .gf import GF, FieldSpec, Subspace, enumerate_matrices, enumerate_subspaces, nullspace, rank, rref
from .kac import PolynomialCache, kac_polynomial
from .maxrank import MaxRankSolver, SplitResult, induction_measure, maxrank_polynomial, split_arrow
from .oracle import (
    Budget,
    EquippedRep,
    QuiverRep,
    RepMorphism,
    count_abs_indec_equipped,
    count_abs_indec_quiver,
    endomorphism_algebra,
    is_absolutely_indecomposable,
)
from .polynomial import IntPolynomial, eval_poly, interpolate, pretty
from .quiver import (
    Arrow,
    EquippedGraph,
    GraphWithInvolution,
    Quiver,
    bilinear_form,
    doubled_graph,
    orient,
    orientations,
    quadratic_form,
    support_connected,
)
from .relations import (
    LinearRelation,
    RelationType,
    check_type,
    pair_to_relation,
    relation_invariants,
    relation_to_pair,
)
from .roots import RootClass, RootTag, classify_root, enumerate_positive_roots, reflect

__version__ = "0.1.0"
