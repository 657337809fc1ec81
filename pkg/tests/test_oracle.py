import itertools

import numpy as np
import pytest

from quiverkac.errors import ResourceError
from quiverkac.gf import GF
from quiverkac.oracle import (
    Budget,
    QuiverRep,
    RepMorphism,
    algebraic_abs_indecomposable,
    count_abs_indec_equipped,
    count_abs_indec_quiver,
    end_structure,
    endomorphism_algebra,
    is_absolutely_indecomposable,
    is_morphism,
)
from quiverkac.quiver import Quiver, a_n, orientations
from quiverkac.roots import classify_root

from .conftest import single_edge

F2, F3 = GF(2), GF(3)


def test_end_dimensions(A2, K, J):
    assert len(endomorphism_algebra(QuiverRep(A2, F2, (1, 1), {"a": [[1]]}))) == 1
    assert len(endomorphism_algebra(QuiverRep(A2, F2, (1, 1), {"a": [[0]]}))) == 2
    assert len(endomorphism_algebra(QuiverRep(J, F3, (2,), {"a": np.zeros((2, 2))}))) == 4
    assert len(endomorphism_algebra(QuiverRep(J, F3, (2,), {"a": [[0, 1], [0, 0]]}))) == 2
    rep = QuiverRep(K, F2, (1, 1), {"a1": [[1]], "a2": [[0]]})
    basis = endomorphism_algebra(rep)
    assert len(basis) == 1 and all(is_morphism(rep, th) for th in basis)


def test_is_morphism_rejects():
    Q = a_n(2)
    rep = QuiverRep(Q, F2, (1, 1), {"a1": [[1]]})
    bad = RepMorphism({"1": np.array([[1]]), "2": np.array([[0]])})
    assert not is_morphism(rep, bad)


def test_companion_matrix_is_indecomposable_but_not_absolutely(J):
    # x^2 + x + 1 is irreducible over F_2, End = F_4
    rep = QuiverRep(J, F2, (2,), {"a": [[0, 1], [1, 1]]})
    st = end_structure(rep)
    assert st.dim == 2 and st.local and st.residue_degree == 2
    assert st.indecomposable and not st.absolutely_indecomposable
    assert not algebraic_abs_indecomposable(rep)
    assert not is_absolutely_indecomposable(rep)


def test_split_rep_is_decomposable(J):
    rep = QuiverRep(J, F3, (2,), {"a": [[1, 0], [0, 2]]})
    assert not end_structure(rep).local
    assert not is_absolutely_indecomposable(rep)
    rep = QuiverRep(J, F3, (2,), {"a": [[1, 1], [0, 1]]})
    assert end_structure(rep).absolutely_indecomposable


def test_methods_agree_exhaustively():
    for Q, alpha, F in [
        (Quiver.from_edges(["1"], [("a", "1", "1")]), (2,), F2),
        (Quiver.from_edges(["1"], [("a", "1", "1")]), (2,), F3),
        (Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("b", "1", "2")]), (1, 2), F2),
        (Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("b", "1", "2")]), (2, 2), F2),
    ]:
        dims = Q.dimvector(alpha)
        shapes = [(dims[a.head], dims[a.tail]) for a in Q.arrows]
        n = sum(h * t for h, t in shapes)
        for digits in itertools.product(range(F.q), repeat=n):
            maps, pos = {}, 0
            for a, (h, t) in zip(Q.arrows, shapes):
                maps[a.id] = np.array(digits[pos : pos + h * t]).reshape(h, t)
                pos += h * t
            rep = QuiverRep(Q, F, dims, maps)
            assert algebraic_abs_indecomposable(rep) == end_structure(rep).absolutely_indecomposable


def test_count_examples(A2, K, J):
    for q in (2, 3, 4, 5):
        F = GF(q)
        assert count_abs_indec_quiver(K, (1, 1), (), F) == q + 1
        assert count_abs_indec_quiver(K, (1, 1), ("a1", "a2"), F) == q - 1
        assert count_abs_indec_quiver(J, (1,), (), F) == q
        assert count_abs_indec_quiver(J, (1,), ("a",), F) == q - 1
    assert count_abs_indec_quiver(A2, (1, 1), (), F2) == 1
    assert count_abs_indec_quiver(A2, (2, 0), (), F2) == 0
    assert count_abs_indec_quiver(A2, (0, 0), (), F2) == 0


def test_simple_roots_count_one():
    Q = Quiver.from_edges("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")])
    for v in range(3):
        alpha = [0, 0, 0]
        alpha[v] = 1
        assert count_abs_indec_quiver(Q, alpha, (), F3) == 1


def test_sweep_order_irrelevant(K, J):
    for Q, alpha in ((K, (2, 1)), (K, (2, 2)), (J, (2,))):
        for M in ((), tuple(Q.arrow_ids[:1])):
            assert count_abs_indec_quiver(Q, alpha, M, F2) == count_abs_indec_quiver(
                Q, alpha, M, F2, reverse=True
            )


def test_counts_orientation_independent(A3):
    for alpha in itertools.product(range(3), repeat=3):
        if sum(alpha) > 4:
            continue
        counts = {count_abs_indec_quiver(Qo, alpha, (), F2) for Qo in orientations(A3)}
        assert len(counts) == 1
        assert counts.pop() == (1 if classify_root(A3, alpha).is_root else 0)


def test_exhaustive_and_algebraic_counts_agree(K):
    for alpha in ((1, 2), (2, 2)):
        c = {m: count_abs_indec_quiver(K, alpha, (), F2, method=m) for m in ("auto", "exhaustive", "algebraic")}
        assert len(set(c.values())) == 1


def test_equipped_matches_quiver(A2):
    for phi in itertools.product((0, 1), repeat=2):
        EG = single_edge(phi)
        for alpha in ((1, 0), (1, 1), (2, 1), (1, 2), (2, 2)):
            for F in (F2, F3):
                assert count_abs_indec_equipped(EG, alpha, F) == count_abs_indec_quiver(A2, alpha, (), F)


def test_equipped_loop_counts(J):
    from quiverkac.quiver import equipped_graph_from_edges

    for phi in itertools.product((0, 1), repeat=2):
        EG = equipped_graph_from_edges(["1"], [("e", "1", "1", *phi)])
        assert count_abs_indec_equipped(EG, (1,), F3) == count_abs_indec_quiver(J, (1,), (), F3)


def test_resource_errors(K, J):
    with pytest.raises(ResourceError) as exc:
        count_abs_indec_quiver(K, (3, 3), (), F2, Budget(max_points=1000))
    assert exc.value.cap == 1000
    with pytest.raises(ResourceError):
        count_abs_indec_quiver(K, (1, 1), (), F2, Budget(max_group=0))
    rep = QuiverRep(J, F3, (2,), {"a": np.zeros((2, 2))})
    with pytest.raises(ResourceError):
        end_structure(rep, Budget(max_end_dim=3))
    with pytest.raises(ResourceError):
        end_structure(rep, Budget(max_end_elements=10))


def test_rejects_bad_entries(J):
    from quiverkac.errors import DomainError

    with pytest.raises(DomainError):
        QuiverRep(J, F2, (1,), {"a": [[2]]})
