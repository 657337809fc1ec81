"""Acceptance criteria, each with its tolerance and wall-clock limit.

Every test carries ``@pytest.mark.criterion(n, title)``; a summary hook in
``conftest.py`` prints one PASS/FAIL line per criterion.
"""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from quiverkac.equipped import equipped_count_polynomial
from quiverkac.gf import GF, enumerate_subspaces
from quiverkac.kac import clear_memo, kac_polynomial
from quiverkac.maxrank import maxrank_polynomial, split_arrow
from quiverkac.oracle import count_abs_indec_equipped, count_abs_indec_quiver
from quiverkac.polynomial import IntPolynomial
from quiverkac.quiver import Quiver, a_n, canonical_orientation, jordan, kronecker, orientations, quadratic_form
from quiverkac.relations import TYPES, LinearRelation, check_type, pair_to_relation, relation_to_pair
from quiverkac.roots import RootTag, classify_root

from .conftest import single_edge

q = IntPolynomial.q()
A2 = Quiver.from_edges(["1", "2"], [("a", "1", "2")])
K = kronecker()
J = jordan()
PHIS = list(itertools.product((0, 1), repeat=2))


@contextmanager
def within(seconds):
    clear_memo()
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"


@pytest.mark.criterion(1, "Kac base values")
def test_kac_base_values():
    with within(5):
        cases = [(K, (1, 1), q + 1), (J, (1,), q), (A2, (1, 1), IntPolynomial([1])), (A2, (2, 0), IntPolynomial())]
        for Q, alpha, expected in cases:
            p = kac_polynomial(Q, alpha)
            assert p == expected
            for fq in (2, 3):
                assert count_abs_indec_quiver(Q, alpha, (), GF(fq)) == p(fq)


@pytest.mark.criterion(2, "degree and monicity")
def test_degree_and_monicity():
    produced = []
    A3 = a_n(3)
    loopy = Quiver.from_edges("12", [("l", "1", "1"), ("a", "1", "2")])
    K3 = Quiver.from_edges("12", [("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")])
    for Q, alpha in [(K, (1, 1)), (K, (1, 2)), (K, (2, 2)), (J, (1,)), (J, (2,)), (A2, (1, 1)),
                     (A3, (1, 1, 1)), (A3, (0, 1, 1)), (loopy, (1, 1)), (loopy, (2, 1)), (K3, (1, 1))]:
        produced.append((Q, alpha, kac_polynomial(Q, alpha)))
    for Q, M, alpha in [(K, ("a1", "a2"), (1, 1)), (K, ("a1",), (1, 1)), (J, ("a",), (1,)),
                        (A3, A3.arrow_ids, (1, 1, 1)), (K, ("a1", "a2"), (2, 1))]:
        produced.append((Q, alpha, maxrank_polynomial(Q, M, alpha)))
    for phi in PHIS:
        EG = single_edge(phi)
        produced.append((canonical_orientation(EG), (1, 1), equipped_count_polynomial(EG, (1, 1))))
    nonzero = [(Q, alpha, p) for Q, alpha, p in produced if not p.is_zero()]
    assert len({(Q.key(), tuple(Q.dimvector(a).values())) for Q, a, _ in nonzero}) >= 10
    for Q, alpha, p in nonzero:
        assert p.is_monic(), (Q.key(), alpha, p)
        assert p.degree == 1 - quadratic_form(Q, alpha), (Q.key(), alpha, p)


@pytest.mark.criterion(3, "maximal-rank recursion vs oracle")
def test_maxrank_vs_oracle():
    with within(30):
        cases = [
            (A2, ["a"], (1, 1), IntPolynomial([1])),
            (K, ["a1", "a2"], (1, 1), q - 1),
            (J, ["a"], (1,), q - 1),
            (K, ["a1"], (1, 1), q),
        ]
        for Q, M, alpha, expected in cases:
            p = maxrank_polynomial(Q, M, alpha)
            assert p == expected
            for fq in (2, 3):
                assert count_abs_indec_quiver(Q, alpha, M, GF(fq)) == p(fq)


@pytest.mark.criterion(4, "orientation independence")
def test_orientation_independence():
    with within(60):
        A3 = a_n(3)
        polys = [maxrank_polynomial(Qo, A3.arrow_ids, (1, 1, 1)) for Qo in orientations(A3)]
        assert len(polys) == 4 and len(set(polys)) == 1
        polys = [maxrank_polynomial(Qo, ["a"], (1, 1)) for Qo in orientations(A2)]
        assert len(polys) == 2 and len(set(polys)) == 1


@pytest.mark.criterion(5, "equipped count equals Kac polynomial")
def test_equipped_equals_kac():
    with within(120):
        for phi in PHIS:
            EG = single_edge(phi)
            for alpha in ((1, 1), (2, 1)):
                p = equipped_count_polynomial(EG, alpha)
                assert p == kac_polynomial(canonical_orientation(EG), alpha)
                for fq in (2, 3):
                    assert count_abs_indec_equipped(EG, alpha, GF(fq)) == p(fq)


@pytest.mark.criterion(6, "independence of the equipping")
def test_phi_independence():
    polys = {phi: equipped_count_polynomial(single_edge(phi), (1, 1)) for phi in PHIS}
    assert len(set(polys.values())) == 1


@pytest.mark.criterion(7, "relation round trip")
def test_relation_round_trip():
    with within(30):
        F = GF(2)
        checked = 0
        for dv, dw in itertools.product(range(3), repeat=2):
            for S in enumerate_subspaces(F, dv + dw):
                R = LinearRelation(dv, dw, S)
                for t in TYPES:
                    if not check_type(R, t):
                        continue
                    _, a, b = relation_to_pair(R, t)
                    assert pair_to_relation(F, t, a, b).space == S
                    checked += 1
        assert checked > 0


@pytest.mark.criterion(8, "root classifier vs oracle")
def test_root_classifier_consistency():
    with within(60):
        F = GF(2)
        for Q in (A2, K, J):
            n = len(Q.vertices)
            for alpha in itertools.product(range(5), repeat=n):
                if sum(alpha) > 4:
                    continue
                is_root = sum(alpha) > 0 and classify_root(Q, alpha).tag is not RootTag.NOT_ROOT
                assert is_root == (count_abs_indec_quiver(Q, alpha, (), F) > 0), (Q.key(), alpha)


@pytest.mark.criterion(9, "polynomiality at a prime power")
def test_prime_power_spot_check():
    with within(10):
        assert count_abs_indec_quiver(K, (1, 1), (), GF(4)) == (q + 1)(4) == 5


@pytest.mark.criterion(10, "splitting identity")
def test_splitting_identity():
    rng = random.Random(20261015)
    for _ in range(20):
        vs = [str(i) for i in range(rng.randint(1, 4))]
        arrows = [(f"x{k}", rng.choice(vs), rng.choice(vs)) for k in range(rng.randint(1, 5))]
        Q = Quiver.from_edges(vs, arrows)
        alpha = {v: rng.randint(0, 4) for v in vs}
        a = Q.arrow(rng.choice(Q.arrow_ids))
        d = rng.randint(0, min(alpha[a.tail], alpha[a.head]))
        s = split_arrow(Q, a.id)
        ad = dict(alpha, **{s.new_vertex: d})
        assert quadratic_form(s.new_quiver, ad) - quadratic_form(Q, alpha) == (alpha[a.head] - d) * (alpha[a.tail] - d)
