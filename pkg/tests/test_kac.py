import json
import logging

import pytest

from quiverkac.gf import GF
from quiverkac.kac import EVALUATION_ORDER, PolynomialCache, cache_key, kac_polynomial
from quiverkac.oracle import count_abs_indec_quiver
from quiverkac.polynomial import IntPolynomial
from quiverkac.quiver import Quiver, a_n, orientations, quadratic_form
from quiverkac.roots import classify_root, enumerate_positive_roots

q = IntPolynomial.q()

pytestmark = pytest.mark.usefixtures("fresh_memo")


def test_examples(A2, K, J):
    assert kac_polynomial(K, (1, 1)) == q + 1
    assert kac_polynomial(J, (1,)) == q
    assert kac_polynomial(A2, (1, 1)) == 1
    assert kac_polynomial(A2, (2, 0)) == 0
    assert kac_polynomial(K, (2, 2)) == q + 1
    assert kac_polynomial(J, (2,)) == q
    assert kac_polynomial(K, (1, 2)) == 1
    assert kac_polynomial(K, (1, 3)) == 0


def test_three_arrow_kronecker():
    # q(1,1) = -1, so degree 2
    Q = Quiver.from_edges("12", [("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")])
    assert kac_polynomial(Q, (1, 1)) == q * q + q + 1


def test_two_loops():
    Q = Quiver.from_edges("1", [("a", "1", "1"), ("b", "1", "1")])
    assert kac_polynomial(Q, (1,)) == q * q


def test_monic_of_expected_degree_and_matches_oracle():
    cases = [(a_n(3), 3), (Quiver.from_edges("12", [("l", "1", "1"), ("a", "1", "2")]), 2)]
    for Q, height in cases:
        for alpha, _ in enumerate_positive_roots(Q, height):
            p = kac_polynomial(Q, alpha)
            assert p.is_monic() and p.degree == 1 - quadratic_form(Q, alpha)
            assert p(4) == count_abs_indec_quiver(Q, alpha, (), GF(4))


def test_zero_off_roots(A3):
    for alpha in ((2, 0, 0), (0, 2, 1), (1, 0, 1)):
        assert not classify_root(A3, alpha).is_root
        assert kac_polynomial(A3, alpha).is_zero()


def test_orientation_independent():
    Q = Quiver.from_edges("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    for alpha in ((1, 1, 1), (1, 1, 0)):
        assert len({kac_polynomial(Qo, alpha) for Qo in orientations(Q)}) == 1


def test_evaluation_order():
    assert EVALUATION_ORDER[:4] == (2, 3, 5, 7)
    assert set(EVALUATION_ORDER) == {2, 3, 4, 5, 7, 8, 9}


def test_cache_round_trip(tmp_path, K):
    path = tmp_path / "c.json"
    cache = PolynomialCache(path)
    assert kac_polynomial(K, (1, 1), cache=cache) == q + 1
    doc = json.loads(path.read_text())
    assert doc == {cache_key(K, K.dimvector((1, 1))): [1, 1]}
    # a second cache object serves the value without evaluating anything
    from quiverkac.kac import clear_memo

    clear_memo()
    fake = {cache_key(K, K.dimvector((1, 1))): [7, 1]}
    path.write_text(json.dumps(fake))
    assert kac_polynomial(K, (1, 1), cache=PolynomialCache(path)) == q + 7


def test_missing_and_corrupt_cache(tmp_path, K, caplog):
    assert PolynomialCache(tmp_path / "absent.json").entries == {}
    bad = tmp_path / "bad.json"
    bad.write_text('{"x": [1, 2')
    with caplog.at_level(logging.WARNING):
        cache = PolynomialCache(bad)
    assert cache.entries == {}
    assert "unreadable" in caplog.text
    assert kac_polynomial(K, (1, 1), cache=cache) == q + 1
    assert json.loads(bad.read_text())
    wrong = tmp_path / "wrong.json"
    wrong.write_text('{"x": "nope"}')
    assert PolynomialCache(wrong).entries == {}
