import itertools
import random

import pytest

from quiverkac.errors import SchemaError
from quiverkac.quiver import (
    GraphWithInvolution,
    Quiver,
    a_n,
    bilinear_form,
    doubled_graph,
    equipped_from_json,
    load_json,
    orient,
    orientations,
    quadratic_form,
    quiver_from_json,
    support_connected,
)


def test_quadratic_form_examples(A2, J, K):
    assert quadratic_form(A2, (1, 1)) == 1
    assert quadratic_form(A2, {"1": 1, "2": 0}) == 1
    assert quadratic_form(J, (1,)) == 0
    assert quadratic_form(K, (2, 2)) == 0


def test_quadratic_form_rejects_wrong_vertex_set(A2):
    with pytest.raises(SchemaError):
        quadratic_form(A2, (1, 1, 1))
    with pytest.raises(SchemaError):
        quadratic_form(A2, {"1": 1, "3": 1})
    with pytest.raises(SchemaError):
        quadratic_form(A2, (1, -1))


def test_bilinear_form_examples(A2, J, K):
    assert bilinear_form(A2, (1, 0), (0, 1)) == -1
    assert bilinear_form(K, (2, 1), (0, 0)) == 0
    assert bilinear_form(J, (1,), (1,)) == 0


def _random_quiver(rng, nv=3, na=4):
    vs = [str(i) for i in range(nv)]
    arrows = [(f"x{k}", rng.choice(vs), rng.choice(vs)) for k in range(rng.randint(0, na))]
    return Quiver.from_edges(vs, arrows)


def test_forms_orientation_independent_and_symmetric():
    rng = random.Random(7)
    for _ in range(30):
        Q = _random_quiver(rng)
        alphas = list(itertools.product(range(3), repeat=3))
        sample = rng.sample(alphas, 6)
        for Qo in orientations(Q):
            for a in sample:
                assert quadratic_form(Qo, a) == quadratic_form(Q, a)
                assert bilinear_form(Q, a, a) == 2 * quadratic_form(Q, a)
                for b in sample:
                    assert bilinear_form(Qo, a, b) == bilinear_form(Q, b, a)


def test_quiver_validation():
    with pytest.raises(SchemaError):
        Quiver.from_edges(["1", "1"], [])
    with pytest.raises(SchemaError):
        Quiver.from_edges(["1"], [("a", "1", "2")])
    with pytest.raises(SchemaError):
        Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])
    # loops and parallel arrows are fine
    Quiver.from_edges(["1", "2"], [("a", "1", "1"), ("b", "1", "2"), ("c", "1", "2")])


def test_doubled_graph(A2, K, J):
    G = doubled_graph(A2)
    assert len(G.quiver.arrows) == 2 and len(G.orbits()) == 1
    G = doubled_graph(K)
    assert len(G.quiver.arrows) == 4 and len(G.orbits()) == 2
    G = doubled_graph(J)
    assert len(G.orbits()) == 1
    assert all(a.tail == a.head == "1" for a in G.quiver.arrows)


def test_involution_validation(A2):
    Q = Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    with pytest.raises(SchemaError):
        GraphWithInvolution(Q, {"a": "b", "b": "a"})  # h(a) != t(b)
    Q = Quiver.from_edges(["1"], [("a", "1", "1")])
    with pytest.raises(SchemaError):
        GraphWithInvolution(Q, {"a": "a"})


def test_orient_round_trips(A2, J):
    G = doubled_graph(A2)
    Q, EG = orient(G, ["a"])
    assert Q == A2
    assert EG.phi == {"a": 1, "a*": 0}
    Qr, _ = orient(G, ["a*"])
    assert Qr.arrows[0].tail == "2" and Qr.arrows[0].head == "1"
    for choice in (["a"], ["a*"]):
        Qj, _ = orient(doubled_graph(J), choice)
        assert len(Qj.arrows) == 1 and Qj.arrows[0].tail == Qj.arrows[0].head == "1"
    with pytest.raises(SchemaError):
        orient(G, [])
    with pytest.raises(SchemaError):
        orient(G, ["a", "a*"])


def test_orient_doubled_is_identity():
    rng = random.Random(3)
    for _ in range(20):
        Q = _random_quiver(rng)
        assert orient(doubled_graph(Q), Q.arrow_ids)[0] == Q


def test_support_connected(A2):
    assert support_connected(A2, (1, 1))
    assert support_connected(A2, (1, 0))
    assert not support_connected(A2, (0, 0))
    two = Quiver.from_edges(["1", "2"], [])
    assert not support_connected(two, (1, 1))


def test_orientations_count(A3, J):
    assert len(list(orientations(A3))) == 4
    assert len(list(orientations(J))) == 1


def test_json_round_trip(K):
    assert quiver_from_json(K.to_json()) == K
    doc = {"vertices": ["1", "2"], "edges": [{"id": "e", "ends": ["1", "2"], "phi": [1, 0]}]}
    EG = equipped_from_json(doc)
    assert EG.to_json() == doc
    assert EG.quiver.arrow("e").tail == "1" and EG.quiver.arrow("e*").tail == "2"
    assert EG.phi == {"e": 1, "e*": 0}
    assert isinstance(load_json(doc), type(EG))
    assert load_json(K.to_json()) == K


def test_json_schema_errors():
    with pytest.raises(SchemaError):
        load_json({"arrows": []})
    with pytest.raises(SchemaError):
        quiver_from_json({"vertices": ["1"], "arrows": [{"id": "a", "tail": "1"}]})
    with pytest.raises(SchemaError):
        equipped_from_json({"vertices": ["1"], "edges": [{"id": "e", "ends": ["1"], "phi": [1, 1]}]})
    with pytest.raises(SchemaError):
        equipped_from_json({"vertices": ["1"], "edges": [{"id": "e", "ends": ["1", "1"], "phi": [1, 2]}]})


def test_depict():
    doc = {
        "vertices": ["1", "2", "3"],
        "edges": [
            {"id": "e", "ends": ["1", "2"], "phi": [1, 0]},
            {"id": "f", "ends": ["2", "3"], "phi": [0, 0]},
            {"id": "g", "ends": ["3", "1"], "phi": [1, 1]},
            {"id": "h", "ends": ["1", "3"], "phi": [0, 1]},
        ],
    }
    assert equipped_from_json(doc).depict().splitlines() == [
        "e: 1 --> 2",
        "f: 2 <-> 3",
        "g: 3 --- 1",
        "h*: 3 --> 1",
    ]


def test_a_n_shape():
    Q = a_n(4)
    assert [(a.tail, a.head) for a in Q.arrows] == [("1", "2"), ("2", "3"), ("3", "4")]
