import json
import random

import pytest
from randcx import oracle_homology_dimension, random_complex

from khphi.bifiltered import (ComplexError, SemiBifilteredComplex, certify_bounded, dumps,
                              homology_dimension, loads, reduce, reduce_all, replay, tensor,
                              vertical_associated_graded)
from khphi.cube import build_ckhpm, khovanov_homology, khovanov_model
from khphi.knot import torus_knot

UNIT = SemiBifilteredComplex([("u", 0, 0)])


def test_contractible_pair_reduces_to_empty():
    c = SemiBifilteredComplex([("a", 3, 0), ("b", 0, 1)], [("a", "b", 1)])
    model, trace = reduce(c)
    assert len(model) == 0
    assert trace.pairs == [("a", "b", 1)]


def test_trefoil_reduces_to_khovanov_rank():
    model, _ = reduce(build_ckhpm(torus_knot(2, 3)))
    assert len(model) == sum(khovanov_homology(torus_knot(2, 3)).values()) == 3
    assert certify_bounded(model, -3, 1)
    assert all(model.h[j] - model.h[i] >= 1 for i, j, _ in model.entries())


def test_certify_bounded():
    assert certify_bounded(build_ckhpm(torus_knot(2, 3)), -3, 1)
    c = SemiBifilteredComplex([("a", 5, 0), ("b", 0, 1)], [("a", "b", 1)])
    assert not certify_bounded(c, -3, 1)
    assert certify_bounded(c, -5, 1)
    with pytest.raises(ComplexError):
        c.check()


def test_tensor_unit_and_dimension(staircase):
    t = tensor(staircase, UNIT)
    assert t.basis() == [(gid + "*u", g, h) for gid, g, h in staircase.basis()]
    assert [dict(r) for r in t.out] == [dict(r) for r in staircase.out]
    m = khovanov_model(torus_knot(2, 3))
    tt = tensor(m, staircase)
    assert len(tt) == len(m) * len(staircase)
    assert tt.d_squared_is_zero()
    assert homology_dimension(tt) == homology_dimension(m) * homology_dimension(staircase)


def test_homology_dimension():
    assert homology_dimension(UNIT) == 1
    assert homology_dimension(build_ckhpm(torus_knot(3, 4))) == 1


def test_vertical_associated_graded(staircase):
    v = vertical_associated_graded(staircase)
    assert v.out[0] == {}  # a -> c has dh = 3
    assert v.out[1] == {2: 1}  # b -> c kept, b -> e dropped
    assert len(list(v.entries())) == 3
    assert all(v.h[j] - v.h[i] == 1 for i, j, _ in v.entries())


def test_dump_load_roundtrip(staircase):
    text = dumps(staircase)
    assert loads(text) == staircase
    assert dumps(loads(text)) == text
    assert staircase.d_squared_is_zero()


@pytest.mark.parametrize("doc", [
    "not json",
    '{"basis": [{"id": "a", "g": 0}], "differential": []}',
    '{"basis": [{"id": "a", "g": 0, "h": 0}], "differential": [{"from": "a", "to": "z", "value": "1"}]}',
    '{"basis": [{"id": "a", "g": 0, "h": 0}, {"id": "a", "g": 1, "h": 1}], "differential": []}',
    '{"basis": [{"id": "a", "g": 0, "h": 0}], "differential": [{"from": "a", "to": "a", "value": "1/0"}]}',
])
def test_malformed_documents(doc):
    with pytest.raises(ComplexError):
        loads(doc)


def test_rational_values_survive_serialization():
    c = SemiBifilteredComplex([("a", 3, 0), ("b", 0, 1)], [("a", "b", "-2/3")])
    data = json.loads(dumps(c))
    assert data["differential"][0]["value"] == "-2/3"
    assert loads(dumps(c)) == c


def test_replay_reproduces_model():
    c = build_ckhpm(torus_knot(3, 4))
    model, trace = reduce(c)
    assert all(p != 0 for _, _, p in trace.pairs)
    assert replay(c, trace) == model


def test_replay_rejects_wrong_trace():
    c = build_ckhpm(torus_knot(2, 3))
    _, trace = reduce(c)
    a, b, p = trace.pairs[0]
    trace.pairs[0] = (a, b, p * 5)
    with pytest.raises(ComplexError):
        replay(c, trace)


def test_reduce_preserves_homology_on_random_complexes():
    rng = random.Random(7)
    for _ in range(40):
        c = random_complex(rng)
        assert c.d_squared_is_zero()
        assert certify_bounded(c, -3, 1)
        assert homology_dimension(c) == oracle_homology_dimension(c) == 1
        model, _ = reduce(c)
        assert homology_dimension(model) == 1
        assert all((model.g[j] - model.g[i], model.h[j] - model.h[i]) != (-3, 1)
                   for i, j, _ in model.entries())
        assert len(reduce_all(c)) == 1
