import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import Q
from logcurve import linalg
from logcurve.dual_graph import (
    Component,
    Edge,
    LogCurveModel,
    ModelError,
    betti1,
    connected_components,
    disjoint_union,
    flip_orientation,
    flow_space,
    image_alpha,
    incidence_alpha,
    lemma_intersection_check,
    load_model,
    model_from_dict,
    model_to_dict,
    validate,
)
from logcurve.families import banana, chain, cycle, generate, random_model, theta


def single_edge():
    return LogCurveModel((Component("v"), Component("w")), (Edge("e", "v", "w", Q(0), Q(0)),))


def test_banana_validates():
    validate(banana(2))


def test_loop_edge_rejected():
    m = LogCurveModel((Component("v"),), (Edge("e", "v", "v", Q(0), Q(1)),))
    with pytest.raises(ModelError, match="loop edge"):
        validate(m)


def test_duplicate_coordinate_rejected():
    m = LogCurveModel(
        (Component("v"), Component("w"), Component("u")),
        (Edge("e1", "v", "w", Q(0), Q(0)), Edge("e2", "v", "u", Q(0), Q(1))),
    )
    with pytest.raises(ModelError, match="duplicate node coordinate"):
        validate(m)


def test_dangling_endpoint_rejected():
    m = LogCurveModel((Component("v"),), (Edge("e", "v", "x", Q(0), Q(0)),))
    with pytest.raises(ModelError, match="dangling edge endpoint"):
        validate(m)


def test_node_at_infinity_rejected():
    data = {"components": [{"id": "v"}, {"id": "w"}],
            "edges": [{"id": "e", "from": "v", "to": "w", "coord_from": "inf", "coord_to": "0"}]}
    with pytest.raises(ModelError, match="node at infinity"):
        model_from_dict(data)


@pytest.mark.parametrize("data,msg", [
    ({"components": [], "extra": 1}, "unknown keys"),
    ({"components": [{"id": "v", "colour": 1}]}, "unknown keys"),
    ({"components": [{"id": "v"}, {"id": "w"}],
      "edges": [{"id": "e", "from": "v", "to": "w", "coord_from": "0.5", "coord_to": "0"}]}, "decimal"),
    ({"components": [{"id": "v"}, {"id": "w"}],
      "edges": [{"id": "e", "from": "v", "to": "w", "coord_from": 0.5, "coord_to": "0"}]}, "rational strings"),
    ({"components": [{"id": "v"}, {"id": "w"}],
      "edges": [{"id": "e", "from": "v", "to": "w", "coord_to": "0"}]}, "missing node coordinate"),
    ({"components": [{"id": "v", "genus": -1}]}, "genus"),
])
def test_json_rejections(data, msg):
    with pytest.raises(ModelError, match=msg):
        model_from_dict(data)


def test_json_round_trip_and_unicode_minus():
    data = {"components": [{"id": "v"}, {"id": "w", "genus": 1}],
            "edges": [{"id": "e", "from": "v", "to": "w", "coord_from": "−3/2"}]}
    m = model_from_dict(data)
    assert m.edges[0].coord_from == Q("-3/2")
    assert load_model(json.dumps(model_to_dict(m))) == m


def test_betti1_examples():
    assert betti1(chain(3)) == 0
    assert betti1(cycle(5)) == 1
    assert betti1(theta()) == 2


def test_incidence_examples():
    assert incidence_alpha(single_edge()) == [[1, -1]]
    a = incidence_alpha(banana(2))
    assert a == [[1, -1], [1, -1]]
    assert linalg.rank(a, 2) == 1
    c3 = cycle(3)
    a = incidence_alpha(c3)
    assert linalg.rank(a, 3) == 2
    assert linalg.nullspace(a, 3) == [[1, 1, 1]]


def test_flow_space_examples():
    assert flow_space(single_edge()) == []
    fl = flow_space(banana(2))
    assert linalg.same_span(fl, [[1, -1]], 2)
    assert len(flow_space(theta())) == 2


def test_lemma_examples():
    c3 = cycle(3)
    assert len(image_alpha(c3)[0]) == 2 and len(flow_space(c3)) == 1
    assert lemma_intersection_check(c3)
    assert lemma_intersection_check(banana(2))
    assert lemma_intersection_check(single_edge())


def test_flip_examples():
    m = banana(2)
    f = flip_orientation(m, "e1")
    assert f.edges[0] == Edge("e1", "v1", "v0", m.edges[0].coord_to, m.edges[0].coord_from)
    validate(f)
    assert flip_orientation(f, "e1") == m
    a, fa = incidence_alpha(m), incidence_alpha(f)
    assert fa[0] == [-x for x in a[0]] and fa[1] == a[1]
    with pytest.raises(ModelError, match="unknown edge"):
        flip_orientation(m, "nope")


def test_disconnected_models():
    tri = model_from_dict({
        "components": [{"id": "w%d" % i} for i in range(3)],
        "edges": [{"id": "f%d" % i, "from": "w%d" % i, "to": "w%d" % ((i + 1) % 3),
                   "coord_from": "0", "coord_to": "1"} for i in range(3)],
    })
    m = disjoint_union(chain(2), tri)
    validate(m)
    assert len(connected_components(m)) == 2
    assert betti1(m) == 1
    assert lemma_intersection_check(m)


def test_generate_families():
    c3 = generate("cycle_3")
    assert len(c3.components) == 3 and len(c3.edges) == 3
    for c in c3.components:
        assert sorted(c3.node_coords(c.id)) == [0, 1]
    b = generate("banana_2")
    assert len(b.components) == 2 and len(b.edges) == 2
    assert generate("random(4,6,seed=7)") == generate("random(4,6,seed=7)")
    with pytest.raises(ModelError, match="unknown family"):
        generate("star_4")
    with pytest.raises(ModelError, match="infeasible"):
        generate("random(5,3)")


@st.composite
def models(draw):
    v = draw(st.integers(1, 7))
    e = draw(st.integers(v - 1, 11)) if v > 1 else 0
    return random_model(v, e, draw(st.integers(0, 10**6)))


@given(models())
def test_rank_and_flow_dimension(m):
    nv, ne = len(m.components), len(m.edges)
    c = len(connected_components(m))
    assert linalg.rank(incidence_alpha(m), nv) == nv - c
    assert len(flow_space(m)) == ne - nv + c == betti1(m)


@given(models())
def test_lemma_holds(m):
    assert lemma_intersection_check(m)


@given(models(), st.data())
def test_flip_conjugates_alpha(m, data):
    if not m.edges:
        return
    eid = data.draw(st.sampled_from(m.edge_ids))
    f = flip_orientation(m, eid)
    a, fa = incidence_alpha(m), incidence_alpha(f)
    i = m.edge_index(eid)
    for k in range(len(a)):
        assert fa[k] == ([-x for x in a[k]] if k == i else a[k])
