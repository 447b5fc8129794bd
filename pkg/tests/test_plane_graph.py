import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkreconf.errors import AsymmetricRotation, InvalidInput, MultiEdgeOrLoop, NotPlanarEmbedding
from linkreconf.generators import cylinder_graph, random_plane_graph
from linkreconf.plane_graph import (
    AbstractGraph,
    PlaneGraph,
    classify_instance,
    instance_from_json,
    instance_to_json,
    to_dot,
)

SQUARE = {"a": ["b", "d"], "b": ["c", "a"], "c": ["d", "b"], "d": ["a", "c"]}


def test_square_has_two_faces():
    g = PlaneGraph("abcd", SQUARE)
    assert len(g.faces) == 2
    assert len(g.vertices) - g.num_edges + len(g.faces) == 2


def test_single_edge_has_one_face():
    g = PlaneGraph("ab", {"a": ["b"], "b": ["a"]})
    assert len(g.faces) == 1
    assert sorted(g.faces[0].vertices) == ["a", "b"]


def test_left_face_convention():
    # the face left of u->v continues with v -> succ_cw(v, u)
    g = PlaneGraph("abcd", SQUARE)
    for f in g.faces:
        for (u, v), (x, w) in zip(f.darts, f.darts[1:] + f.darts[:1]):
            assert x == v and w == g.succ_cw(v, u)
            assert g.left_face(u, v) == f.id


@pytest.mark.parametrize("seed", range(5))
def test_k5_rotations_rejected(seed):
    # networkx confirms independently that K5 has no planar embedding
    assert not nx.check_planarity(nx.complete_graph(5))[0]
    rng = random.Random(seed)
    rot = {v: rng.sample([u for u in range(5) if u != v], 4) for v in range(5)}
    with pytest.raises(NotPlanarEmbedding):
        PlaneGraph(range(5), rot)


def test_k4_rotation_must_be_consistent():
    good = {0: [1, 2, 3], 1: [0, 3, 2], 2: [0, 1, 3], 3: [0, 2, 1]}
    assert len(PlaneGraph(range(4), good).faces) == 4
    # same graph, rotations giving a torus embedding
    with pytest.raises(NotPlanarEmbedding):
        PlaneGraph(range(4), {0: [1, 2, 3], 1: [0, 2, 3], 2: [0, 1, 3], 3: [0, 1, 2]})


def test_malformed_rotations():
    with pytest.raises(AsymmetricRotation):
        PlaneGraph("ab", {"a": ["b"], "b": []})
    with pytest.raises(MultiEdgeOrLoop):
        PlaneGraph("ab", {"a": ["b", "b"], "b": ["a", "a"]})
    with pytest.raises(MultiEdgeOrLoop):
        PlaneGraph("a", {"a": ["a"]})
    with pytest.raises(InvalidInput):
        PlaneGraph("aa", {})


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 25), seed=st.integers(0, 10**6), keep=st.sampled_from([0.3, 0.6, 1.0]))
def test_faces_partition_darts(n, seed, keep):
    g = random_plane_graph(n, random.Random(seed), keep=keep, connected=False)
    darts = [d for f in g.faces for d in f.darts]
    assert len(darts) == len(set(darts)) == 2 * g.num_edges
    # each component, isolated vertices included, is its own sphere
    comps = len(g.components())
    assert len(g.vertices) - g.num_edges + len(g.faces) == 2 * comps


@pytest.mark.parametrize("rows,cols", [(1, 3), (2, 4), (3, 5), (4, 8)])
def test_cylinder_face_count(rows, cols):
    g = cylinder_graph(rows, cols)
    assert g.num_edges == rows * cols + (rows - 1) * cols
    # quads between rings plus the two ring faces
    assert len(g.faces) == (rows - 1) * cols + 2


def test_classify_square_one_face():
    g = PlaneGraph("abcd", SQUARE)
    inst = classify_instance(g, [("a", "c"), ("b", "d")])
    assert inst.kind == "one_face"


def test_classify_path_st():
    g = AbstractGraph("abc", [("a", "b"), ("b", "c")])
    inst = classify_instance(g, {"s": "a", "t": "c", "k": 2})
    assert inst.kind == "st" and inst.k == 2


def test_classify_cylinder_two_face():
    g = cylinder_graph(3, 6)
    inst = classify_instance(g, [(0, 12), (3, 15)])
    assert inst.kind == "two_face"
    assert {0, 3} <= set(g.faces[inst.S].vertices)
    assert {12, 15} <= set(g.faces[inst.T].vertices)


def test_json_round_trip():
    g = cylinder_graph(2, 4)
    inst = classify_instance(g, [(0, 4), (2, 6)], force="two_face")
    back = instance_from_json(instance_to_json(inst))
    assert back.kind == "two_face" and back.pairs == inst.pairs
    assert back.graph.rotation == g.rotation
    assert "rotation" in to_dot(g)
