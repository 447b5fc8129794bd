import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkreconf.crossings import mu_two_face
from linkreconf.errors import InvalidNcl, MalformedLinkage, NotPlanarH, TooFewColumns
from linkreconf.generators import (
    NclConfig,
    NclGraph,
    bandwidth,
    canonical_config,
    damaged_cylinder,
    flip_sequence,
    gen_cylinder,
    gen_figure1,
    gen_ncl_planar,
    gen_ncl_stpaths,
    is_created,
    legal_flips,
    ncl_validate,
    random_ncl_config,
    random_ncl_graph,
    random_one_face,
    random_st_graph,
)
from linkreconf.linkage import validate_linkage, verify_sequence
from linkreconf.plane_graph import PlaneGraph

# prism: AND triangle a1 a2 a3 of weight 1, OR triangle b1 b2 b3, spokes a_i - b_i of weight 2
PRISM = NclGraph(
    ("a1", "a2", "a3", "b1", "b2", "b3"),
    (("a1", "a2", 1), ("a2", "a3", 1), ("a3", "a1", 1),
     ("b1", "b2", 2), ("b2", "b3", 2), ("b3", "b1", 2),
     ("a1", "b1", 2), ("a2", "b2", 2), ("a3", "b3", 2)),
)
# K4 with every edge of weight 2: four OR vertices
K4_OR = NclGraph(
    ("a", "b", "c", "d"),
    (("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2), ("a", "c", 2), ("b", "d", 2)),
)
# K3,3 with all weights 2 is cubic but not planar
K33 = NclGraph(tuple(range(6)), tuple((i, j, 2) for i in range(3) for j in range(3, 6)))


def color_counts(inst):
    names = [str(v) for v in inst.graph.vertices]
    count = {c: sum(n.startswith(c + ":") for n in names) for c in "rbwk"}
    count["k"] += sum(n in ("s", "t") for n in names)
    return count


def test_ncl_graph_invariants():
    assert PRISM.and_vertices == ["a1", "a2", "a3"]
    assert PRISM.or_vertices == ["b1", "b2", "b3"]
    assert K4_OR.or_vertices == ["a", "b", "c", "d"]
    with pytest.raises(InvalidNcl):
        NclGraph(("a", "b"), (("a", "b", 2),))
    with pytest.raises(InvalidNcl):
        NclGraph(("a", "b", "c", "d"), K4_OR.edges[:5] + (("b", "d", 3),))


def test_ncl_validate_examples():
    # one incoming weight-2 edge suffices at an OR vertex
    cyc = NclConfig(("b", "c", "d", "a", "c", "d"))
    assert ncl_validate(K4_OR, cyc) is None
    # spokes point into the b triangle, so a1 only receives the light edge from a3
    c = NclConfig(("a2", "a3", "a1", "b2", "b3", "b1", "b1", "b2", "b3"))
    assert ncl_validate(PRISM, c) == "a1"
    fixed = NclConfig(("a2", "a3", "a1", "b2", "b3", "b1", "a1", "a2", "a3"))
    assert ncl_validate(PRISM, fixed) is None
    found = random_ncl_config(PRISM, random.Random(0))
    assert found is not None and ncl_validate(PRISM, found) is None
    with pytest.raises(InvalidNcl):
        ncl_validate(PRISM, NclConfig(("b1",) * 9))


def test_flip_legality_is_validity_after_flip():
    rng = random.Random(3)
    h = random_ncl_graph(rng, 8)
    c = random_ncl_config(h, rng)
    for e in range(len(h.edges)):
        assert (e in legal_flips(h, c)) == (ncl_validate(h, c.flip(h, e)) is None)


def _stpaths_checks(h, sigma, tau):
    inst, P, Q = gen_ncl_stpaths(h, sigma, tau)
    nv, na = len(h.vertices), len(h.and_vertices)
    e1, e2 = len(h.weight_edges(1)), len(h.weight_edges(2))
    cnt = color_counts(inst)
    assert cnt["r"] == 2 * na + 2 * e2
    assert cnt["b"] == 2 * nv + 2 * e1
    assert cnt["w"] == 3 * nv == 2 * len(h.edges)
    assert cnt["k"] == 2 + na
    assert inst.k == 2
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    assert max(inst.graph.degree(v) for v in inst.graph.vertices) <= 4
    assert canonical_config(inst, P) == sigma and canonical_config(inst, Q) == tau
    return inst


def _planar_checks(h, sigma, tau):
    inst, P, Q = gen_ncl_planar(h, sigma, tau)
    assert isinstance(inst.graph, PlaneGraph)
    g = inst.graph
    assert len(g.vertices) - g.num_edges + len(g.faces) == 2 * len(g.components())
    assert inst.k == len(h.edges) + len(h.vertices) + len(h.or_vertices)
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    ne, nv = len(h.edges), len(h.vertices)
    ors = set(h.or_vertices)
    for i, p in enumerate(P):
        if i < ne:
            assert len(p) - 1 == 2
        elif i < ne + nv and h.vertices[i - ne] in ors:
            assert len(p) - 1 == 4
        elif i >= ne + nv:
            assert len(p) - 1 == 2
    assert canonical_config(inst, P) == sigma and canonical_config(inst, Q) == tau
    return inst


def _flip_walk(inst, h, sigma, planar, rng, steps=6):
    cfg, ch, longest = sigma, None, 0
    for _ in range(steps):
        flips = legal_flips(h, cfg)
        if not flips:
            break
        e = rng.choice(flips)
        seq, after, ch = flip_sequence(inst, cfg, e, ch)
        verify_sequence(inst, seq)
        assert is_created(h, after, ch, planar)
        assert canonical_config(inst, seq[-1]) == after == cfg.flip(h, e)
        longest = max(longest, len(seq) - 1)
        cfg = after
    return longest


@pytest.mark.parametrize("h", [PRISM, K4_OR], ids=["and", "or"])
def test_small_reductions(h):
    rng = random.Random(0)
    sigma, tau = random_ncl_config(h, rng), random_ncl_config(h, rng)
    _stpaths_checks(h, sigma, tau)
    # no rotation given: planarity is checked on the graph itself
    _planar_checks(h, sigma, tau)


def test_nonplanar_and_or_graph_rejected():
    rng = random.Random(0)
    sigma = random_ncl_config(K33, rng)
    with pytest.raises(NotPlanarH):
        gen_ncl_planar(K33, sigma, sigma)
    _stpaths_checks(K33, sigma, sigma)


def test_invalid_configuration_rejected():
    bad = NclConfig(("a2", "a3", "a1", "b2", "b3", "b1", "b1", "b2", "b3"))
    with pytest.raises(InvalidNcl):
        gen_ncl_stpaths(PRISM, bad, bad)


def test_canonical_config_rejects_foreign_linkage():
    rng = random.Random(1)
    h = random_ncl_graph(rng, 6)
    sigma = random_ncl_config(h, rng)
    inst, P, _ = gen_ncl_stpaths(h, sigma, sigma)
    with pytest.raises(MalformedLinkage):
        canonical_config(inst, [P[0][:2] + P[0][-1:], P[1]])


@settings(max_examples=12, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.sampled_from([4, 6, 8, 10, 12]))
def test_random_reductions_and_flips(seed, n):
    rng = random.Random(seed)
    h = random_ncl_graph(rng, n, planar=True)
    sigma, tau = random_ncl_config(h, rng), random_ncl_config(h, rng)
    st_inst = _stpaths_checks(h, sigma, tau)
    pl_inst = _planar_checks(h, sigma, tau)
    assert _flip_walk(st_inst, h, sigma, False, rng) <= 5
    assert _flip_walk(pl_inst, h, sigma, True, rng) <= 5


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.sampled_from([4, 6, 8, 10, 12]))
def test_layout_bandwidth_certificate(seed, n):
    rng = random.Random(seed)
    h = random_ncl_graph(rng, n)
    sigma = random_ncl_config(h, rng)
    layout = {v: i for i, v in enumerate(rng.sample(list(h.vertices), n))}
    c = max(abs(layout[u] - layout[v]) for u, v, _ in h.edges)
    inst, P, Q = gen_ncl_stpaths(h, sigma, sigma, layout=layout)
    validate_linkage(inst, P)
    assert canonical_config(inst, P) == sigma
    emitted = inst.meta["layout"]
    assert len(set(emitted.values())) == len(emitted) == len(inst.graph.vertices)
    assert bandwidth(inst.graph, emitted) <= 8 * (4 * c + 3) + 7


def test_cylinder_generator():
    inst, P, Q = gen_cylinder(4, 6, 2, 1, 1)
    assert mu_two_face(inst, P, Q) == 0
    inst, P, Q = gen_cylinder(4, 6, 2, 0, 1)
    assert mu_two_face(inst, P, Q) == 1
    inst, P, Q = gen_cylinder(1, 4, 2)
    validate_linkage(inst, P)
    with pytest.raises(TooFewColumns):
        gen_cylinder(3, 5, 3)


def test_figure1_instance():
    inst, P, Q = gen_figure1()
    assert inst.kind == "two_face" and inst.k == 2
    validate_linkage(inst, P)
    validate_linkage(inst, Q)


@pytest.mark.parametrize("seed", range(10))
def test_random_instance_generators(seed):
    rng = random.Random(seed)
    inst = damaged_cylinder(rng)
    assert inst.kind == "two_face" and len(inst.graph.vertices) <= 16
    assert damaged_cylinder(rng, pinch=True).kind == "two_face"
    assert random_one_face(rng).kind == "one_face"
    g, s, t = random_st_graph(rng)
    assert s in g and t in g and len(g.vertices) <= 14
