import itertools
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from linkreconf.errors import AdjacentTerminals, CutNotK, NoLinkagePossible
from linkreconf.generators import damaged_cylinder, gen_cylinder, random_plane_graph
from linkreconf.plane_graph import AbstractGraph, Instance
from linkreconf.separators import (
    min_st_separator,
    min_terminal_separator,
    minimal_side_set,
    neighborhood,
    separates,
    st_connectivity,
)


def brute_min_cut(graph, A, B, protected):
    """Smallest unprotected vertex set separating A from B, by exhaustive search."""
    free = [v for v in graph.vertices if v not in protected]
    for size in range(len(free) + 1):
        for cut in itertools.combinations(free, size):
            if separates(graph, cut, A, B):
                return size
    return None


def test_cylinder_has_no_small_terminal_separator():
    inst, _, _ = gen_cylinder(2, 4, 2)
    assert brute_min_cut(inst.graph, inst.sources, inst.sinks, set(inst.sources + inst.sinks)) is None
    assert min_terminal_separator(inst) is None


def test_thinned_ring_gives_cut_of_size_k():
    inst, _, _ = gen_cylinder(3, 4, 2)
    g = inst.graph.subgraph(v for v in inst.graph.vertices if v not in (5, 7))
    sub = Instance(g, pairs=inst.pairs, k=2, kind="two_face")
    cut = min_terminal_separator(sub)
    assert cut is not None and cut.cut == frozenset({4, 6})


def test_single_shared_middle_vertex():
    g = AbstractGraph(["s1", "s2", "v", "t1", "t2"], [("s1", "v"), ("s2", "v"), ("v", "t1"), ("v", "t2")])
    inst = Instance(g, pairs=(("s1", "t1"), ("s2", "t2")), k=2)
    with pytest.raises(NoLinkagePossible):
        min_terminal_separator(inst)


@pytest.mark.parametrize("seed", range(40))
def test_terminal_separator_matches_brute_force(seed):
    inst = damaged_cylinder(random.Random(seed), max_vertices=12)
    terms = set(inst.sources + inst.sinks)
    direct = any(inst.graph.has_edge(a, b) for a in inst.sources for b in inst.sinks)
    best = None if direct else brute_min_cut(inst.graph, inst.sources, inst.sinks, terms)
    if best is not None and best < inst.k:
        with pytest.raises(NoLinkagePossible):
            min_terminal_separator(inst)
        return
    cut = min_terminal_separator(inst)
    if best is None or best > inst.k:
        assert cut is None
    else:
        assert cut.size == inst.k and not cut.cut & terms
        assert separates(inst.graph, cut.cut, inst.sources, inst.sinks)


def test_path_cut():
    g = AbstractGraph("svt", [("s", "v"), ("v", "t")])
    assert min_st_separator(g, "s", "t").cut == frozenset("v")
    assert minimal_side_set(g, "s", "t", 1) == frozenset("s")
    with pytest.raises(AdjacentTerminals):
        min_st_separator(g, "s", "v")


def test_menger_on_parallel_paths():
    edges = []
    for i in range(4):
        edges += [("s", f"a{i}"), (f"a{i}", f"b{i}"), (f"b{i}", "t")]
    g = AbstractGraph(["s", "t"] + [f"{c}{i}" for c in "ab" for i in range(4)], edges)
    assert st_connectivity(g, "s", "t") == 4
    assert min_st_separator(g, "s", "t").size == 4
    assert min_st_separator(g, "s", "t", k=3) is None
    with pytest.raises(CutNotK):
        minimal_side_set(g, "s", "t", 3)


def _valid_sides(g, s, t, k):
    free = [v for v in g.vertices if v not in (s, t)]
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            X = frozenset((s,) + extra)
            N = neighborhood(g, X)
            if len(N) == k and t not in N:
                yield X


@settings(max_examples=60, deadline=None)
@given(n=st.integers(5, 10), seed=st.integers(0, 10**6))
def test_connectivity_and_minimal_side_brute_force(n, seed):
    rng = random.Random(seed)
    g = random_plane_graph(n, rng, keep=rng.choice([0.4, 0.7]))
    s, t = rng.sample(list(g.vertices), 2)
    assume(not g.has_edge(s, t))
    k = st_connectivity(g, s, t)
    assert k == brute_min_cut(g, [s], [t], {s, t})
    cut = min_st_separator(g, s, t)
    assert cut.size == k and separates(g, cut.cut, [s], [t])
    X = minimal_side_set(g, s, t, k)
    assert s in X and len(neighborhood(g, X)) == k
    valid = list(_valid_sides(g, s, t, k))
    assert X in valid
    assert all(X <= Y for Y in valid)
    Y = minimal_side_set(g, s, t, k, side="sink")
    assert t in Y and len(neighborhood(g, Y)) == k


def test_adjacent_terminals_count_the_edge():
    g = AbstractGraph("stab", [("s", "t"), ("s", "a"), ("a", "t"), ("s", "b"), ("b", "t")])
    assert st_connectivity(g, "s", "t") == 3
