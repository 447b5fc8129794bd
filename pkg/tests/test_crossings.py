import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from linkreconf.crossings import (
    crossing_sequence,
    lift_index,
    mu,
    mu_matrix,
    mu_two_face,
    reference_curve,
    shared_subwalks,
    words_for,
)
from linkreconf.errors import SharedEndpoint
from linkreconf.generators import gen_cylinder, random_plane_graph
from linkreconf.oracle import simple_paths
from linkreconf.words import abelianize

from support import one_face_suite, two_face_suite


def _random_paths(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng.randint(6, 12), rng, keep=rng.choice([0.6, 0.9]))
    a, b, c, d = rng.sample(list(g.vertices), 4)
    # neither path may pass through an endpoint of the other
    ps, qs = simple_paths(g, a, b, blocked=(c, d)), simple_paths(g, c, d, blocked=(a, b))
    if not ps or not qs:
        return None
    return g, rng.choice(ps), rng.choice(qs)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_mu_antisymmetric(seed):
    drawn = _random_paths(seed)
    assume(drawn is not None)
    g, P, Q = drawn
    assert mu(g, P, Q) == -mu(g, Q, P)
    assert mu(g, P, Q[::-1]) == -mu(g, P, Q)


def test_mu_disjoint_paths_zero():
    inst, P, _ = gen_cylinder(3, 6, 2)
    assert mu(inst.graph, P[0], P[1]) == 0
    assert list(shared_subwalks(P[0], P[1])) == []


def test_mu_rejects_shared_endpoint():
    inst, P, _ = gen_cylinder(3, 6, 2)
    with pytest.raises(SharedEndpoint):
        mu(inst.graph, P[0], P[0])


@pytest.mark.parametrize("rows,cols,k", [(6, 6, 2), (3, 8, 1), (8, 12, 3)])
@pytest.mark.parametrize("wp,wq", [(0, 0), (0, 1), (1, 0), (0, 2), (-1, 1), (2, -1)])
def test_cylinder_mu_is_winding_difference(rows, cols, k, wp, wq):
    inst, P, Q = gen_cylinder(rows, cols, k, wp, wq)
    # with a single pair there is no i != j entry and the common value is 0
    assert mu_two_face(inst, P, Q) == (wq - wp if k > 1 else 0)
    assert set(mu_matrix(inst.graph, P, Q).values()) <= {wq - wp}


def test_same_linkage_mu_zero():
    inst, P, _ = gen_cylinder(6, 9, 3, 1, 0)
    assert mu_two_face(inst, P, P) == 0


def test_crossing_sequence_of_disjoint_family_is_empty():
    inst, P, _ = gen_cylinder(3, 6, 2)
    assert crossing_sequence(inst.graph, [P[0]], P[1]) == []


def test_once_wound_word_abelianizes_to_winding():
    inst, P, Q = gen_cylinder(4, 6, 2, 0, 1)
    ws = words_for(inst.graph, P, Q)
    assert abelianize(ws[0], 2)[1] == mu(inst.graph, P[1], Q[0]) == 1
    assert abelianize(ws[1], 2)[0] == mu(inst.graph, P[0], Q[1]) == 1


def _check_word_entries(case):
    g = case.inst.graph
    ws = words_for(g, case.P, case.Q)
    k = case.inst.k
    for j, w in enumerate(ws):
        ab = abelianize(w, k)
        for i in range(k):
            if i != j:
                assert ab[i] == mu(g, case.P[i], case.Q[j])


def test_word_entries_match_mu_two_face_suite():
    for case in two_face_suite()[::5]:
        _check_word_entries(case)


def test_word_entries_match_mu_one_face_suite():
    for case in one_face_suite()[::3]:
        _check_word_entries(case)


def test_reference_curve_and_lift_index():
    inst, P, _ = gen_cylinder(3, 6, 2)
    g = inst.graph
    C = reference_curve(g, inst.S, inst.T, P)
    assert C.faces[0] == inst.S and C.faces[-1] == inst.T
    used = {frozenset(e) for p in P for e in zip(p, p[1:])}
    assert not used & C.crossed_edges()
    for p in P:
        assert lift_index(C, p) == 0
    ring = list(range(6)) + [0]
    once = lift_index(C, ring)
    assert abs(once) == 1
    assert lift_index(C, ring[::-1]) == -once
    # a cycle around the middle ring crosses C once as well, with the same orientation
    assert lift_index(C, [6 + c for c in range(6)] + [6]) == once
