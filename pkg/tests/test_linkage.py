import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkreconf.errors import NotAdjacent, NotAPath, SharedVertex, WrongEndpoints
from linkreconf.generators import gen_cylinder, st_cylinder_graph
from linkreconf.linkage import adjacent, elide_repeats, st_linkage, validate_linkage, verify_sequence
from linkreconf.plane_graph import Instance


@pytest.fixture
def cyl():
    return gen_cylinder(3, 6, 2)


def test_radial_paths_validate(cyl):
    inst, P, _ = cyl
    validate_linkage(inst, P)


def test_shared_middle_vertex(cyl):
    inst, P, _ = cyl
    crossing = ((0, 6, 7, 13, 12), (3, 9, 8, 7, 13, 14, 15))
    with pytest.raises(SharedVertex):
        validate_linkage(inst, crossing)
    with pytest.raises(NotAPath):
        validate_linkage(inst, (P[0], (3, 15)))


def test_reversed_path_has_wrong_endpoints(cyl):
    inst, P, _ = cyl
    with pytest.raises(WrongEndpoints):
        validate_linkage(inst, (P[0][::-1], P[1]))


def test_adjacency():
    A = (("a",), ("b",), ("c",))
    B = (("a",), ("x",), ("c",))
    C = (("y",), ("x",), ("c",))
    assert not adjacent(A, A)
    assert adjacent(A, B)
    assert not adjacent(A, C)


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=2), min_size=2, max_size=2))
def test_adjacency_symmetric(pair):
    a, b = ([tuple([x]) for x in lk] for lk in pair)
    if len(a) == len(b):
        assert adjacent(a, b) == adjacent(b, a)


def test_st_adjacency_ignores_order():
    A = st_linkage([("s", 1, "t"), ("s", 2, "t")])
    B = st_linkage([("s", 2, "t"), ("s", 3, "t")])
    assert adjacent(A, B, st=True)


def test_verify_examples(cyl):
    inst, P, _ = cyl
    verify_sequence(inst, [P])
    with pytest.raises(NotAdjacent) as err:
        verify_sequence(inst, [P, P])
    assert err.value.index == 0


def test_elide_repeats():
    A, B = (("a",),), (("b",),)
    assert elide_repeats([A, A, B, B, A]) == [A, B, A]


def test_st_linkage_validation():
    g, s, t = st_cylinder_graph(2, 4)
    inst = Instance(g, st=(s, t), k=2, kind="st")
    validate_linkage(inst, [(s, 0, 4, t), (s, 2, 6, t)])
    with pytest.raises(SharedVertex):
        validate_linkage(inst, [(s, 0, 4, t), (s, 1, 0, 4, t)])
