"""Instance suites shared by the module tests and the acceptance run.

Every suite pairs an instance with linkages drawn from the brute-force
oracle, so expected answers always come from exhaustive search.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Dict, List, Tuple

from linkreconf.generators import damaged_cylinder, gen_cylinder, gen_figure1, random_one_face, random_st_graph
from linkreconf.linkage import Linkage
from linkreconf.oracle import reconfiguration_classes
from linkreconf.plane_graph import Instance
from linkreconf.separators import st_connectivity


@dataclass
class Case:
    inst: Instance
    P: Linkage
    Q: Linkage
    expected: bool


def _pairs(rng: random.Random, cls: Dict[Linkage, int], n: int) -> List[Tuple[Linkage, Linkage]]:
    """Sample ``n`` ordered pairs, half of them across classes when possible."""
    L = sorted(cls, key=repr)
    out = []
    for m in range(n):
        A = rng.choice(L)
        other = [B for B in L if cls[B] != cls[A]]
        same = [B for B in L if cls[B] == cls[A]]
        B = rng.choice(other) if other and m % 2 == 0 else rng.choice(same)
        out.append((A, B))
    return out


@functools.lru_cache(maxsize=None)
def two_face_suite(seed: int = 1, target: int = 520) -> Tuple[Case, ...]:
    """Cylinders with at most 16 vertices, intact, damaged and pinched, k at most 3.

    Instances with one reconfiguration class are kept less often so that NO
    answers are well represented.
    """
    rng = random.Random(seed)
    dims = [(r, c, k) for r in (1, 2, 3, 4) for c in range(3, 9) for k in (1, 2, 3)
            if r * c <= 16 and c >= 2 * k]
    cases: List[Case] = []
    m = 0
    while len(cases) < target:
        m += 1
        if m % 4 == 0:
            inst, _, _ = gen_cylinder(*rng.choice(dims))
        elif m % 4 == 1:
            inst = gen_figure1()[0] if m % 8 == 1 else gen_cylinder(4, 4, 2)[0]
        else:
            inst = damaged_cylinder(rng, pinch=m % 4 == 3)
        cls = reconfiguration_classes(inst)
        if not cls or (len(set(cls.values())) == 1 and rng.random() < 0.5):
            continue
        for A, B in _pairs(rng, cls, 4):
            cases.append(Case(inst, A, B, cls[A] == cls[B]))
    return tuple(cases)


@functools.lru_cache(maxsize=None)
def one_face_suite(seed: int = 2, target: int = 210) -> Tuple[Case, ...]:
    rng = random.Random(seed)
    cases: List[Case] = []
    while len(cases) < target:
        inst = random_one_face(rng)
        cls = reconfiguration_classes(inst)
        if not cls:
            continue
        for A, B in _pairs(rng, cls, 2):
            cases.append(Case(inst, A, B, cls[A] == cls[B]))
    return tuple(cases)


@functools.lru_cache(maxsize=None)
def st_suite(seed: int = 3, target: int = 310) -> Tuple[Case, ...]:
    """Random planar s-t instances with at most 14 vertices and 2 <= k <= 3."""
    rng = random.Random(seed)
    cases: List[Case] = []
    while len(cases) < target:
        g, s, t = random_st_graph(rng)
        kmax = st_connectivity(g, s, t)
        if kmax < 2:
            continue
        k = rng.randint(2, min(3, kmax))
        inst = Instance(g, st=(s, t), k=k, kind="st")
        cls = reconfiguration_classes(inst)
        if len(cls) < 2 or (len(set(cls.values())) == 1 and rng.random() < 0.6):
            continue
        for A, B in _pairs(rng, cls, 3):
            cases.append(Case(inst, A, B, cls[A] == cls[B]))
    return tuple(cases)


def check_engine_run(inst: Instance, run) -> int:
    """Assert that the join bounds both ends and every step moves strictly up to it.

    Returns the number of checked steps.
    """
    from linkreconf.linkage import validate_linkage

    validate_linkage(inst, run.join)
    c = run.cover
    if c is None:
        return 0
    lift = {}

    def L(p):
        if p not in lift:
            lift[p] = c.lift(p)
        return lift[p]

    steps = 0
    for seq in (run.forward, run.backward):
        for x, y in zip(seq[0], run.join):
            assert c.precedes(L(x), L(y)), "join is not an upper bound"
        for a, b in zip(seq, seq[1:]):
            changed = [i for i, (p, q) in enumerate(zip(a, b)) if p != q]
            assert len(changed) == 1
            i = changed[0]
            p, q = L(a[i]), L(b[i])
            assert c.precedes(p, q) and not c.precedes(q, p), "step is not strict progress"
            assert c.precedes(q, L(run.join[i])), "step overshoots the join"
            steps += 1
        assert seq[-1] == run.join
    return steps
