"""Signed crossings between embedded paths and the reference curve used for lifting.

Sides are read off the rotation system: at an interior vertex ``v`` of an
oriented path ``Q`` with predecessor ``a`` and successor ``b``, a neighbor lies
to the left of ``Q`` when it comes strictly after ``a`` and strictly before
``b`` in clockwise order around ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .errors import DegenerateAtTerminal, InconsistentMu, NoDualPath, SharedEndpoint
from .plane_graph import Dart, Instance, PlaneGraph, Vertex
from .words import FreeWord, word_from_crossings

Path = Tuple[Vertex, ...]


@dataclass(frozen=True)
class SharedSubwalk:
    """Maximal common subwalk ``Q[qa..qb]`` of ``P`` and ``Q``.

    ``direction`` is +1 when ``P`` traverses it in the same direction as ``Q``,
    -1 when opposite and 0 for a single shared vertex.
    """

    P: Path
    Q: Path
    qa: int
    qb: int
    direction: int

    def touches_endpoint(self) -> bool:
        pos = {v: i for i, v in enumerate(self.P)}
        ends = {0, len(self.P) - 1}
        if self.qa == 0 or self.qb == len(self.Q) - 1:
            return True
        return pos[self.Q[self.qa]] in ends or pos[self.Q[self.qb]] in ends


def shared_subwalks(P: Sequence[Vertex], Q: Sequence[Vertex]) -> Iterator[SharedSubwalk]:
    P, Q = tuple(P), tuple(Q)
    pos = {v: i for i, v in enumerate(P)}
    m = 0
    n = len(Q)
    while m < n:
        if Q[m] not in pos:
            m += 1
            continue
        start = m
        direction = 0
        while m + 1 < n and Q[m + 1] in pos and abs(pos[Q[m + 1]] - pos[Q[m]]) == 1:
            step = pos[Q[m + 1]] - pos[Q[m]]
            if direction and step != direction:
                break
            direction = step
            m += 1
        yield SharedSubwalk(P, Q, start, m, direction)
        m += 1


def side_of(g: PlaneGraph, v: Vertex, prev: Vertex, nxt: Vertex, x: Vertex) -> int:
    """+1 if ``x`` is left of the walk ``prev -> v -> nxt`` at ``v``, -1 if right."""
    deg = g.degree(v)
    p = g.position(v, prev)
    dn = (g.position(v, nxt) - p) % deg
    dx = (g.position(v, x) - p) % deg
    if dx == 0 or dx == dn:
        raise ValueError("neighbor coincides with the reference walk")
    return 1 if dx < dn else -1


def crossing_sign(g: PlaneGraph, sw: SharedSubwalk) -> int:
    """+1 when P passes from the left of Q to its right, -1 for the reverse, 0 for a touch."""
    if sw.touches_endpoint():
        raise DegenerateAtTerminal("shared subwalk contains a path endpoint")
    P, Q = sw.P, sw.Q
    pos = {v: i for i, v in enumerate(P)}
    a, b = sw.qa, sw.qb
    pa, pb = pos[Q[a]], pos[Q[b]]
    if sw.direction >= 0 and a == b:
        enter_v, enter_x = a, P[pa - 1]
        leave_v, leave_x = a, P[pa + 1]
    elif sw.direction > 0:
        enter_v, enter_x = a, P[pa - 1]
        leave_v, leave_x = b, P[pb + 1]
    else:
        enter_v, enter_x = b, P[pb - 1]
        leave_v, leave_x = a, P[pa + 1]
    side_in = side_of(g, Q[enter_v], Q[enter_v - 1], Q[enter_v + 1], enter_x)
    side_out = side_of(g, Q[leave_v], Q[leave_v - 1], Q[leave_v + 1], leave_x)
    if side_in == side_out:
        return 0
    return 1 if side_in > 0 else -1


def mu(g: PlaneGraph, P: Sequence[Vertex], Q: Sequence[Vertex]) -> int:
    """Algebraic intersection number of two paths with disjoint endpoint sets."""
    if {P[0], P[-1]} & {Q[0], Q[-1]}:
        raise SharedEndpoint("paths share an endpoint")
    return sum(crossing_sign(g, sw) for sw in shared_subwalks(P, Q))


def crossing_sequence(
    g: PlaneGraph, family: Sequence[Sequence[Vertex]], Qj: Sequence[Vertex], j: Optional[int] = None
) -> List[Tuple[int, int]]:
    """Nonzero crossings of the family's paths with ``Qj`` in order along ``Qj``.

    Returns ``(i, sign)`` with 1-based ``i``.  Shared subwalks that contain an
    endpoint of ``Qj`` are skipped.
    """
    found: List[Tuple[int, int, int]] = []
    for i, Pi in enumerate(family, start=1):
        for sw in shared_subwalks(Pi, Qj):
            if sw.qa == 0 or sw.qb == len(Qj) - 1:
                continue
            sign = crossing_sign(g, sw)
            if sign:
                found.append((sw.qa, i, sign))
    found.sort()
    return [(i, e) for _, i, e in found]


def words_for(g: PlaneGraph, P: Sequence[Path], Q: Sequence[Path]) -> List[FreeWord]:
    k = len(P)
    return [word_from_crossings(crossing_sequence(g, P, Qj, j), k) for j, Qj in enumerate(Q, 1)]


def mu_matrix(g: PlaneGraph, P: Sequence[Path], Q: Sequence[Path]) -> Dict[Tuple[int, int], int]:
    k = len(P)
    return {(i, j): mu(g, P[i], Q[j]) for i in range(k) for j in range(k) if i != j}


def mu_two_face(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> int:
    """Common value of mu(P_i, Q_j) over i != j; 0 when k = 1."""
    mat = mu_matrix(inst.graph, P, Q)
    values = set(mat.values())
    if len(values) > 1:
        raise InconsistentMu({f"{i + 1},{j + 1}": v for (i, j), v in mat.items()})
    return values.pop() if values else 0


# reference curve


@dataclass(frozen=True)
class ReferenceCurve:
    """Dual walk from face S to face T.

    ``darts[l]`` is the crossed edge oriented so that ``faces[l]`` lies on its
    left and ``faces[l + 1]`` on its right.
    """

    faces: Tuple[int, ...]
    darts: Tuple[Dart, ...]

    def delta_table(self) -> Dict[Dart, int]:
        out: Dict[Dart, int] = {}
        for u, v in self.darts:
            out[(u, v)] = -1
            out[(v, u)] = 1
        return out

    def crossed_edges(self) -> FrozenSet[FrozenSet[Vertex]]:
        return frozenset(frozenset(d) for d in self.darts)


def reference_curve(g: PlaneGraph, S: int, T: int, avoid: Sequence[Sequence[Vertex]]) -> ReferenceCurve:
    """Shortest dual walk from S to T that crosses no edge of the given paths."""
    blocked = {frozenset(e) for p in avoid for e in zip(p, p[1:])}
    parent: Dict[int, Tuple[int, Dart]] = {}
    seen = {S}
    queue = deque([S])
    while queue:
        f = queue.popleft()
        if f == T:
            break
        for u, v in g.faces[f].darts:
            if frozenset((u, v)) in blocked:
                continue
            h = g.left_face(v, u)
            if h in seen:
                continue
            seen.add(h)
            parent[h] = (f, (u, v))
            queue.append(h)
    if T not in seen:
        raise NoDualPath("faces S and T are separated by the given paths")
    faces = [T]
    darts: List[Dart] = []
    f = T
    while f != S:
        f, d = parent[f]
        faces.append(f)
        darts.append(d)
    faces.reverse()
    darts.reverse()
    return ReferenceCurve(tuple(faces), tuple(darts))


def lift_index(C: ReferenceCurve, walk: Sequence[Vertex], table: Optional[Dict[Dart, int]] = None) -> int:
    """Signed number of times ``walk`` crosses ``C`` (left-to-right counts +1)."""
    delta = table if table is not None else C.delta_table()
    return sum(delta.get((a, b), 0) for a, b in zip(walk, walk[1:]))
