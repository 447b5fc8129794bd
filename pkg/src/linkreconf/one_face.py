"""One-face instances: always reconfigurable, with sequences built by peeling boundary paths."""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidInput
from .linkage import Linkage, Path, validate_linkage
from .plane_graph import Instance, PlaneGraph, Vertex

Move = Tuple[int, Path]


def decide_one_face(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> bool:
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    return True


def sequence_one_face(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> List[Linkage]:
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    pairs = {i: tuple(p) for i, p in enumerate(inst.pairs)}
    moves = one_face_moves(inst.graph, pairs, dict(enumerate(map(tuple, P))), dict(enumerate(map(tuple, Q))))
    return apply_moves(tuple(map(tuple, P)), moves)


def apply_moves(start: Linkage, moves: Sequence[Move]) -> List[Linkage]:
    seq = [tuple(start)]
    for i, path in moves:
        cur = list(seq[-1])
        if cur[i] == path:
            continue
        cur[i] = path
        seq.append(tuple(cur))
    return seq


def one_face_moves(g: PlaneGraph, pairs: Dict[int, Tuple[Vertex, Vertex]], P: Dict[int, Path], Q: Dict[int, Path]) -> List[Move]:
    """Single-path moves turning P into Q; terminals of all pairs share a face."""
    if not pairs:
        return []
    groups: Dict[int, List[int]] = {}
    for i, (s, _) in sorted(pairs.items()):
        groups.setdefault(g.component_of(s), []).append(i)
    if len(groups) > 1:
        moves: List[Move] = []
        for cid in sorted(groups):
            sub = g.subgraph(g.components()[cid])
            ids = groups[cid]
            moves += one_face_moves(sub, {i: pairs[i] for i in ids}, {i: P[i] for i in ids}, {i: Q[i] for i in ids})
        return moves
    peel = _boundary_candidate(g, pairs, P, Q)
    if peel is not None:
        i, R = peel
        rest = set(g.vertices) - set(R)
        others = {j: pairs[j] for j in pairs if j != i}
        inner = one_face_moves(
            g.subgraph(rest), others, {j: P[j] for j in others}, {j: Q[j] for j in others}
        )
        head = [(i, R)] if P[i] != R else []
        tail = [(i, Q[i])] if Q[i] != R else []
        return head + inner + tail
    return _split_at_cut_vertex(g, pairs, P, Q)


def _loop_erase(walk: Sequence[Vertex]) -> Path:
    out: List[Vertex] = []
    where: Dict[Vertex, int] = {}
    for v in walk:
        if v in where:
            cut = where[v]
            for u in out[cut + 1:]:
                del where[u]
            del out[cut + 1:]
        else:
            where[v] = len(out)
            out.append(v)
    return tuple(out)


def _boundary_candidate(
    g: PlaneGraph, pairs: Dict[int, Tuple[Vertex, Vertex]], P: Dict[int, Path], Q: Dict[int, Path]
) -> Optional[Tuple[int, Path]]:
    terminals = {v for p in pairs.values() for v in p}
    faces = g.faces_containing(terminals)
    if not faces:
        raise InvalidInput("terminals do not share a face")
    walk = g.faces[faces[0]].vertices
    n = len(walk)
    for i, (s, t) in sorted(pairs.items()):
        others = set()
        for j in pairs:
            if j != i:
                others.update(P[j])
                others.update(Q[j])
        bad = terminals - {s, t}
        for a in range(n):
            if walk[a] not in (s, t):
                continue
            target = t if walk[a] == s else s
            arc = [walk[a]]
            for step in range(1, n + 1):
                v = walk[(a + step) % n]
                arc.append(v)
                if v in bad:
                    break
                if v == target:
                    R = _loop_erase(arc if walk[a] == s else arc[::-1])
                    if not others.intersection(R):
                        return i, R
                    break
    return None


def _cut_vertex(g: PlaneGraph) -> Optional[Vertex]:
    for v in g.vertices:
        rest = [u for u in g.vertices if u != v]
        if not rest:
            continue
        seen = {rest[0]}
        queue = deque([rest[0]])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y != v and y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) < len(rest):
            return v
    return None


def _split_at_cut_vertex(
    g: PlaneGraph, pairs: Dict[int, Tuple[Vertex, Vertex]], P: Dict[int, Path], Q: Dict[int, Path]
) -> List[Move]:
    v = _cut_vertex(g)
    if v is None:
        raise InvalidInput("no free boundary path in a 2-connected one-face instance")
    minus = g.subgraph(u for u in g.vertices if u != v)
    first = set(minus.components()[minus.component_of(next(iter(pairs.values()))[0] if next(iter(pairs.values()))[0] != v else next(iter(pairs.values()))[1])])
    side = {u: (1 if u in first else 2) for u in g.vertices if u != v}
    side[v] = 0

    sub_pairs: Dict[int, Dict[int, Tuple[Vertex, Vertex]]] = {1: {}, 2: {}}
    crossing: Dict[int, Tuple[int, int]] = {}
    for i, (s, t) in pairs.items():
        a, b = side[s], side[t]
        if a and b and a != b:
            crossing[i] = (a, b)
            sub_pairs[a][i] = (s, v)
            sub_pairs[b][i] = (v, t)
        else:
            sub_pairs[a or b][i] = (s, t)

    def part(path: Path, i: int, which: int) -> Path:
        if i not in crossing:
            return path
        cut = path.index(v)
        return path[: cut + 1] if crossing[i][0] == which else path[cut:]

    def user(paths: Dict[int, Path]) -> Optional[int]:
        for i, p in paths.items():
            if v in p and i not in crossing:
                return side[p[0]] or side[p[-1]]
        return None

    if crossing:
        order, with_v = (1, 2), {1: True, 2: True}
    else:
        sp, sq = user(P), user(Q)
        a = sp if sp else (3 - sq if sq else 1)
        b = 3 - a
        order = (a, b)
        with_v = {a: sp in (None, a), b: sq in (None, b)}

    state = dict(P)
    moves: List[Move] = []
    for which in order:
        ids = sorted(sub_pairs[which])
        if not ids:
            continue
        keep = [u for u in g.vertices if side[u] == which or (u == v and with_v[which])]
        sub = g.subgraph(keep)
        sub_moves = one_face_moves(
            sub,
            sub_pairs[which],
            {i: part(state[i], i, which) for i in ids},
            {i: part(Q[i], i, which) for i in ids},
        )
        for i, piece in sub_moves:
            if i in crossing:
                cur = state[i]
                cut = cur.index(v)
                full = piece + cur[cut + 1:] if crossing[i][0] == which else cur[:cut] + piece
            else:
                full = piece
            state[i] = full
            moves.append((i, full))
    return moves
