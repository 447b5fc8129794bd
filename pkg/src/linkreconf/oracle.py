"""Exhaustive reference solver: enumerate linkages and search the reconfiguration graph."""

from __future__ import annotations

from collections import deque
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidInput, TooMany
from .linkage import Linkage, Path, path_key, st_linkage
from .plane_graph import Instance, Vertex

DEFAULT_LIMIT = 2_000_000


def simple_paths(graph: Any, s: Vertex, t: Vertex, blocked: Iterable[Vertex] = ()) -> List[Path]:
    """All simple s-t paths avoiding ``blocked``, in deterministic DFS order."""
    bad = set(blocked) - {s, t}
    out: List[Path] = []
    stack = [s]
    on = {s}

    def reach_ok(v: Vertex) -> bool:
        # prune branches from which t is unreachable
        seen = {v}
        todo = [v]
        while todo:
            x = todo.pop()
            if x == t:
                return True
            for y in graph.neighbors(x):
                if y not in seen and y not in on and y not in bad:
                    seen.add(y)
                    todo.append(y)
        return False

    def dfs(v: Vertex) -> None:
        for u in graph.neighbors(v):
            if u in on or u in bad:
                continue
            if u == t:
                out.append(tuple(stack) + (t,))
                continue
            on.add(u)
            stack.append(u)
            if reach_ok(u):
                dfs(u)
            stack.pop()
            on.discard(u)

    if s == t:
        return [(s,)]
    dfs(s)
    return out


class _Space:
    """Candidate paths per slot with vertex bitmasks."""

    def __init__(self, inst: Instance):
        self.inst = inst
        g = inst.graph
        self.bit = {v: 1 << i for i, v in enumerate(g.vertices)}
        if inst.st is not None:
            s, t = inst.st
            if inst.k < 1:
                raise InvalidInput("st instance needs k >= 1")
            paths = sorted(simple_paths(g, s, t), key=path_key)
            self.paths = [paths]
            self.masks = [[self._mask(p[1:-1]) for p in paths]]
            self.index = [{p: i for i, p in enumerate(paths)}]
        else:
            terms = {v for pair in inst.pairs for v in pair}
            self.paths, self.masks, self.index = [], [], []
            for s, t in inst.pairs:
                ps = sorted(simple_paths(g, s, t, terms - {s, t}), key=path_key)
                self.paths.append(ps)
                self.masks.append([self._mask(p) for p in ps])
                self.index.append({p: i for i, p in enumerate(ps)})

    def _mask(self, vs: Iterable[Vertex]) -> int:
        m = 0
        for v in vs:
            m |= self.bit[v]
        return m

    # linkages are encoded as tuples of path indices

    def encode(self, lk: Sequence[Sequence[Vertex]]) -> Tuple[int, ...]:
        try:
            if self.inst.st is not None:
                return tuple(sorted(self.index[0][tuple(p)] for p in lk))
            return tuple(self.index[i][tuple(p)] for i, p in enumerate(lk))
        except (KeyError, IndexError) as exc:
            raise InvalidInput(f"not a path of this instance: {exc}") from exc

    def decode(self, code: Tuple[int, ...]) -> Linkage:
        if self.inst.st is not None:
            return st_linkage(self.paths[0][c] for c in code)
        return tuple(self.paths[i][c] for i, c in enumerate(code))

    def neighbors(self, code: Tuple[int, ...]) -> Iterable[Tuple[int, ...]]:
        if self.inst.st is not None:
            masks = self.masks[0]
            members = set(code)
            for pos, c in enumerate(code):
                others = 0
                for d in code:
                    if d != c:
                        others |= masks[d]
                for q, m in enumerate(masks):
                    if q in members or m & others:
                        continue
                    yield tuple(sorted(code[:pos] + (q,) + code[pos + 1:]))
            return
        for i, c in enumerate(code):
            others = 0
            for j, d in enumerate(code):
                if j != i:
                    others |= self.masks[j][d]
            for q, m in enumerate(self.masks[i]):
                if q != c and not m & others:
                    yield code[:i] + (q,) + code[i + 1:]

    def all_codes(self, limit: int) -> List[Tuple[int, ...]]:
        out: List[Tuple[int, ...]] = []
        if self.inst.st is not None:
            masks = self.masks[0]
            k = self.inst.k

            def rec_st(start: int, used: int, chosen: List[int]) -> None:
                if len(chosen) == k:
                    out.append(tuple(chosen))
                    if len(out) > limit:
                        raise TooMany(limit)
                    return
                for q in range(start, len(masks)):
                    if not masks[q] & used:
                        chosen.append(q)
                        rec_st(q + 1, used | masks[q], chosen)
                        chosen.pop()

            rec_st(0, 0, [])
            return out

        def rec(i: int, used: int, chosen: List[int]) -> None:
            if i == len(self.masks):
                out.append(tuple(chosen))
                if len(out) > limit:
                    raise TooMany(limit)
                return
            for q, m in enumerate(self.masks[i]):
                if not m & used:
                    chosen.append(q)
                    rec(i + 1, used | m, chosen)
                    chosen.pop()

        rec(0, 0, [])
        return out


def enumerate_linkages(inst: Instance, limit: int = DEFAULT_LIMIT) -> List[Linkage]:
    space = _Space(inst)
    return [space.decode(c) for c in space.all_codes(limit)]


def _bfs(space: _Space, start: Tuple[int, ...], goal: Optional[Tuple[int, ...]], limit: int):
    parent: Dict[Tuple[int, ...], Optional[Tuple[int, ...]]] = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            break
        for y in space.neighbors(x):
            if y not in parent:
                parent[y] = x
                if len(parent) > limit:
                    raise TooMany(limit)
                queue.append(y)
    return parent


def oracle_shortest(inst: Instance, P: Sequence[Path], Q: Sequence[Path], limit: int = DEFAULT_LIMIT) -> Optional[List[Linkage]]:
    """BFS-shortest reconfiguration sequence from P to Q, or None."""
    space = _Space(inst)
    a, b = space.encode(P), space.encode(Q)
    parent = _bfs(space, a, b, limit)
    if b not in parent:
        return None
    seq = []
    x: Optional[Tuple[int, ...]] = b
    while x is not None:
        seq.append(space.decode(x))
        x = parent[x]
    seq.reverse()
    return seq


def oracle_decide(inst: Instance, P: Sequence[Path], Q: Sequence[Path], limit: int = DEFAULT_LIMIT) -> bool:
    space = _Space(inst)
    a, b = space.encode(P), space.encode(Q)
    return b in _bfs(space, a, b, limit)


def reconfiguration_classes(inst: Instance, limit: int = DEFAULT_LIMIT) -> Dict[Linkage, int]:
    """Map every linkage to the id of its connected component in the reconfiguration graph."""
    space = _Space(inst)
    comp: Dict[Tuple[int, ...], int] = {}
    cid = -1
    for code in space.all_codes(limit):
        if code in comp:
            continue
        cid += 1
        comp[code] = cid
        queue = deque([code])
        while queue:
            x = queue.popleft()
            for y in space.neighbors(x):
                if y not in comp:
                    comp[y] = cid
                    queue.append(y)
    return {space.decode(c): i for c, i in comp.items()}
