"""Minimum vertex cuts by unit-capacity augmenting paths on the split graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import AdjacentTerminals, CutNotK, NoLinkagePossible
from .plane_graph import Instance, Vertex


@dataclass(frozen=True)
class VertexCut:
    cut: FrozenSet[Vertex]
    side: FrozenSet[Vertex]

    @property
    def size(self) -> int:
        return len(self.cut)


class _SplitFlow:
    """Vertex ``v`` becomes ``in(v) -> out(v)`` with capacity 1 unless protected."""

    def __init__(self, graph: Any, sources: Iterable[Vertex], sinks: Iterable[Vertex], protected: Iterable[Vertex]):
        self.vertices = list(graph.vertices)
        self.idx = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        self.src = 2 * n
        self.snk = 2 * n + 1
        self.head: List[int] = []
        self.cap: List[int] = []
        self.adj: List[List[int]] = [[] for _ in range(2 * n + 2)]
        big = n + 2
        prot = set(protected)
        for v in self.vertices:
            i = self.idx[v]
            self._add(2 * i, 2 * i + 1, big if v in prot else 1)
            for u in graph.neighbors(v):
                self._add(2 * i + 1, 2 * self.idx[u], big)
        for v in sources:
            self._add(self.src, 2 * self.idx[v], big)
        for v in sinks:
            self._add(2 * self.idx[v] + 1, self.snk, big)
        self.value = 0

    def _add(self, a: int, b: int, c: int) -> None:
        self.adj[a].append(len(self.head))
        self.head.append(b)
        self.cap.append(c)
        self.adj[b].append(len(self.head))
        self.head.append(a)
        self.cap.append(0)

    def augment(self) -> bool:
        parent = [-1] * len(self.adj)
        parent[self.src] = -2
        queue = deque([self.src])
        while queue:
            x = queue.popleft()
            for e in self.adj[x]:
                y = self.head[e]
                if self.cap[e] > 0 and parent[y] == -1:
                    parent[y] = e
                    if y == self.snk:
                        queue.clear()
                        break
                    queue.append(y)
        if parent[self.snk] == -1:
            return False
        y = self.snk
        while y != self.src:
            e = parent[y]
            self.cap[e] -= 1
            self.cap[e ^ 1] += 1
            y = self.head[e ^ 1]
        self.value += 1
        return True

    def run(self, limit: Optional[int] = None) -> int:
        while limit is None or self.value < limit:
            if not self.augment():
                break
        return self.value

    def reachable_from_source(self) -> List[bool]:
        seen = [False] * len(self.adj)
        seen[self.src] = True
        queue = deque([self.src])
        while queue:
            x = queue.popleft()
            for e in self.adj[x]:
                y = self.head[e]
                if self.cap[e] > 0 and not seen[y]:
                    seen[y] = True
                    queue.append(y)
        return seen

    def source_cut(self) -> VertexCut:
        seen = self.reachable_from_source()
        cut, side = set(), set()
        for v, i in self.idx.items():
            if seen[2 * i + 1]:
                side.add(v)
            elif seen[2 * i]:
                cut.add(v)
        return VertexCut(frozenset(cut), frozenset(side))


def min_terminal_separator(inst: Instance) -> Optional[VertexCut]:
    """A terminal separator of size exactly k, or None when every one has size > k."""
    k = inst.k
    terminals = [v for p in inst.pairs for v in p]
    flow = _SplitFlow(inst.graph, inst.sources, inst.sinks, terminals)
    value = flow.run(k + 1)
    if value < k:
        raise NoLinkagePossible(f"sources and sinks are separated by {value} < {k} vertices")
    if value > k:
        return None
    return flow.source_cut()


def separator_between(graph: Any, sources: Sequence[Vertex], sinks: Sequence[Vertex], bound: int) -> Optional[VertexCut]:
    """Minimum cut between two protected vertex sets if its size is at most ``bound``."""
    flow = _SplitFlow(graph, sources, sinks, list(sources) + list(sinks))
    if flow.run(bound + 1) > bound:
        return None
    return flow.source_cut()


def min_st_separator(graph: Any, s: Vertex, t: Vertex, k: Optional[int] = None) -> Optional[VertexCut]:
    """Minimum s-t vertex cut; None when ``k`` is given and the cut exceeds it."""
    if graph.has_edge(s, t):
        raise AdjacentTerminals(f"{s!r} and {t!r} are adjacent")
    flow = _SplitFlow(graph, [s], [t], [s, t])
    value = flow.run(None if k is None else k + 1)
    if k is not None and value > k:
        return None
    return flow.source_cut()


def st_connectivity(graph: Any, s: Vertex, t: Vertex, limit: Optional[int] = None) -> int:
    """Maximum number of internally disjoint s-t paths (an edge s-t counts once)."""
    flow = _SplitFlow(graph, [s], [t], [s, t])
    direct = 0
    if graph.has_edge(s, t):
        direct = 1
        flow = _SplitFlow(_WithoutEdge(graph, s, t), [s], [t], [s, t])
    return flow.run(None if limit is None else max(0, limit - direct)) + direct


def minimal_side_set(graph: Any, s: Vertex, t: Vertex, k: int, side: str = "source") -> FrozenSet[Vertex]:
    """Inclusion-minimal X containing s (or t for ``side="sink"``) with |N(X)| = k separating s, t."""
    a, b = (s, t) if side == "source" else (t, s)
    if graph.has_edge(s, t):
        raise CutNotK("adjacent terminals have no separator")
    flow = _SplitFlow(graph, [a], [b], [a, b])
    value = flow.run(k + 1)
    if value != k:
        raise CutNotK(f"minimum cut is {value if value <= k else '> ' + str(k)}, not {k}")
    return flow.source_cut().side


def neighborhood(graph: Any, X: Iterable[Vertex]) -> FrozenSet[Vertex]:
    xs = set(X)
    return frozenset(u for v in xs for u in graph.neighbors(v) if u not in xs)


def separates(graph: Any, cut: Iterable[Vertex], A: Iterable[Vertex], B: Iterable[Vertex]) -> bool:
    """True iff no path joins A to B in the graph minus ``cut``."""
    blocked = set(cut)
    targets = set(B) - blocked
    start = [v for v in A if v not in blocked]
    seen = set(start)
    queue = deque(start)
    while queue:
        x = queue.popleft()
        if x in targets:
            return False
        for y in graph.neighbors(x):
            if y not in seen and y not in blocked:
                seen.add(y)
                queue.append(y)
    return True


class _WithoutEdge:
    def __init__(self, graph: Any, a: Vertex, b: Vertex):
        self._g = graph
        self._drop = {(a, b), (b, a)}
        self.vertices = graph.vertices

    def neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return tuple(u for u in self._g.neighbors(v) if (v, u) not in self._drop)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) not in self._drop and self._g.has_edge(u, v)
