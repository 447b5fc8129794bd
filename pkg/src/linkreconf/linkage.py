"""Linkages, s-t linkages, adjacency and sequence verification."""

from __future__ import annotations

from typing import Any, Iterable, List, Sequence, Tuple

from .errors import InvalidLinkage, NotAdjacent, NotAPath, SharedVertex, WrongEndpoints
from .plane_graph import Instance, Vertex, vkey

Path = Tuple[Vertex, ...]
Linkage = Tuple[Path, ...]


def path_key(p: Sequence[Vertex]) -> tuple:
    return tuple(vkey(v) for v in p)


def st_linkage(paths: Iterable[Sequence[Vertex]]) -> Linkage:
    """Canonical form of an s-t linkage: paths sorted by their vertex sequences."""
    return tuple(sorted((tuple(p) for p in paths), key=path_key))


def as_linkage(paths: Iterable[Sequence[Vertex]]) -> Linkage:
    return tuple(tuple(p) for p in paths)


def check_path(graph: Any, path: Sequence[Vertex], i: int = 0) -> None:
    if len(path) < 2:
        raise NotAPath(i, "fewer than two vertices")
    if len(set(path)) != len(path):
        raise NotAPath(i, "repeated vertex")
    for a, b in zip(path, path[1:]):
        if a not in graph or b not in graph or not graph.has_edge(a, b):
            raise NotAPath(i, f"no edge {a!r}-{b!r}")


def validate_linkage(inst: Instance, linkage: Sequence[Sequence[Vertex]]) -> None:
    """Raise unless ``linkage`` is a linkage (or s-t linkage) of ``inst``."""
    g = inst.graph
    if inst.st is not None:
        s, t = inst.st
        if inst.k and len(linkage) != inst.k:
            raise NotAPath(len(linkage), f"expected {inst.k} paths, got {len(linkage)}")
        owner = {}
        seen = set()
        for i, p in enumerate(linkage):
            check_path(g, p, i)
            if p[0] != s or p[-1] != t:
                raise WrongEndpoints(i)
            if tuple(p) in seen:
                raise SharedVertex(p[1], i, i)
            seen.add(tuple(p))
            for v in p[1:-1]:
                if v in owner:
                    raise SharedVertex(v, owner[v], i)
                owner[v] = i
        return
    if len(linkage) != len(inst.pairs):
        raise NotAPath(len(linkage), f"expected {len(inst.pairs)} paths, got {len(linkage)}")
    owner = {}
    for i, (p, (s, t)) in enumerate(zip(linkage, inst.pairs)):
        check_path(g, p, i)
        if p[0] != s or p[-1] != t:
            raise WrongEndpoints(i)
        for v in p:
            if v in owner:
                raise SharedVertex(v, owner[v], i)
            owner[v] = i
    terminals = {v for pair in inst.pairs for v in pair}
    for v, i in owner.items():
        if v in terminals and v not in inst.pairs[i]:
            raise SharedVertex(v, i, i)


def adjacent(a: Sequence[Sequence[Vertex]], b: Sequence[Sequence[Vertex]], st: bool = False) -> bool:
    if st:
        sa = {tuple(p) for p in a}
        sb = {tuple(p) for p in b}
        return len(sa) == len(sb) and len(sa - sb) == 1
    if len(a) != len(b):
        return False
    return sum(tuple(p) != tuple(q) for p, q in zip(a, b)) == 1


def verify_sequence(inst: Instance, seq: Sequence[Sequence[Sequence[Vertex]]]) -> None:
    """Raise ``InvalidLinkage``/``NotAdjacent`` at the first bad index."""
    st = inst.st is not None
    for i, lk in enumerate(seq):
        try:
            validate_linkage(inst, lk)
        except (NotAPath, WrongEndpoints, SharedVertex) as exc:
            raise InvalidLinkage(i, exc) from exc
    for i in range(len(seq) - 1):
        if not adjacent(seq[i], seq[i + 1], st=st):
            raise NotAdjacent(i)


def elide_repeats(seq: Iterable[Linkage], st: bool = False) -> List[Linkage]:
    """Drop consecutive duplicates (st mode compares as sets)."""
    out: List[Linkage] = []
    for lk in seq:
        key = st_linkage(lk) if st else lk
        if out and (st_linkage(out[-1]) if st else out[-1]) == key:
            continue
        out.append(key)
    return out
