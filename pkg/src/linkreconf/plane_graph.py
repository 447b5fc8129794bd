"""Plane graphs given by rotation systems, face tracing and instance classification."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    AsymmetricRotation,
    InvalidInput,
    MultiEdgeOrLoop,
    NotPlanarEmbedding,
    TerminalNotInGraph,
)

Vertex = Hashable
Dart = Tuple[Vertex, Vertex]


def vkey(v: Vertex) -> tuple:
    """Sort key that orders mixed int/str vertex ids deterministically."""
    if isinstance(v, bool):
        return (2, str(v))
    if isinstance(v, int):
        return (0, v, "")
    if isinstance(v, tuple):
        return (1, 0, tuple(vkey(x) for x in v))
    return (1, 1, str(v))


@dataclass(frozen=True)
class Face:
    id: int
    darts: Tuple[Dart, ...]
    isolated: Optional[Vertex] = None

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        """Boundary walk as a vertex sequence (tails of the darts)."""
        if self.isolated is not None:
            return (self.isolated,)
        return tuple(d[0] for d in self.darts)

    def __len__(self) -> int:
        return len(self.darts)


class PlaneGraph:
    """Simple graph with a clockwise rotation system.

    The face to the left of dart ``u -> v`` continues with the dart ``v -> w``
    where ``w`` follows ``u`` in the clockwise rotation at ``v``.
    """

    __slots__ = ("vertices", "rotation", "index", "_pos", "faces", "_dart_face", "_comp")

    def __init__(self, vertices: Sequence[Vertex], rotation: Mapping[Vertex, Sequence[Vertex]]):
        self.vertices: Tuple[Vertex, ...] = tuple(vertices)
        self.index: Dict[Vertex, int] = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise InvalidInput("duplicate vertex ids")
        for v in rotation:
            if v not in self.index:
                raise InvalidInput(f"rotation given for undeclared vertex {v!r}")
        self.rotation: Dict[Vertex, Tuple[Vertex, ...]] = {
            v: tuple(rotation.get(v, ())) for v in self.vertices
        }
        self._pos: Dict[Vertex, Dict[Vertex, int]] = {}
        for v, rot in self.rotation.items():
            pos = {}
            for i, u in enumerate(rot):
                if u == v:
                    raise MultiEdgeOrLoop(f"loop at {v!r}")
                if u not in self.index:
                    raise InvalidInput(f"{v!r} lists undeclared vertex {u!r}")
                if u in pos:
                    raise MultiEdgeOrLoop(f"parallel edges between {v!r} and {u!r}")
                pos[u] = i
            self._pos[v] = pos
        for v, rot in self.rotation.items():
            for u in rot:
                if v not in self._pos[u]:
                    raise AsymmetricRotation(u, v)
        self._trace_faces()
        self._check_euler()

    # basic queries

    def __contains__(self, v: Vertex) -> bool:
        return v in self.index

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self.rotation[v]

    def degree(self, v: Vertex) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._pos.get(u, ())

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        out = []
        for v in self.vertices:
            for u in self.rotation[v]:
                if self.index[v] < self.index[u]:
                    out.append((v, u))
        return out

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotation.values()) // 2

    def succ_cw(self, v: Vertex, u: Vertex) -> Vertex:
        rot = self.rotation[v]
        return rot[(self._pos[v][u] + 1) % len(rot)]

    def pred_cw(self, v: Vertex, u: Vertex) -> Vertex:
        rot = self.rotation[v]
        return rot[(self._pos[v][u] - 1) % len(rot)]

    def position(self, v: Vertex, u: Vertex) -> int:
        return self._pos[v][u]

    # faces

    def _trace_faces(self) -> None:
        self._dart_face: Dict[Dart, Tuple[int, int]] = {}
        faces: List[Face] = []
        for v in self.vertices:
            if not self.rotation[v]:
                faces.append(Face(len(faces), (), isolated=v))
                continue
            for u in self.rotation[v]:
                if (v, u) in self._dart_face:
                    continue
                fid = len(faces)
                walk = []
                d = (v, u)
                while d not in self._dart_face:
                    self._dart_face[d] = (fid, len(walk))
                    walk.append(d)
                    a, b = d
                    d = (b, self.succ_cw(b, a))
                faces.append(Face(fid, tuple(walk)))
        self.faces: Tuple[Face, ...] = tuple(faces)

    def left_face(self, u: Vertex, v: Vertex) -> int:
        """Id of the face to the left of dart ``u -> v``."""
        return self._dart_face[(u, v)][0]

    def dart_position(self, u: Vertex, v: Vertex) -> Tuple[int, int]:
        """(face id, index of the dart within that face's boundary walk)."""
        return self._dart_face[(u, v)]

    def components(self) -> List[List[Vertex]]:
        if getattr(self, "_comp", None) is None:
            seen: Dict[Vertex, int] = {}
            comps: List[List[Vertex]] = []
            for v in self.vertices:
                if v in seen:
                    continue
                cid = len(comps)
                comp = [v]
                seen[v] = cid
                queue = deque([v])
                while queue:
                    x = queue.popleft()
                    for y in self.rotation[x]:
                        if y not in seen:
                            seen[y] = cid
                            comp.append(y)
                            queue.append(y)
                comps.append(comp)
            self._comp = (comps, seen)
        return self._comp[0]

    def component_of(self, v: Vertex) -> int:
        self.components()
        return self._comp[1][v]

    def _check_euler(self) -> None:
        comps = self.components()
        nv = [0] * len(comps)
        ne = [0] * len(comps)
        nf = [0] * len(comps)
        for v in self.vertices:
            c = self.component_of(v)
            nv[c] += 1
            ne[c] += len(self.rotation[v])
        for f in self.faces:
            nf[self.component_of(f.vertices[0])] += 1
        for c in range(len(comps)):
            if nv[c] - ne[c] // 2 + nf[c] != 2:
                raise NotPlanarEmbedding(
                    f"component of {comps[c][0]!r}: V-E+F = {nv[c] - ne[c] // 2 + nf[c]}"
                )

    def faces_containing(self, vs: Iterable[Vertex]) -> List[int]:
        """Ids of faces whose boundary contains every vertex in ``vs``."""
        want = set(vs)
        return [f.id for f in self.faces if want <= set(f.vertices)]

    # derived graphs

    def subgraph(self, keep: Iterable[Vertex]) -> "PlaneGraph":
        """Induced subgraph with the inherited rotation system."""
        ks = set(keep)
        verts = [v for v in self.vertices if v in ks]
        rot = {v: [u for u in self.rotation[v] if u in ks] for v in verts}
        return PlaneGraph(verts, rot)

    def without_edges(self, edges: Iterable[Tuple[Vertex, Vertex]]) -> "PlaneGraph":
        drop = {frozenset(e) for e in edges}
        rot = {
            v: [u for u in self.rotation[v] if frozenset((u, v)) not in drop]
            for v in self.vertices
        }
        return PlaneGraph(self.vertices, rot)

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "PlaneGraph":
        return PlaneGraph(
            [mapping[v] for v in self.vertices],
            {mapping[v]: [mapping[u] for u in r] for v, r in self.rotation.items()},
        )

    def __repr__(self) -> str:
        return f"PlaneGraph(|V|={len(self.vertices)}, |E|={self.num_edges}, |F|={len(self.faces)})"


def build_plane_graph(
    vertices: Sequence[Vertex], rotation: Mapping[Vertex, Sequence[Vertex]]
) -> PlaneGraph:
    return PlaneGraph(vertices, rotation)


class AbstractGraph:
    """Undirected simple graph without an embedding (used for non-planar gadgets)."""

    def __init__(self, vertices: Sequence[Vertex], edges: Iterable[Tuple[Vertex, Vertex]]):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        adj: Dict[Vertex, List[Vertex]] = {v: [] for v in self.vertices}
        for u, v in edges:
            if u == v:
                raise MultiEdgeOrLoop(f"loop at {u!r}")
            if v in adj[u]:
                raise MultiEdgeOrLoop(f"parallel edges between {u!r} and {v!r}")
            adj[u].append(v)
            adj[v].append(u)
        self.rotation = {v: tuple(n) for v, n in adj.items()}

    def __contains__(self, v: Vertex) -> bool:
        return v in self.index

    def neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self.rotation[v]

    def degree(self, v: Vertex) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self.rotation.get(u, ())

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        return [(v, u) for v in self.vertices for u in self.rotation[v] if self.index[v] < self.index[u]]

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotation.values()) // 2


# instances


@dataclass(frozen=True)
class Instance:
    graph: Any
    pairs: Optional[Tuple[Tuple[Vertex, Vertex], ...]] = None
    st: Optional[Tuple[Vertex, Vertex]] = None
    k: int = 0
    kind: str = "general"
    S: Optional[int] = None
    T: Optional[int] = None
    F: Optional[int] = None
    meta: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def sources(self) -> Tuple[Vertex, ...]:
        return tuple(p[0] for p in self.pairs or ())

    @property
    def sinks(self) -> Tuple[Vertex, ...]:
        return tuple(p[1] for p in self.pairs or ())

    @property
    def is_st(self) -> bool:
        return self.st is not None


def _face_matching(g: PlaneGraph, cands: List[int], hint: Optional[Sequence[Vertex]]) -> Optional[int]:
    if not cands:
        return None
    if hint:
        hs = set(hint)
        for fid in cands:
            if set(g.faces[fid].vertices) == hs:
                return fid
        for fid in cands:
            if hs <= set(g.faces[fid].vertices):
                return fid
    return cands[0]


def classify_instance(
    graph: Any,
    terminals: Any,
    faces_hint: Optional[Mapping[str, Sequence[Vertex]]] = None,
    force: Optional[str] = None,
) -> Instance:
    """Classify terminal placement.

    ``terminals`` is either a sequence of ``(s, t)`` pairs or a mapping with
    keys ``s``, ``t`` and ``k``.  ``force="two_face"`` skips the one-face
    preference when the sources and sinks lie on distinct faces.
    """
    if isinstance(terminals, Mapping):
        s, t, k = terminals["s"], terminals["t"], int(terminals["k"])
        for v in (s, t):
            if v not in graph:
                raise TerminalNotInGraph(repr(v))
        if s == t:
            raise InvalidInput("s and t must differ")
        return Instance(graph, st=(s, t), k=k, kind="st")
    pairs = tuple((p[0], p[1]) for p in terminals)
    flat = [v for p in pairs for v in p]
    for v in flat:
        if v not in graph:
            raise TerminalNotInGraph(repr(v))
    if len(set(flat)) != len(flat):
        raise InvalidInput("terminals must be distinct")
    k = len(pairs)
    if not isinstance(graph, PlaneGraph) or k == 0:
        return Instance(graph, pairs=pairs, k=k, kind="general" if k else "one_face")
    hint = dict(faces_hint or {})
    if force != "two_face":
        if all_on_one_face(graph, flat):
            ff = graph.faces_containing(flat)
            return Instance(graph, pairs=pairs, k=k, kind="one_face", F=ff[0] if ff else None)
    srcs = [p[0] for p in pairs]
    snks = [p[1] for p in pairs]
    S = _face_matching(graph, graph.faces_containing(srcs), hint.get("S"))
    T_cands = [f for f in graph.faces_containing(snks) if f != S]
    T = _face_matching(graph, T_cands, hint.get("T"))
    if S is not None and T is not None:
        return Instance(graph, pairs=pairs, k=k, kind="two_face", S=S, T=T)
    if force == "two_face":
        raise InvalidInput("sources and sinks do not lie on two distinct faces")
    return Instance(graph, pairs=pairs, k=k, kind="general")


def all_on_one_face(g: PlaneGraph, vs: Sequence[Vertex]) -> bool:
    """True when, in every component, the given vertices share a face."""
    by_comp: Dict[int, List[Vertex]] = {}
    for v in vs:
        by_comp.setdefault(g.component_of(v), []).append(v)
    return all(g.faces_containing(group) for group in by_comp.values())


# serialization


def _decode_vertex(v: Any) -> Vertex:
    return tuple(_decode_vertex(x) for x in v) if isinstance(v, list) else v


def _lookup(table: Mapping[Any, Vertex], raw: Any) -> Vertex:
    v = _decode_vertex(raw)
    if v in table:
        return table[v]
    if str(v) in table:
        return table[str(v)]
    raise TerminalNotInGraph(repr(raw))


def graph_from_json(data: Mapping[str, Any]) -> Any:
    verts = [_decode_vertex(v) for v in data["vertices"]]
    table = {v: v for v in verts}
    table.update({str(v): v for v in verts})
    if "rotation" in data:
        rot = {
            _lookup(table, v): [_lookup(table, u) for u in nbrs]
            for v, nbrs in data["rotation"].items()
        }
        return PlaneGraph(verts, rot)
    edges = [(_lookup(table, a), _lookup(table, b)) for a, b in data["edges"]]
    return AbstractGraph(verts, edges)


def instance_from_json(data: Mapping[str, Any], force: Optional[str] = None) -> Instance:
    g = graph_from_json(data)
    table = {str(v): v for v in g.vertices}
    table.update({v: v for v in g.vertices})
    term = data["terminals"]
    hint = None
    if data.get("faces_hint"):
        hint = {
            key: [_lookup(table, v) for v in vals] for key, vals in data["faces_hint"].items()
        }
    if "pairs" in term:
        pairs = [(_lookup(table, a), _lookup(table, b)) for a, b in term["pairs"]]
        return classify_instance(g, pairs, hint, force=force)
    st = {"s": _lookup(table, term["s"]), "t": _lookup(table, term["t"]), "k": term.get("k", 0)}
    return classify_instance(g, st, hint)


def _encode_vertex(v: Vertex) -> Any:
    return [_encode_vertex(x) for x in v] if isinstance(v, tuple) else v


def instance_to_json(inst: Instance) -> Dict[str, Any]:
    g = inst.graph
    out: Dict[str, Any] = {"vertices": [_encode_vertex(v) for v in g.vertices]}
    if isinstance(g, PlaneGraph):
        out["rotation"] = {
            str(v): [
                _encode_vertex(u) for u in g.rotation[v]
            ]
            for v in g.vertices
        }
    else:
        out["edges"] = [[_encode_vertex(a), _encode_vertex(b)] for a, b in g.edges()]
    if inst.st is not None:
        out["terminals"] = {"s": _encode_vertex(inst.st[0]), "t": _encode_vertex(inst.st[1]), "k": inst.k}
    else:
        out["terminals"] = {"pairs": [[_encode_vertex(a), _encode_vertex(b)] for a, b in inst.pairs]}
    if inst.kind == "two_face" and isinstance(g, PlaneGraph):
        out["faces_hint"] = {
            "S": [_encode_vertex(v) for v in g.faces[inst.S].vertices],
            "T": [_encode_vertex(v) for v in g.faces[inst.T].vertices],
        }
    return out


def to_dot(g: Any, name: str = "G") -> str:
    """DOT export; the rotation system is kept as comment lines."""
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f"  // rotation {json.dumps(str(v))}: {json.dumps([str(u) for u in g.rotation[v]])}")
    for v in g.vertices:
        lines.append(f"  {json.dumps(str(v))};")
    for a, b in g.edges():
        lines.append(f"  {json.dumps(str(a))} -- {json.dumps(str(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
