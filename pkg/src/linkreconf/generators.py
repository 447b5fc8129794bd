"""Instance factories: cylinder grids, small counterexamples and constraint-logic gadgets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidInput, InvalidNcl, MalformedLinkage, NotPlanarH, ReconfError, TooFewColumns
from .linkage import Linkage, Path, st_linkage
from .plane_graph import AbstractGraph, Instance, PlaneGraph, Vertex, classify_instance

# cylinder grids


def cylinder_graph(rows: int, cols: int) -> PlaneGraph:
    """``rows`` concentric cycles of ``cols`` vertices joined by radial spokes.

    Vertex ``r * cols + c`` sits on ring ``r`` (0 innermost) in column ``c``;
    columns increase clockwise.
    """
    if cols < 3:
        raise TooFewColumns("a ring needs at least three columns")
    if rows < 1:
        raise InvalidInput("rows must be positive")

    def vid(r: int, c: int) -> int:
        return r * cols + c % cols

    rot: Dict[int, List[int]] = {}
    for r in range(rows):
        for c in range(cols):
            nb = []
            if r + 1 < rows:
                nb.append(vid(r + 1, c))
            nb.append(vid(r, c + 1))
            if r > 0:
                nb.append(vid(r - 1, c))
            nb.append(vid(r, c - 1))
            rot[vid(r, c)] = nb
    return PlaneGraph(list(range(rows * cols)), rot)


def cylinder_faces(g: PlaneGraph, rows: int, cols: int) -> Tuple[int, int]:
    """Ids of the face inside ring 0 and the face outside the last ring."""
    inner = g.left_face(1, 0)
    last = (rows - 1) * cols
    outer = g.left_face(last, last + 1)
    return inner, outer


def helix_path(rows: int, cols: int, start: int, shifts: Sequence[int]) -> Path:
    """Path from column ``start`` of ring 0 outward, moving ``shifts[r]`` steps along ring r."""
    path: List[int] = []
    c = start
    for r in range(rows):
        step = 1 if shifts[r] >= 0 else -1
        path.append(r * cols + c % cols)
        for _ in range(abs(shifts[r])):
            c += step
            path.append(r * cols + c % cols)
    return tuple(path)


def _winding_shifts(rows: int, cols: int, gap: int, winding: int) -> List[int]:
    need = abs(winding) * cols
    per = gap - 1
    if need > rows * per:
        raise InvalidInput(f"cannot wind {winding} times in {rows} rows with gap {gap}")
    shifts = []
    for _ in range(rows):
        d = min(per, need)
        shifts.append(d if winding >= 0 else -d)
        need -= d
    return shifts


def cylinder_linkage(rows: int, cols: int, k: int, winding: int) -> Linkage:
    cols_at = [i * cols // k for i in range(k)]
    gap = min((cols_at[(i + 1) % k] - cols_at[i]) % cols or cols for i in range(k))
    # positive winding runs counter-clockwise so that mu(P, Q) = winding_Q - winding_P
    shifts = _winding_shifts(rows, cols, gap, -winding)
    return tuple(helix_path(rows, cols, c, shifts) for c in cols_at)


def gen_cylinder(rows: int, cols: int, k: int, winding_P: int = 0, winding_Q: int = 0) -> Tuple[Instance, Linkage, Linkage]:
    if cols < 2 * k or cols < 3:
        raise TooFewColumns(f"need at least {max(2 * k, 3)} columns for k={k}")
    g = cylinder_graph(rows, cols)
    S, T = cylinder_faces(g, rows, cols)
    cols_at = [i * cols // k for i in range(k)]
    if rows == 1:
        # degenerate annulus: both faces are bounded by the single ring
        if winding_P or winding_Q:
            raise InvalidInput("a single ring admits no winding")
        pairs = tuple((c, c + 1) for c in cols_at)
        P = tuple((c, c + 1) for c in cols_at)
        inst = Instance(g, pairs=pairs, k=k, kind="two_face", S=S, T=T, meta={"rows": 1, "cols": cols})
        return inst, P, P
    pairs = tuple((c, (rows - 1) * cols + c) for c in cols_at)
    inst = Instance(g, pairs=pairs, k=k, kind="two_face", S=S, T=T, meta={"rows": rows, "cols": cols})
    return inst, cylinder_linkage(rows, cols, k, winding_P), cylinder_linkage(rows, cols, k, winding_Q)


# random plane graphs


def random_plane_graph(n: int, rng: random.Random, keep: float = 0.7, connected: bool = True) -> PlaneGraph:
    """Delaunay triangulation of random points, thinned edge by edge.

    Rotations come from the point coordinates, listed clockwise.
    """
    import numpy as np
    from scipy.spatial import Delaunay

    if n < 3:
        raise InvalidInput("need at least three points")
    pts = np.array([[rng.random(), rng.random()] for _ in range(n)])
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((min(int(u), int(v)), max(int(u), int(v))))
    order = sorted(edges)
    rng.shuffle(order)
    adj: Dict[int, set] = {v: set() for v in range(n)}
    for u, v in order:
        adj[u].add(v)
        adj[v].add(u)
    for u, v in order:
        if rng.random() < keep:
            continue
        adj[u].discard(v)
        adj[v].discard(u)
        if connected and not _connected(adj):
            adj[u].add(v)
            adj[v].add(u)
    rot = {}
    for v in range(n):
        x0, y0 = pts[v]
        rot[v] = sorted(adj[v], key=lambda u: -np.arctan2(pts[u][1] - y0, pts[u][0] - x0))
    return PlaneGraph(list(range(n)), rot)


def _connected(adj: Dict[int, set]) -> bool:
    start = next(iter(adj))
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == len(adj)


def st_cylinder_graph(rows: int, cols: int) -> Tuple[PlaneGraph, str, str]:
    """Cylinder grid with an apex ``"s"`` inside ring 0 and an apex ``"t"`` outside the last ring."""
    base = cylinder_graph(rows, cols)
    rot = {v: list(base.rotation[v]) for v in base.vertices}
    last = (rows - 1) * cols
    for c in range(cols):
        # ring 0 gains an inward spoke, the outer ring an outward one
        inner = rot[c]
        inner.insert(inner.index((c - 1) % cols) if rows > 1 else len(inner), "s")
        outer = rot[last + c]
        outer.insert(0, "t")
    if rows == 1:
        for c in range(cols):
            r = [("t"), (c + 1) % cols, "s", (c - 1) % cols]
            rot[c] = r
    rot["s"] = list(range(cols))
    rot["t"] = [last + (cols - c) % cols for c in range(cols)]
    return PlaneGraph(list(base.vertices) + ["s", "t"], rot), "s", "t"


def random_st_graph(rng: random.Random, max_vertices: int = 14) -> Tuple[PlaneGraph, Vertex, Vertex]:
    """Random plane graph with chosen s and t, mixing three shapes.

    Triangulation-based graphs, lightly damaged apex cylinders, cylinders
    whose first and last rings are cut down, and cylinders whose apexes keep
    only two or three spokes so that both neighborhoods are bottlenecks.
    """
    shape = rng.randrange(4)
    if shape == 0:
        n = rng.randint(6, max_vertices)
        g = random_plane_graph(n, rng, keep=rng.choice([0.5, 0.7, 0.9]))
        s, t = rng.sample(range(n), 2)
        return g, s, t
    dims = [(r, c) for r in (1, 2, 3) for c in range(3, 7) if r * c + 2 <= max_vertices]
    rows, cols = rng.choice([d for d in dims if shape != 2 or d[0] == 3] or dims)
    g, s, t = st_cylinder_graph(rows, cols)
    if shape == 3:
        width = rng.randint(2, min(3, cols))
        last = (rows - 1) * cols
        cut = [(s, c) for c in range(cols) if c not in rng.sample(range(cols), width)]
        cut += [(t, last + c) for c in range(cols) if c not in rng.sample(range(cols), width)]
        return g.without_edges(cut), s, t
    if shape == 1:
        inner = [v for v in g.vertices if v not in (s, t)]
        drop = set(rng.sample(inner, rng.randint(0, 2)))
        g = g.subgraph(v for v in g.vertices if v not in drop)
    else:
        # keep only two or three spokes between the first two and the last two rings
        cut = []
        for r in (0, rows - 2):
            cols_kept = set(rng.sample(range(cols), min(cols, rng.randint(2, 3))))
            cut += [(r * cols + c, (r + 1) * cols + c) for c in range(cols) if c not in cols_kept]
        g = g.without_edges(cut)
    edges = [e for e in g.edges() if s not in e and t not in e]
    g = g.without_edges(rng.sample(edges, min(len(edges), rng.randint(0, 2))))
    return g, s, t


def damaged_cylinder(rng: random.Random, max_vertices: int = 16, k_max: int = 3, pinch: bool = False) -> Instance:
    """Two-face cylinder with a few non-terminal vertices and edges removed.

    Removals often leave a small terminal separator.  With ``pinch`` a middle
    ring is cut down to exactly ``k`` vertices, which always leaves one.
    Returns a two-face instance whose S and T are the surviving inner and
    outer faces.
    """
    dims = [(r, c, k) for r in ((3, 4) if pinch else (1, 2, 3, 4)) for c in range(3, 9)
            for k in range(1, k_max + 1) if r * c <= max_vertices and c >= 2 * k]
    while True:
        rows, cols, k = rng.choice(dims)
        inst, _, _ = gen_cylinder(rows, cols, k)
        g = inst.graph
        terms = {v for p in inst.pairs for v in p}
        free = [v for v in g.vertices if v not in terms]
        if pinch:
            ring = rng.randrange(1, rows - 1) * cols
            drop = set(range(ring, ring + cols)) - set(rng.sample(range(ring, ring + cols), k))
        else:
            drop = set(rng.sample(free, min(len(free), rng.randint(0, 3))))
        g2 = g.subgraph(v for v in g.vertices if v not in drop)
        edges = [e for e in g2.edges() if not (e[0] in terms and e[1] in terms)]
        g2 = g2.without_edges(rng.sample(edges, min(len(edges), rng.randint(0, 2))))
        hint = {"S": list(range(cols)), "T": [(rows - 1) * cols + c for c in range(cols)]}
        hint = {key: [v for v in vs if v in g2] for key, vs in hint.items()}
        try:
            out = classify_instance(g2, inst.pairs, hint, force="two_face")
        except InvalidInput:
            continue
        return Instance(out.graph, pairs=out.pairs, k=out.k, kind=out.kind, S=out.S, T=out.T,
                        meta={"rows": rows, "cols": cols, "dropped": sorted(drop)})


# small counterexamples


def gen_figure1() -> Tuple[Instance, Linkage, Linkage]:
    """Two nested diamonds sharing their apexes ``x`` and ``y``.

    The outer pair routes through one apex and the inner pair through the
    other; neither path can move, and the two linkages do not cross.
    """
    rot = {
        "s1": ["y", "x"],
        "t1": ["x", "y"],
        "s2": ["x", "y"],
        "t2": ["y", "x"],
        "x": ["s1", "s2", "t2", "t1"][::-1],
        "y": ["s1", "t1", "t2", "s2"][::-1],
    }
    g = PlaneGraph(["s1", "t1", "s2", "t2", "x", "y"], rot)
    inst = classify_instance(g, (("s1", "t1"), ("s2", "t2")))
    P = (("s1", "x", "t1"), ("s2", "y", "t2"))
    Q = (("s1", "y", "t1"), ("s2", "x", "t2"))
    return inst, P, Q


# constraint logic


@dataclass(frozen=True)
class NclGraph:
    """Cubic AND/OR graph; ``edges[i] = (u, v, weight)``.

    ``rotation`` optionally lists, per vertex, its incident edge ids
    clockwise; the planar reduction checks it when present.
    """

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Tuple[Vertex, Vertex, int], ...]
    rotation: Optional[Dict[Vertex, Tuple[int, ...]]] = field(default=None, compare=False)

    def __post_init__(self):
        seen = set()
        for u, v, w in self.edges:
            if u == v or frozenset((u, v)) in seen:
                raise InvalidNcl(f"loop or parallel edge at {u!r}-{v!r}")
            if w not in (1, 2):
                raise InvalidNcl(f"edge {u!r}-{v!r} has weight {w}")
            seen.add(frozenset((u, v)))
        for v in self.vertices:
            ws = sorted(self.edges[e][2] for e in self.incident(v))
            if ws not in ([2, 2, 2], [1, 1, 2]):
                raise InvalidNcl(f"vertex {v!r} has incident weights {ws}")

    def incident(self, v: Vertex) -> Tuple[int, ...]:
        if self.rotation is not None:
            return tuple(self.rotation[v])
        return tuple(i for i, (a, b, _) in enumerate(self.edges) if v in (a, b))

    def kind(self, v: Vertex) -> str:
        return "OR" if all(self.edges[e][2] == 2 for e in self.incident(v)) else "AND"

    def other(self, e: int, v: Vertex) -> Vertex:
        a, b, _ = self.edges[e]
        return b if v == a else a

    def roles(self, v: Vertex) -> Tuple[int, int, int]:
        """Incident edges as ``(e, f, g)``; at an AND vertex ``e`` is the weight-2 edge."""
        inc = self.incident(v)
        if self.kind(v) == "AND":
            heavy = [x for x in inc if self.edges[x][2] == 2]
            light = [x for x in inc if self.edges[x][2] == 1]
            return heavy[0], light[0], light[1]
        return inc[0], inc[1], inc[2]

    @property
    def and_vertices(self) -> List[Vertex]:
        return [v for v in self.vertices if self.kind(v) == "AND"]

    @property
    def or_vertices(self) -> List[Vertex]:
        return [v for v in self.vertices if self.kind(v) == "OR"]

    def weight_edges(self, w: int) -> List[int]:
        return [i for i, e in enumerate(self.edges) if e[2] == w]

    def to_json(self) -> Dict[str, object]:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class NclConfig:
    """Orientation: ``heads[i]`` is the vertex edge ``i`` points to."""

    heads: Tuple[Vertex, ...]

    def flip(self, h: NclGraph, e: int) -> "NclConfig":
        heads = list(self.heads)
        heads[e] = h.other(e, heads[e])
        return NclConfig(tuple(heads))

    def tail(self, h: NclGraph, e: int) -> Vertex:
        return h.other(e, self.heads[e])

    def into(self, e: int, v: Vertex) -> bool:
        return self.heads[e] == v

    def incoming_weight(self, h: NclGraph, v: Vertex) -> int:
        return sum(h.edges[e][2] for e in h.incident(v) if self.heads[e] == v)


def ncl_validate(h: NclGraph, c: NclConfig) -> Optional[Vertex]:
    """First vertex with incoming weight below two, or None when ``c`` is valid."""
    if len(c.heads) != len(h.edges):
        raise InvalidNcl("configuration size does not match the edge count")
    for i, (u, v, _) in enumerate(h.edges):
        if c.heads[i] not in (u, v):
            raise InvalidNcl(f"edge {i} points to {c.heads[i]!r}, not an endpoint")
    for v in h.vertices:
        if c.incoming_weight(h, v) < 2:
            return v
    return None


def legal_flips(h: NclGraph, c: NclConfig) -> List[int]:
    return [e for e in range(len(h.edges)) if ncl_validate(h, c.flip(h, e)) is None]


def _require_valid(h: NclGraph, c: NclConfig) -> None:
    bad = ncl_validate(h, c)
    if bad is not None:
        raise InvalidNcl(f"incoming weight below two at {bad!r}")


def random_ncl_graph(rng: random.Random, n: int, planar: bool = False, tries: int = 500) -> NclGraph:
    """Random cubic AND/OR graph on ``n`` vertices that admits a valid configuration.

    AND vertices are the vertices of randomly chosen disjoint cycles, whose
    edges get weight 1. With ``planar`` the graph is resampled until planar
    and carries the rotation of a plane embedding.
    """
    import networkx as nx

    if n < 4 or n % 2:
        raise InvalidInput("a cubic graph needs an even number of at least four vertices")
    for _ in range(tries):
        nxg = nx.random_regular_graph(3, n, seed=rng.randrange(2**32))
        if planar:
            ok, emb = nx.check_planarity(nxg)
            if not ok:
                continue
        cycles = sorted(nx.simple_cycles(nxg, length_bound=min(n, 8)), key=lambda c: (len(c), sorted(c)))
        rng.shuffle(cycles)
        used: set = set()
        light = set()
        for cyc in cycles[: rng.randint(0, 3)]:
            if used.intersection(cyc):
                continue
            used.update(cyc)
            light.update(frozenset(p) for p in zip(cyc, cyc[1:] + cyc[:1]))
        pairs = sorted(tuple(sorted(e)) for e in nxg.edges())
        edges = tuple((u, v, 1 if frozenset((u, v)) in light else 2) for u, v in pairs)
        rotation = None
        if planar:
            index = {frozenset((u, v)): i for i, (u, v, _) in enumerate(edges)}
            rotation = {v: tuple(index[frozenset((v, u))] for u in emb.neighbors_cw_order(v)) for v in range(n)}
        h = NclGraph(tuple(range(n)), edges, rotation)
        if random_ncl_config(h, rng) is not None:
            return h
    raise InvalidInput(f"no valid AND/OR graph found in {tries} tries")


def random_ncl_config(h: NclGraph, rng: random.Random) -> Optional[NclConfig]:
    """Backtracking search for a valid orientation in shuffled order."""
    order = list(range(len(h.edges)))
    rng.shuffle(order)
    heads: List[Vertex] = [None] * len(h.edges)
    pending = {v: 3 for v in h.vertices}
    got = {v: 0 for v in h.vertices}

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        u, v, w = h.edges[e]
        ends = [u, v]
        rng.shuffle(ends)
        pending[u] -= 1
        pending[v] -= 1
        for head in ends:
            heads[e] = head
            got[head] += w
            if all(got[x] >= 2 or pending[x] > 0 for x in (u, v)) and rec(i + 1):
                return True
            got[head] -= w
        pending[u] += 1
        pending[v] += 1
        return False

    return NclConfig(tuple(heads)) if rec(0) else None


# Both reductions are driven by a map of routing choices, one entry per
# gadget (and per path inside an AND gadget of the two-path reduction);
# a linkage is rendered from the complete map.


def _w(e: int, v: Vertex) -> str:
    return f"w:{e}:{v}"


def _first_incoming(h: NclGraph, c: NclConfig, v: Vertex, skip: Optional[int] = None) -> str:
    roles = h.roles(v)
    return next("efg"[j] for j, x in enumerate(roles) if x != skip and c.into(x, v))


def created_choices(h: NclGraph, c: NclConfig, planar: bool) -> Dict[tuple, object]:
    ch: Dict[tuple, object] = {("edge", i): c.tail(h, i) for i in range(len(h.edges))}
    for v in h.vertices:
        e = h.roles(v)[0]
        if h.kind(v) == "AND":
            if planar:
                ch[("and", v)] = "e" if c.into(e, v) else "fg"
            else:
                ch[("and_r", v)] = "k" if c.into(e, v) else "fg"
                ch[("and_b", v)] = "e" if c.into(e, v) else "k"
        else:
            ch[("or", v)] = _first_incoming(h, c, v)
            if planar:
                ch[("blue", v)] = "d" if ch[("or", v)] == "e" else "c"
    return ch


def is_created(h: NclGraph, c: NclConfig, ch: Dict[tuple, object], planar: bool) -> bool:
    """Whether the routing choices are among those created from ``c``."""
    if any(ch[("edge", i)] != c.tail(h, i) for i in range(len(h.edges))):
        return False
    for v in h.vertices:
        roles = h.roles(v)
        if h.kind(v) == "AND":
            into = c.into(roles[0], v)
            if planar and ch[("and", v)] != ("e" if into else "fg"):
                return False
            if not planar and (ch[("and_r", v)], ch[("and_b", v)]) != (("k", "e") if into else ("fg", "k")):
                return False
        else:
            route = ch[("or", v)]
            if route not in ("e", "f", "g") or not c.into(roles["efg".index(route)], v):
                return False
            if planar and ch[("blue", v)] != ("d" if route == "e" else "c"):
                return False
    return True


class NclStReduction:
    """Two s-t paths reduction to a graph of maximum degree four.

    Red vertices are chained through the AND gadgets and weight-2 edge
    gadgets, blue ones through the vertex gadgets and weight-1 edge gadgets.
    With ``layout`` every gadget gets both colors (isolated padding vertices
    where needed) and both chains follow the layout.
    """

    def __init__(self, h: NclGraph, layout: Optional[Dict[Vertex, int]] = None):
        self.h = h
        self.padded = layout is not None
        own = self._gadget_vertices()
        if self.padded:
            pos = _subdivided_layout(h, layout)
            order = sorted(own, key=lambda x: pos[x])
            self.reds = self.blues = order
        else:
            self.reds = [("v", v) for v in h.and_vertices] + [("e", i) for i in h.weight_edges(2)]
            self.blues = [("v", v) for v in h.vertices] + [("e", i) for i in h.weight_edges(1)]
        vertices = ["s", "t"] + [v for x in own for v in own[x]]
        edges = self._gadget_edges()
        for col, chain in (("r", self.reds), ("b", self.blues)):
            prev = "s"
            for x in chain:
                a, b = self.ends(x, col)
                edges.append((prev, a))
                prev = b
            edges.append((prev, "t"))
        self.graph = AbstractGraph(vertices, edges)
        self.layout: Optional[Dict[str, int]] = None
        if self.padded:
            self.layout = {v: 8 * pos[x] + j for x in order for j, v in enumerate(own[x])}
            self.layout["s"] = min(self.layout.values()) - 1
            self.layout["t"] = max(self.layout.values()) + 1

    def ends(self, x: tuple, col: str) -> Tuple[str, str]:
        kind, key = x
        name = f"{col}:{kind}{key}"
        if self._is_pad(x, col):
            return name, name
        return name + ":1", name + ":2"

    def _is_pad(self, x: tuple, col: str) -> bool:
        kind, key = x
        if kind == "e":
            return (self.h.edges[key][2] == 2) != (col == "r")
        return col == "r" and self.h.kind(key) == "OR"

    def _gadget_vertices(self) -> Dict[tuple, List[str]]:
        h = self.h
        own: Dict[tuple, List[str]] = {}
        for v in h.vertices:
            ws = [_w(e, v) for e in h.roles(v)]
            cols = "rb" if h.kind(v) == "AND" else "b"
            own[("v", v)] = ws + [f"{c}:v{v}:{j}" for c in cols for j in (1, 2)]
            if h.kind(v) == "AND":
                own[("v", v)].append(f"k:{v}")
            elif self.padded:
                own[("v", v)].append(f"r:v{v}")
        for i, (_, _, w) in enumerate(h.edges):
            col = "r" if w == 2 else "b"
            own[("e", i)] = [f"{col}:e{i}:1", f"{col}:e{i}:2"]
            if self.padded:
                own[("e", i)].append(f"{'b' if w == 2 else 'r'}:e{i}")
        return own

    def _gadget_edges(self) -> List[Tuple[str, str]]:
        h = self.h
        edges: List[Tuple[str, str]] = []
        for i, (u, v, w) in enumerate(h.edges):
            col = "r" if w == 2 else "b"
            edges += [(_w(i, x), f"{col}:e{i}:{j}") for x in (u, v) for j in (1, 2)]
        for v in h.vertices:
            e, f, g = h.roles(v)
            if h.kind(v) == "OR":
                edges += [(_w(x, v), f"b:v{v}:{j}") for x in (e, f, g) for j in (1, 2)]
                continue
            r1, r2, b1, b2, k = f"r:v{v}:1", f"r:v{v}:2", f"b:v{v}:1", f"b:v{v}:2", f"k:{v}"
            edges += [
                (_w(e, v), b1), (_w(e, v), b2), (_w(f, v), r1), (_w(g, v), r2),
                (r1, k), (r2, k), (b1, k), (b2, k), (_w(f, v), _w(g, v)),
            ]
        return edges

    def segment(self, x: tuple, col: str, ch: Dict[tuple, object]) -> List[str]:
        h = self.h
        a, b = self.ends(x, col)
        kind, key = x
        if a == b:
            return [a]
        if kind == "e":
            return [a, _w(key, ch[("edge", key)]), b]
        e, f, g = h.roles(key)
        if h.kind(key) == "OR":
            return [a, _w((e, f, g)["efg".index(ch[("or", key)])], key), b]
        if col == "r":
            return [a, f"k:{key}", b] if ch[("and_r", key)] == "k" else [a, _w(f, key), _w(g, key), b]
        return [a, _w(e, key), b] if ch[("and_b", key)] == "e" else [a, f"k:{key}", b]

    def render(self, ch: Dict[tuple, object]) -> Linkage:
        paths = []
        for col, chain in (("r", self.reds), ("b", self.blues)):
            p = ["s"]
            for x in chain:
                p += self.segment(x, col, ch)
            paths.append(tuple(p + ["t"]))
        return st_linkage(paths)

    def instance(self) -> Instance:
        meta = {"ncl": self.h, "reduction": self}
        if self.layout is not None:
            meta["layout"] = self.layout
        return Instance(self.graph, st=("s", "t"), k=2, kind="st", meta=meta)


def _subdivided_layout(h: NclGraph, layout: Dict[Vertex, int]) -> Dict[tuple, int]:
    """Gadget positions: vertex ``v`` at four times its rank, each edge just after its lower endpoint."""
    if set(layout) != set(h.vertices) or len(set(layout.values())) != len(layout):
        raise InvalidInput("layout must be injective on the vertices")
    rank = {v: i for i, v in enumerate(sorted(h.vertices, key=lambda v: layout[v]))}
    pos: Dict[tuple, int] = {("v", v): 4 * rank[v] for v in h.vertices}
    used = {v: 0 for v in h.vertices}
    for i, (u, v, _) in enumerate(h.edges):
        low = u if rank[u] < rank[v] else v
        used[low] += 1
        pos[("e", i)] = 4 * rank[low] + used[low]
    return pos


def bandwidth(graph, layout: Dict[Vertex, int]) -> int:
    return max((abs(layout[a] - layout[b]) for a, b in graph.edges()), default=0)


def gen_ncl_stpaths(
    h: NclGraph, sigma: NclConfig, tau: NclConfig, layout: Optional[Dict[Vertex, int]] = None
) -> Tuple[Instance, Linkage, Linkage]:
    """Two s-t paths instance with linkages created from ``sigma`` and ``tau``.

    With ``layout`` (injective on the vertices of ``h``) the output carries
    ``meta["layout"]``, a vertex layout of the gadget graph.
    """
    _require_valid(h, sigma)
    _require_valid(h, tau)
    red = NclStReduction(h, layout)
    return (
        red.instance(),
        red.render(created_choices(h, sigma, planar=False)),
        red.render(created_choices(h, tau, planar=False)),
    )


# purple routes inside an OR gadget; the two-letter ones are transitional
_PURPLE = {
    "e": ("s", "c", "a", "we", "t"),
    "f": ("s", "wf", "a", "d", "t"),
    "g": ("s", "wg", "b", "d", "t"),
    "fe": ("s", "wf", "a", "we", "t"),
    "ge": ("s", "wg", "b", "we", "t"),
}


class NclPlanarReduction:
    """Planar reduction with one pair per edge, per vertex and per OR vertex."""

    def __init__(self, h: NclGraph):
        import networkx as nx

        if h.rotation is not None:
            rot = {v: [h.other(e, v) for e in h.rotation[v]] for v in h.vertices}
            try:
                PlaneGraph(list(h.vertices), rot)
            except ReconfError as exc:
                raise NotPlanarH(f"the rotation is not a plane embedding: {exc}") from exc
        elif not nx.check_planarity(nx.Graph([(u, v) for u, v, _ in h.edges]))[0]:
            raise NotPlanarH("the AND/OR graph is not planar")
        self.h = h
        vertices, edges = self._gadgets()
        ok, emb = nx.check_planarity(nx.Graph(edges))
        if not ok:
            raise NotPlanarH("gadget graph is not planar")
        self.graph = PlaneGraph(vertices, {v: list(emb.neighbors_cw_order(v)) for v in vertices})
        self.pairs = [(f"s:e{i}", f"t:e{i}") for i in range(len(h.edges))]
        self.pairs += [(f"s:v{v}", f"t:v{v}") for v in h.vertices]
        self.pairs += [(f"so:v{v}", f"to:v{v}") for v in h.or_vertices]

    def _gadgets(self) -> Tuple[List[str], List[Tuple[str, str]]]:
        h = self.h
        vertices: List[str] = []
        edges: List[Tuple[str, str]] = []
        for i, (u, v, _) in enumerate(h.edges):
            vertices += [_w(i, u), _w(i, v), f"s:e{i}", f"t:e{i}"]
            edges += [(_w(i, x), f"{y}:e{i}") for x in (u, v) for y in "st"]
        for v in h.vertices:
            e, f, g = h.roles(v)
            we, wf, wg = _w(e, v), _w(f, v), _w(g, v)
            sv, tv = f"s:v{v}", f"t:v{v}"
            if h.kind(v) == "AND":
                vertices += [sv, tv]
                edges += [(we, sv), (we, tv), (wf, sv), (wg, tv), (wf, wg)]
                continue
            a, b, c, d, so, to = (f"{x}:v{v}" for x in ("a", "b", "c", "d", "so", "to"))
            vertices += [a, b, c, d, sv, tv, so, to]
            edges += [
                (we, a), (we, b), (we, tv), (wf, a), (wf, sv), (wg, b), (wg, sv),
                (a, c), (a, d), (b, c), (b, d), (c, sv), (c, so), (c, to), (d, tv), (d, so), (d, to),
            ]
        return vertices, edges

    def render(self, ch: Dict[tuple, object]) -> Linkage:
        h = self.h
        out: List[Path] = [(f"s:e{i}", _w(i, ch[("edge", i)]), f"t:e{i}") for i in range(len(h.edges))]
        for v in h.vertices:
            e, f, g = h.roles(v)
            names = {"we": _w(e, v), "wf": _w(f, v), "wg": _w(g, v)}
            if h.kind(v) == "AND":
                mid = [names["we"]] if ch[("and", v)] == "e" else [names["wf"], names["wg"]]
                out.append((f"s:v{v}", *mid, f"t:v{v}"))
            else:
                out.append(tuple(names.get(x) or f"{x}:v{v}" for x in _PURPLE[ch[("or", v)]]))
        out += [(f"so:v{v}", f"{ch[('blue', v)]}:v{v}", f"to:v{v}") for v in h.or_vertices]
        return tuple(out)

    def instance(self) -> Instance:
        inst = classify_instance(self.graph, self.pairs)
        inst.meta.update({"ncl": self.h, "reduction": self})
        return inst


def gen_ncl_planar(h: NclGraph, sigma: NclConfig, tau: NclConfig) -> Tuple[Instance, Linkage, Linkage]:
    _require_valid(h, sigma)
    _require_valid(h, tau)
    red = NclPlanarReduction(h)
    return (
        red.instance(),
        red.render(created_choices(h, sigma, planar=True)),
        red.render(created_choices(h, tau, planar=True)),
    )


def _reduction(inst: Instance):
    red = inst.meta.get("reduction")
    if not isinstance(red, (NclStReduction, NclPlanarReduction)):
        raise InvalidInput("instance was not produced by an NCL reduction")
    return red


def canonical_config(inst: Instance, linkage: Sequence[Path]) -> NclConfig:
    """Orientation read off the edge gadgets: the occupied white vertex marks the tail."""
    red = _reduction(inst)
    h = red.h
    heads: List[Vertex] = []
    if isinstance(red, NclPlanarReduction):
        for i, (u, v, _) in enumerate(h.edges):
            p = tuple(linkage[i])
            if len(p) != 3 or p[1] not in (_w(i, u), _w(i, v)):
                raise MalformedLinkage(f"edge path {i} does not pass exactly one white vertex")
            heads.append(v if p[1] == _w(i, u) else u)
    else:
        by_col = {}
        for col in "rb":
            owners = [p for p in linkage if any(x.startswith(col + ":") for x in p)]
            if len(owners) != 1:
                raise MalformedLinkage(f"the {col} vertices are not on a single path")
            missing = [x for x in inst.graph.vertices if x.startswith(col + ":") and x not in owners[0]]
            if missing:
                raise MalformedLinkage(f"path skips {missing[0]}")
            by_col[col] = set(owners[0])
        for i, (u, v, w) in enumerate(h.edges):
            hit = [x for x in (u, v) if _w(i, x) in by_col["r" if w == 2 else "b"]]
            if len(hit) != 1:
                raise MalformedLinkage(f"edge gadget {i} is not crossed exactly once")
            heads.append(h.other(i, hit[0]))
    c = NclConfig(tuple(heads))
    _require_valid(h, c)
    return c


def flip_sequence(
    inst: Instance, sigma: NclConfig, e: int, choices: Optional[Dict[tuple, object]] = None
) -> Tuple[List[Linkage], NclConfig, Dict[tuple, object]]:
    """Reconfiguration sequence simulating the flip of edge ``e``.

    Starts from the linkage created from ``sigma`` (or rendered from
    ``choices``) and ends at one created from the flipped configuration.
    The head's gadget is vacated first, then the edge path moves, then an
    AND tail takes over the freed white vertex. Returns the sequence, the
    new configuration and the final choices.
    """
    red = _reduction(inst)
    h = red.h
    planar = isinstance(red, NclPlanarReduction)
    _require_valid(h, sigma)
    after = sigma.flip(h, e)
    _require_valid(h, after)
    ch = dict(choices) if choices is not None else created_choices(h, sigma, planar)
    seq = [red.render(ch)]

    def move(key: tuple, value: object) -> None:
        ch[key] = value
        seq.append(red.render(ch))

    u, v = sigma.tail(h, e), sigma.heads[e]
    heavy = h.edges[e][2] == 2
    if heavy and h.kind(v) == "AND":
        if planar:
            move(("and", v), "fg")
        else:
            move(("and_r", v), "fg")
            move(("and_b", v), "k")
    elif heavy:
        route = ch[("or", v)]
        here = "efg"[h.roles(v).index(e)]
        if route == here:
            nxt = _first_incoming(h, after, v)
            if not planar:
                move(("or", v), nxt)
            elif "e" not in (route, nxt):
                move(("or", v), nxt)
            else:
                # swapping between the route through c and one through d
                light = route if route != "e" else nxt
                move(("or", v), light + "e")
                move(("blue", v), "d" if nxt == "e" else "c")
                move(("or", v), nxt)
    move(("edge", e), v)
    if heavy and h.kind(u) == "AND":
        if planar:
            move(("and", u), "e")
        else:
            move(("and_b", u), "e")
            move(("and_r", u), "k")
    return seq, after, ch


def random_one_face(rng: random.Random, max_vertices: int = 12, k_max: int = 3) -> Instance:
    """Random plane graph with ``k`` terminal pairs drawn from one face boundary."""
    while True:
        g = random_plane_graph(rng.randint(4, max_vertices), rng, keep=rng.choice([0.5, 0.7, 0.9]))
        face = rng.choice(g.faces)
        verts = sorted(set(face.vertices))
        k = rng.randint(1, min(k_max, len(verts) // 2))
        if k == 0:
            continue
        terms = rng.sample(verts, 2 * k)
        pairs = tuple((terms[2 * i], terms[2 * i + 1]) for i in range(k))
        inst = classify_instance(g, pairs)
        if inst.kind == "one_face":
            return inst
