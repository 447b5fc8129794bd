"""Reconfiguration of internally disjoint s-t paths in plane graphs.

The decision reduces to the two-face case across the closest size-k s-t cuts.
Sequences are built by replacing s (and t) with concentric grids, which turns
an s-t linkage into an ordinary linkage between two faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .crossings import mu_two_face
from .errors import AdjacentST, DegreeTooSmall, InvalidInput
from .linkage import Linkage, Path, elide_repeats, st_linkage, validate_linkage
from .plane_graph import Instance, PlaneGraph, Vertex
from .separators import min_st_separator
from .two_face import pairs_decide, pairs_moves, sequence_two_face

SUBDIVIDE = "~mid"


def grid_vertex(tag: str, spoke: int, level: int) -> Tuple[str, int, int]:
    return ("~" + tag, spoke, level)


def _is_grid(v: Vertex, tag: str) -> bool:
    return isinstance(v, tuple) and len(v) == 3 and v[0] == "~" + tag


def _st_instance(g: PlaneGraph, s: Vertex, t: Vertex, k: int) -> Instance:
    return Instance(g, st=(s, t), k=k, kind="st")


def _subdivide(g: PlaneGraph, s: Vertex, t: Vertex) -> PlaneGraph:
    rot = {v: list(g.rotation[v]) for v in g.vertices}
    rot[s][rot[s].index(t)] = SUBDIVIDE
    rot[t][rot[t].index(s)] = SUBDIVIDE
    rot[SUBDIVIDE] = [s, t]
    return PlaneGraph(list(g.vertices) + [SUBDIVIDE], rot)


def _to_subdivided(lk: Sequence[Path], s: Vertex, t: Vertex) -> Linkage:
    return st_linkage((s, SUBDIVIDE, t) if tuple(p) == (s, t) else tuple(p) for p in lk)


def _from_subdivided(lk: Sequence[Path]) -> Linkage:
    return st_linkage(tuple(v for v in p if v != SUBDIVIDE) for p in lk)


# decision


@dataclass
class StReport:
    answer: bool
    reason: str
    U: Optional[Tuple[Vertex, ...]] = None
    W: Optional[Tuple[Vertex, ...]] = None


def _through(path: Path, cut: frozenset) -> Vertex:
    hit = [v for v in path[1:-1] if v in cut]
    if len(hit) != 1:
        raise InvalidInput("path meets a minimum cut more than once")
    return hit[0]


def _segment(path: Path, a: Vertex, b: Vertex) -> Path:
    return path[path.index(a): path.index(b) + 1]


def _prepare(g: PlaneGraph, s: Vertex, t: Vertex, P: Sequence[Path], Q: Sequence[Path]):
    k = len(P)
    if len(Q) != k:
        raise InvalidInput("linkages differ in size")
    inst = _st_instance(g, s, t, k)
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    P, Q = st_linkage(P), st_linkage(Q)
    if g.has_edge(s, t):
        g = _subdivide(g, s, t)
        P, Q = _to_subdivided(P, s, t), _to_subdivided(Q, s, t)
    return g, P, Q


def st_report(g: PlaneGraph, s: Vertex, t: Vertex, P: Sequence[Path], Q: Sequence[Path]) -> StReport:
    g, P, Q = _prepare(g, s, t, P, Q)
    k = len(P)
    if P == Q:
        return StReport(True, "identical")
    if k == 1:
        return StReport(True, "single path")
    cut_s = min_st_separator(g, s, t, k)
    if cut_s is None:
        return StReport(True, "no s-t cut of size k")
    cut_t = min_st_separator(g, t, s, k)
    U, W = cut_s.cut, cut_t.cut
    Ut, Wt = tuple(sorted(U, key=repr)), tuple(sorted(W, key=repr))
    if U & W:
        return StReport(True, "closest cuts overlap", Ut, Wt)
    pw = {_through(p, U): _through(p, W) for p in P}
    qw = {_through(q, U): _through(q, W) for q in Q}
    if pw != qw:
        return StReport(False, "paths are matched differently between the two closest cuts", Ut, Wt)
    mid, pairs, Pm, Qm = _middle(g, cut_s.side, cut_t.side, P, Q, U, W)
    ok = pairs_decide(mid, pairs, Pm, Qm)
    return StReport(ok, "middle instance " + ("reconfigurable" if ok else "not reconfigurable"), Ut, Wt)


def _middle(g, X, Y, P, Q, U, W):
    mid = g.subgraph(v for v in g.vertices if v not in X and v not in Y)
    order = sorted(U, key=repr)
    key = {u: i for i, u in enumerate(order)}
    pairs, Pm, Qm = {}, {}, {}
    for p in P:
        u, w = _through(p, U), _through(p, W)
        pairs[key[u]] = (u, w)
        Pm[key[u]] = _segment(p, u, w)
    for q in Q:
        u, w = _through(q, U), _through(q, W)
        Qm[key[u]] = _segment(q, u, w)
    return mid, pairs, Pm, Qm


def decide_st(g: PlaneGraph, s: Vertex, t: Vertex, P: Sequence[Path], Q: Sequence[Path]) -> bool:
    return st_report(g, s, t, P, Q).answer


# grid expansion


@dataclass
class _Grid:
    apex: Vertex
    tag: str
    spokes: Tuple[Vertex, ...]
    orient: int

    @property
    def ell(self) -> int:
        return len(self.spokes)

    def actual(self, z: int) -> int:
        return (self.orient * z) % self.ell

    def virtual(self, spoke: int) -> int:
        return (self.orient * spoke) % self.ell

    def terminal(self, m: int) -> Tuple[str, int, int]:
        return grid_vertex(self.tag, self.actual(m), 1)


def _expand(g: PlaneGraph, apexes: Sequence[Tuple[Vertex, str]], p: int) -> Tuple[PlaneGraph, Dict[str, Tuple[Vertex, ...]]]:
    """Replace each apex by ``p`` concentric rings threaded by its spokes."""
    rot = {v: list(g.rotation[v]) for v in g.vertices}
    verts = list(g.vertices)
    spokes: Dict[str, Tuple[Vertex, ...]] = {}
    for apex, tag in apexes:
        nbrs = list(g.rotation[apex])
        ell = len(nbrs)
        spokes[tag] = tuple(nbrs)
        verts.remove(apex)
        del rot[apex]
        for i, a in enumerate(nbrs):
            rot[a][rot[a].index(apex)] = grid_vertex(tag, i, p)
            for j in range(1, p + 1):
                v = grid_vertex(tag, i, j)
                verts.append(v)
                out = a if j == p else grid_vertex(tag, i, j + 1)
                nxt = grid_vertex(tag, (i + 1) % ell, j)
                prv = grid_vertex(tag, (i - 1) % ell, j)
                rot[v] = [out, nxt, prv] if j == 1 else [out, nxt, grid_vertex(tag, i, j - 1), prv]
    return PlaneGraph(verts, rot), spokes


def _ring_face(g: PlaneGraph, tag: str, ell: int) -> int:
    ring = {grid_vertex(tag, i, 1) for i in range(ell)}
    for fid in g.faces_containing(ring):
        if set(g.faces[fid].vertices) == ring:
            return fid
    raise InvalidInput("ring face not found")


def _targets(residues: Sequence[int], ell: int, winding: int) -> List[int]:
    """Unwrapped positions congruent to ``residues``, increasing within one turn."""
    ys = [residues[0] + winding * ell]
    for c in residues[1:]:
        y = ys[-1] + (c - ys[-1]) % ell
        if y == ys[-1]:
            raise InvalidInput("two paths share a spoke")
        ys.append(y)
    if ys[-1] >= ys[0] + ell:
        raise InvalidInput("paths do not respect the cyclic order of the spokes")
    return ys


def _slide(ell: int, targets: Sequence[int]) -> List[Tuple[int, int]]:
    """Unit moves ``(token, +-1)`` taking tokens at 0..k-1 to ``targets`` without collisions."""
    k = len(targets)
    xs = list(range(k))
    moves = []
    while xs != list(targets):
        for m in range(k):
            d = (targets[m] > xs[m]) - (targets[m] < xs[m])
            if not d:
                continue
            nxt = xs[m] + d
            if d > 0:
                blocker = xs[m + 1] if m + 1 < k else xs[0] + ell
                free = nxt < blocker
            else:
                blocker = xs[m - 1] if m > 0 else xs[k - 1] - ell
                free = nxt > blocker
            if free:
                xs[m] = nxt
                moves.append((m, d))
                break
        else:
            raise InvalidInput("sliding routes are stuck")
    return moves


def _grid_routes(grid: _Grid, targets: Sequence[int], p: int) -> List[List[Vertex]]:
    """Per token, grid vertices from its terminal on ring 1 to its exit on ring p."""
    moves = _slide(grid.ell, targets)
    if len(moves) > p - 1:
        raise InvalidInput(f"{len(moves)} ring moves need more than {p} rings")
    k = len(targets)
    xs = list(range(k))
    routes: List[List[Vertex]] = [[grid_vertex(grid.tag, grid.actual(x), 1)] for x in xs]
    for j in range(1, p):
        if j - 1 < len(moves):
            m, d = moves[j - 1]
            xs[m] += d
            routes[m].append(grid_vertex(grid.tag, grid.actual(xs[m]), j))
        for m in range(k):
            routes[m].append(grid_vertex(grid.tag, grid.actual(xs[m]), j + 1))
    return routes


def _order_by_spoke(paths: Sequence[Path], spokes: Sequence[Vertex], second: bool = False) -> List[Path]:
    idx = {v: i for i, v in enumerate(spokes)}
    return sorted(paths, key=lambda q: idx[q[1] if not second else q[-2]])


def _cyclic_increasing(vals: Sequence[int], ell: int) -> bool:
    return sum((b - a) % ell for a, b in zip(vals, list(vals[1:]) + [vals[0]])) == ell


@dataclass
class GridExpansion:
    """Two-face instance obtained by replacing s and t with grids, plus the linkage mappers."""

    original: PlaneGraph
    s: Vertex
    t: Vertex
    k: int
    p: int
    graph: PlaneGraph
    instance: Instance
    s_grid: _Grid
    t_grid: _Grid

    def route(self, lk: Sequence[Path], shift: int = 0, winding: int = 0) -> Linkage:
        """Lift an s-t linkage: the path in cyclic position m takes terminal pair m + shift."""
        k = self.k
        ordered = _order_by_spoke(lk, self.s_grid.spokes)
        assigned = [ordered[(m - shift) % k] for m in range(k)]
        sidx = {v: i for i, v in enumerate(self.s_grid.spokes)}
        tidx = {v: i for i, v in enumerate(self.t_grid.spokes)}
        ys = _targets([self.s_grid.virtual(sidx[q[1]]) for q in assigned], self.s_grid.ell, winding)
        yt = _targets([self.t_grid.virtual(tidx[q[-2]]) for q in assigned], self.t_grid.ell, 0)
        rs = _grid_routes(self.s_grid, ys, self.p)
        rt = _grid_routes(self.t_grid, yt, self.p)
        return tuple(tuple(rs[m]) + tuple(assigned[m][1:-1]) + tuple(reversed(rt[m])) for m in range(k))

    def project(self, lk: Sequence[Path]) -> Linkage:
        return st_linkage(_project_path(q, self.s, self.t) for q in lk)


def _project_path(q: Path, s: Vertex, t: Optional[Vertex]) -> Path:
    last = max(i for i, v in enumerate(q) if _is_grid(v, "s"))
    if t is None:
        return (s,) + tuple(q[last + 1:])
    first = min(i for i, v in enumerate(q) if _is_grid(v, "t"))
    return (s,) + tuple(q[last + 1: first]) + (t,)


def grid_expand(g: PlaneGraph, s: Vertex, t: Vertex, k: int, p: int, P: Optional[Sequence[Path]] = None) -> GridExpansion:
    """Replace s and t by ``p`` rings each; terminal pairs are ``(s_m, t_m)`` for m < k.

    ``P`` (an s-t linkage) fixes the direction in which sinks are numbered so
    that it can be routed; without it sinks run counter-clockwise.
    """
    if g.has_edge(s, t):
        raise AdjacentST(f"{s!r} and {t!r} are adjacent")
    for v in (s, t):
        if g.degree(v) < k + 1 or g.degree(v) < 3:
            raise DegreeTooSmall(f"degree of {v!r} is {g.degree(v)} < {max(k + 1, 3)}")
    if p < 1:
        raise InvalidInput("p must be positive")
    big, spokes = _expand(g, [(s, "s"), (t, "t")], p)
    orient = -1
    if P is not None and k >= 3:
        sg = _Grid(s, "s", spokes["s"], 1)
        ordered = _order_by_spoke(P, sg.spokes)
        tidx = {v: i for i, v in enumerate(spokes["t"])}
        vals = [(-tidx[q[-2]]) % len(spokes["t"]) for q in ordered]
        if not _cyclic_increasing(vals, len(spokes["t"])):
            orient = 1
    sg = _Grid(s, "s", spokes["s"], 1)
    tg = _Grid(t, "t", spokes["t"], orient)
    pairs = tuple((sg.terminal(m), tg.terminal(m)) for m in range(k))
    inst = Instance(
        big, pairs=pairs, k=k, kind="two_face",
        S=_ring_face(big, "s", sg.ell), T=_ring_face(big, "t", tg.ell),
        meta={"p": p},
    )
    return GridExpansion(g, s, t, k, p, big, inst, sg, tg)


def _needed_moves(residues: Sequence[int], ell: int, winding: int) -> int:
    return sum(abs(y - x) for x, y in enumerate(_targets(residues, ell, winding)))


def _winding_candidates(limit: int) -> List[int]:
    return sorted(range(-limit, limit + 1), key=lambda w: (abs(w), w))


def _no_separator_sequence(g: PlaneGraph, s: Vertex, t: Vertex, P: Linkage, Q: Linkage, p: Optional[int]) -> List[Linkage]:
    k = len(P)
    base = grid_expand(g, s, t, k, 1, P)
    limit = k + 2
    sidx = {v: i for i, v in enumerate(base.s_grid.spokes)}
    tidx = {v: i for i, v in enumerate(base.t_grid.spokes)}

    def need(lk, shift, w):
        ordered = _order_by_spoke(lk, base.s_grid.spokes)
        assigned = [ordered[(m - shift) % k] for m in range(k)]
        ns = _needed_moves([base.s_grid.virtual(sidx[q[1]]) for q in assigned], base.s_grid.ell, w)
        nt = _needed_moves([base.t_grid.virtual(tidx[q[-2]]) for q in assigned], base.t_grid.ell, 0)
        return max(ns, nt)

    for _ in range(3):
        cands = [(shift, w) for w in _winding_candidates(limit) for shift in range(k)]
        p_big = max(need(P, 0, 0), max(need(Q, a, b) for a, b in cands)) + 1
        probe = grid_expand(g, s, t, k, p_big, P)
        lifted_p = probe.route(P)
        for shift, w in cands:
            lifted_q = probe.route(Q, shift, w)
            if mu_two_face(probe.instance, lifted_p, lifted_q) == 0:
                levels = max(need(P, 0, 0), need(Q, shift, w)) + 1
                if p is not None:
                    levels = max(levels, p)
                exp = grid_expand(g, s, t, k, levels, P)
                seq = sequence_two_face(exp.instance, exp.route(P), exp.route(Q, shift, w))
                if seq is None:
                    raise InvalidInput("expanded instance unexpectedly not reconfigurable")
                return elide_repeats((exp.project(lk) for lk in seq), st=True)
        limit *= 2
    raise InvalidInput("could not balance the winding of the lifted linkages")


# fans: k paths from an apex to fixed, distinct ends


def _fan_moves(g: PlaneGraph, apex: Vertex, P: Dict[Vertex, Path], Q: Dict[Vertex, Path], p: Optional[int]) -> List[Tuple[Vertex, Path]]:
    """Moves between two fans keyed by their far ends; no size-k cut may separate apex from ends."""
    if P == Q:
        return []
    ends = sorted(P, key=repr)
    k = len(ends)
    if k == 1:
        return [(ends[0], Q[ends[0]])]
    if g.degree(apex) == k:
        return _saturated_fan_moves(g, apex, P, Q)
    _, spokes = _expand(g, [(apex, "s")], 1)
    sg = _Grid(apex, "s", spokes["s"], 1)
    sidx = {v: i for i, v in enumerate(sg.spokes)}
    ordered = _order_by_spoke(list(P.values()), sg.spokes)
    order = [q[-1] for q in ordered]

    def residues(paths):
        return [sg.virtual(sidx[paths[u][1]]) for u in order]

    def lift(paths, w, levels):
        rs = _grid_routes(sg, _targets(residues(paths), sg.ell, w), levels)
        return tuple(tuple(rs[m]) + tuple(paths[u][1:]) for m, u in enumerate(order))

    def build(levels):
        big, _ = _expand(g, [(apex, "s")], levels)
        pairs = tuple((sg.terminal(m), u) for m, u in enumerate(order))
        S = _ring_face(big, "s", sg.ell)
        T = [f for f in big.faces_containing(order) if f != S]
        if not T:
            raise InvalidInput("fan ends do not share a face")
        return Instance(big, pairs=pairs, k=k, kind="two_face", S=S, T=T[0])

    limit = k + 2
    for _ in range(3):
        ws = _winding_candidates(limit)
        p_big = max(_needed_moves(residues(P), sg.ell, 0), max(_needed_moves(residues(Q), sg.ell, w) for w in ws)) + 1
        probe = build(p_big)
        lp = lift(P, 0, p_big)
        for w in ws:
            lq = lift(Q, w, p_big)
            if mu_two_face(probe, lp, lq) == 0:
                levels = max(_needed_moves(residues(P), sg.ell, 0), _needed_moves(residues(Q), sg.ell, w)) + 1
                if p is not None:
                    levels = max(levels, p)
                inst = build(levels)
                seq = sequence_two_face(inst, lift(P, 0, levels), lift(Q, w, levels))
                if seq is None:
                    raise InvalidInput("fan instance unexpectedly not reconfigurable")
                moves = []
                prev = None
                for lk in seq:
                    cur = {q[-1]: _project_path(q, apex, None) for q in lk}
                    if prev is not None:
                        for u in order:
                            if cur[u] != prev[u]:
                                moves.append((u, cur[u]))
                    prev = cur
                return moves
        limit *= 2
    raise InvalidInput("could not balance the winding of the fan")


def _saturated_fan_moves(g: PlaneGraph, apex: Vertex, P: Dict[Vertex, Path], Q: Dict[Vertex, Path]) -> List[Tuple[Vertex, Path]]:
    # every neighbor of the apex is used, so the first edges are fixed
    ends = sorted(P, key=repr)
    if any(P[u][1] != Q[u][1] for u in ends):
        raise InvalidInput("fans disagree on their first edges")
    # ends adjacent to the apex carry a fixed one-edge path
    fixed = {u for u in ends if len(P[u]) == 2}
    rest = g.subgraph(v for v in g.vertices if v != apex and v not in fixed)
    live = [(i, u) for i, u in enumerate(ends) if u not in fixed]
    pairs = {i: (P[u][1], u) for i, u in live}
    moves = pairs_moves(rest, pairs, {i: P[u][1:] for i, u in live}, {i: Q[u][1:] for i, u in live})
    if moves is None:
        raise InvalidInput("fan instance unexpectedly not reconfigurable")
    return [(ends[i], (apex,) + piece) for i, piece in moves]


def _fan_region(g: PlaneGraph, side: frozenset, cut: frozenset) -> PlaneGraph:
    return g.subgraph(v for v in g.vertices if v in side or v in cut)


def _stitch(P: Linkage, cuts: Sequence[frozenset], phases) -> List[Linkage]:
    """Apply per-segment moves; paths are identified by their vertex on ``cuts[0]``."""
    state: Dict[Vertex, Path] = {_through(q, cuts[0]): q for q in P}
    seq = [st_linkage(state.values())]
    for seg_of, moves in phases:
        for key, piece in moves:
            cur = state[key]
            a, b = seg_of(cur)
            i, j = cur.index(a), cur.index(b)
            state[key] = cur[:i] + piece + cur[j + 1:]
            seq.append(st_linkage(state.values()))
    return seq


def sequence_st(g: PlaneGraph, s: Vertex, t: Vertex, P: Sequence[Path], Q: Sequence[Path], p: Optional[int] = None) -> Optional[List[Linkage]]:
    """A reconfiguration sequence of s-t linkages from P to Q, or None."""
    subdivided = g.has_edge(s, t)
    g, P, Q = _prepare(g, s, t, P, Q)
    seq = _sequence_st(g, s, t, P, Q, p)
    if seq is None:
        return None
    if subdivided:
        seq = [_from_subdivided(lk) for lk in seq]
    return elide_repeats(seq, st=True)


def _sequence_st(g: PlaneGraph, s: Vertex, t: Vertex, P: Linkage, Q: Linkage, p: Optional[int]) -> Optional[List[Linkage]]:
    k = len(P)
    if P == Q:
        return [P]
    if k == 1:
        return [P, Q]
    cut_s = min_st_separator(g, s, t, k)
    if cut_s is None:
        return _no_separator_sequence(g, s, t, P, Q, p)
    cut_t = min_st_separator(g, t, s, k)
    U, W = cut_s.cut, cut_t.cut
    X, Y = cut_s.side, cut_t.side
    if U & W:
        # fan from s to U, then fan from t to U in the rest of the graph
        rest = frozenset(v for v in g.vertices if v not in X)
        first = _fan_region(g, X, U)
        second = g.subgraph(rest)
        fan1 = _fan_moves(first, s, {_through(q, U): _segment(q, s, _through(q, U)) for q in P},
                          {_through(q, U): _segment(q, s, _through(q, U)) for q in Q}, p)
        rev = lambda q: tuple(reversed(_segment(q, _through(q, U), t)))
        fan2 = _fan_moves(second, t, {_through(q, U): rev(q) for q in P}, {_through(q, U): rev(q) for q in Q}, p)
        fan2 = [(u, tuple(reversed(piece))) for u, piece in fan2]
        seq = _stitch(P, [U], [
            (lambda q: (s, _through(q, U)), fan1),
            (lambda q: (_through(q, U), t), fan2),
        ])
    else:
        pw = {_through(q, U): _through(q, W) for q in P}
        if pw != {_through(q, U): _through(q, W) for q in Q}:
            return None
        mid, pairs, Pm, Qm = _middle(g, X, Y, P, Q, U, W)
        mid_moves = pairs_moves(mid, pairs, Pm, Qm)
        if mid_moves is None:
            return None
        order = sorted(U, key=repr)
        mid_moves = [(order[i], piece) for i, piece in mid_moves]
        fan1 = _fan_moves(_fan_region(g, X, U), s, {_through(q, U): _segment(q, s, _through(q, U)) for q in P},
                          {_through(q, U): _segment(q, s, _through(q, U)) for q in Q}, p)
        wkey = {_through(q, W): _through(q, U) for q in P}
        rev = lambda q: tuple(reversed(_segment(q, _through(q, W), t)))
        fan3 = _fan_moves(_fan_region(g, Y, W), t, {_through(q, W): rev(q) for q in P},
                          {_through(q, W): rev(q) for q in Q}, p)
        fan3 = [(wkey[w], tuple(reversed(piece))) for w, piece in fan3]
        seq = _stitch(P, [U], [
            (lambda q: (s, _through(q, U)), fan1),
            (lambda q: (_through(q, U), _through(q, W)), mid_moves),
            (lambda q: (_through(q, W), t), fan3),
        ])
    if seq[-1] != Q:
        raise InvalidInput("internal error: stitched sequence misses the target")
    return seq
