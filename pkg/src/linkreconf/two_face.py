"""Two-face instances: separator-based decision and the constructive join/improve engine.

Paths from the S face to the T face are lifted to the infinite strip obtained by
cutting the annulus along a reference curve and gluing copies end to end.  A
lifted vertex is ``(v, j)`` with ``j`` the copy index.  The left region of a
lifted path is the side that contains copies with very small ``j``; ``P <= Q``
means the left region of ``P`` is contained in that of ``Q``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from .crossings import ReferenceCurve, mu_two_face, reference_curve
from .errors import InvalidInput, MuNonzero, NoImprovingStep, WindowTooSmall
from .linkage import Linkage, Path, validate_linkage
from .one_face import apply_moves, one_face_moves
from .plane_graph import Instance, PlaneGraph, Vertex, classify_instance
from .separators import VertexCut, min_terminal_separator

Lifted = Tuple[Vertex, int]
LPath = Tuple[Lifted, ...]
FaceNode = Tuple[int, int]
Move = Tuple[int, Path]

# Scanning neighbors counter-clockwise from the incoming edge turns a walk as
# far towards larger copies as possible, which maximizes the left region.
_MAX_LEFT_CW = False


class SideLabels:
    """Left/right classification of strip faces with respect to one lifted path."""

    def __init__(self, cover: "StripCover", path: LPath, labels: Dict[FaceNode, bool], lo: int, hi: int):
        self.cover = cover
        self.path = path
        self.labels = labels
        self.lo = lo
        self.hi = hi

    def is_left(self, node: FaceNode) -> bool:
        if node in self.labels:
            return self.labels[node]
        if node[1] < self.lo:
            return True
        if node[1] > self.hi:
            return False
        raise WindowTooSmall(f"face copy {node} not reached")


class StripCover:
    """Universal cover of the annulus between faces S and T, cut along ``curve``."""

    def __init__(self, g: PlaneGraph, S: int, T: int, curve: ReferenceCurve):
        self.g = g
        self.S = S
        self.T = T
        self.curve = curve
        self.delta = curve.delta_table()
        self.offsets: Dict[int, List[int]] = {}
        spread = 0
        for f in g.faces:
            acc = [0]
            for d in f.darts:
                acc.append(acc[-1] + self.delta.get(d, 0))
            self.offsets[f.id] = acc
            spread = max(spread, max(abs(x) for x in acc))
        self.spread = spread
        self._labels: Dict[LPath, SideLabels] = {}

    @classmethod
    def for_linkage(cls, inst: Instance, P: Sequence[Path]) -> "StripCover":
        return cls(inst.graph, inst.S, inst.T, reference_curve(inst.graph, inst.S, inst.T, P))

    def boundary_face(self, f: int) -> bool:
        return f == self.S or f == self.T

    # lifting

    def lift(self, path: Sequence[Vertex], start: int = 0) -> LPath:
        j = start
        out = [(path[0], j)]
        for a, b in zip(path, path[1:]):
            j += self.delta.get((a, b), 0)
            out.append((b, j))
        return tuple(out)

    def lift_neighbor(self, x: Lifted, u: Vertex) -> Lifted:
        v, j = x
        return (u, j + self.delta.get((v, u), 0))

    def face_at(self, a: Lifted, b: Lifted) -> FaceNode:
        """Strip face to the left of the lifted dart ``a -> b``."""
        f, m = self.g.dart_position(a[0], b[0])
        if self.boundary_face(f):
            return (f, 0)
        return (f, a[1] - self.offsets[f][m])

    def face_darts(self, node: FaceNode) -> List[Tuple[Lifted, Lifted]]:
        f, a = node
        off = self.offsets[f]
        return [((u, a + off[m]), (v, a + off[m + 1])) for m, (u, v) in enumerate(self.g.faces[f].darts)]

    # left regions

    def labels(self, X: LPath) -> SideLabels:
        cached = self._labels.get(X)
        if cached is None:
            cached = self._compute_labels(X)
            self._labels[X] = cached
        return cached

    def _flood(self, seeds: Dict[FaceNode, int], cut: Set[FrozenSet[Lifted]], lo: int, hi: int, tag: Dict[FaceNode, int]) -> None:
        queue = deque()
        for node, side in seeds.items():
            if node not in tag:
                tag[node] = side
                queue.append(node)
        while queue:
            node = queue.popleft()
            for a, b in self.face_darts(node):
                if frozenset((a, b)) in cut:
                    continue
                nb = self.face_at(b, a)
                if self.boundary_face(nb[0]) or not lo <= nb[1] <= hi:
                    continue
                if nb not in tag:
                    tag[nb] = tag[node]
                    queue.append(nb)
                elif tag[nb] != tag[node]:
                    raise InvalidInput("inconsistent side labels")

    def _compute_labels(self, X: LPath) -> SideLabels:
        cut = {frozenset(e) for e in zip(X, X[1:])}
        js = [j for _, j in X]
        interior = [f.id for f in self.g.faces if not self.boundary_face(f.id)]
        # the face left of a lifted dart of an S-to-T path lies towards smaller copies
        local: Dict[FaceNode, int] = {}
        for a, b in zip(X, X[1:]):
            for node, side in ((self.face_at(a, b), 1), (self.face_at(b, a), 0)):
                if self.boundary_face(node[0]):
                    continue
                if local.get(node, side) != side:
                    raise InvalidInput("lifted path does not separate the strip")
                local[node] = side
        margin = self.spread + 2
        lo, hi = min(js) - margin, max(js) + margin
        tag: Dict[FaceNode, int] = {}
        self._flood(local, cut, lo, hi, tag)
        # faces entirely below (above) the path's copies lie left (right) of it
        far = {(f, lo): 1 for f in interior}
        far.update({(f, hi): 0 for f in interior})
        self._flood(far, cut, lo, hi, tag)
        return SideLabels(self, X, {n: bool(s) for n, s in tag.items()}, lo, hi)

    def _edge_nodes(self, a: Lifted, b: Lifted, avoid: Set[Lifted]) -> List[FaceNode]:
        nodes = [n for n in (self.face_at(a, b), self.face_at(b, a)) if not self.boundary_face(n[0])]
        if nodes:
            return nodes
        # an edge joining the two boundaries: classify by an endpoint off the path
        for x in (a, b):
            if x in avoid:
                continue
            for u in self.g.neighbors(x[0]):
                n = self.face_at(x, self.lift_neighbor(x, u))
                if not self.boundary_face(n[0]):
                    return [n]
        raise InvalidInput("edge lies between the two boundary faces")

    def precedes(self, A: LPath, B: LPath) -> bool:
        """True iff every edge of ``A`` lies in the closed left region of ``B``."""
        if A == B:
            return True
        lab = self.labels(B)
        on_b = {frozenset(e) for e in zip(B, B[1:])}
        verts = set(B)
        for a, b in zip(A, A[1:]):
            if frozenset((a, b)) in on_b:
                continue
            if not all(lab.is_left(n) for n in self._edge_nodes(a, b, verts)):
                return False
        return True

    # extremal paths

    def _start_ref(self, s: Lifted) -> Vertex:
        for u in self.g.neighbors(s[0]):
            if self.g.left_face(u, s[0]) == self.S:
                return u
        raise InvalidInput(f"{s[0]!r} is not on the source face")

    def max_left_path(self, edges: Set[FrozenSet[Lifted]], start: Lifted, goal: Lifted) -> Optional[LPath]:
        """Path in the edge set from ``start`` to ``goal`` with the largest left region."""
        adj: Dict[Lifted, Set[Lifted]] = {}
        for e in edges:
            a, b = tuple(e)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        if start not in adj:
            return None
        path = [start]
        visited = {start}
        iters = [self._candidates(start, self._start_ref(start), adj, first=True)]
        while path:
            if path[-1] == goal:
                return tuple(path)
            for w in iters[-1]:
                if w not in visited:
                    visited.add(w)
                    iters.append(self._candidates(w, path[-1][0], adj))
                    path.append(w)
                    break
            else:
                path.pop()
                iters.pop()
        return None

    def _candidates(self, x: Lifted, ref: Vertex, adj: Mapping[Lifted, Set[Lifted]], first: bool = False) -> Iterator[Lifted]:
        v = x[0]
        deg = self.g.degree(v)
        step = self.g.succ_cw if _MAX_LEFT_CW else self.g.pred_cw
        order: List[Vertex] = []
        u = ref
        if first and not _MAX_LEFT_CW:
            order.append(u)
        for _ in range(deg):
            u = step(v, u)
            order.append(u)
        nbrs = adj.get(x, set())
        for u in order:
            y = self.lift_neighbor(x, u)
            if y in nbrs:
                yield y

    def project(self, X: LPath) -> Path:
        return tuple(v for v, _ in X)


def _simple(p: Path) -> bool:
    return len(set(p)) == len(p)


def _edges(X: LPath) -> Set[FrozenSet[Lifted]]:
    return {frozenset(e) for e in zip(X, X[1:])}


def _lift_closed(cover: StripCover, p: Sequence[Vertex]) -> LPath:
    X = cover.lift(p)
    if X[-1][1] != 0:
        raise MuNonzero(f"path from {p[0]!r} winds {X[-1][1]} times around the annulus")
    return X


def join(inst: Instance, cover: StripCover, P: Sequence[Path], Q: Sequence[Path]) -> Linkage:
    """Per pair, the path in the union of both lifts with the largest left region."""
    out = []
    for p, q in zip(P, Q):
        A, B = _lift_closed(cover, p), _lift_closed(cover, q)
        if A == B:
            out.append(tuple(p))
            continue
        X = cover.max_left_path(_edges(A) | _edges(B), A[0], A[-1])
        if X is None:
            raise InvalidInput("union of lifts does not connect the terminals")
        J = cover.project(X)
        if not _simple(J):
            raise InvalidInput("join path is not simple")
        out.append(J)
    J = tuple(out)
    validate_linkage(inst, J)
    return J


def improve_step(inst: Instance, cover: StripCover, P: Sequence[Path], target: Sequence[Path]) -> Linkage:
    """An adjacent linkage P' with P < P' <= target."""
    P = tuple(map(tuple, P))
    target = tuple(map(tuple, target))
    k = len(P)
    for i in range(k):
        if P[i] == target[i]:
            continue
        others = {v for h in range(k) if h != i for v in P[h]}
        if not others.intersection(target[i]):
            return P[:i] + (target[i],) + P[i + 1:]
    for i in range(k):
        if P[i] == target[i]:
            continue
        A, B = _lift_closed(cover, P[i]), _lift_closed(cover, target[i])
        lab_a, lab_b = cover.labels(A), cover.labels(B)
        others = {v for h in range(k) if h != i for v in P[h]}
        nodes = set()
        for a, b in zip(A, A[1:]):
            for n in (cover.face_at(a, b), cover.face_at(b, a)):
                if not cover.boundary_face(n[0]) and not lab_a.is_left(n) and lab_b.is_left(n):
                    nodes.add(n)
        base = _edges(A)
        for n in sorted(nodes):
            H = base | {frozenset(d) for d in cover.face_darts(n)}
            X = cover.max_left_path(H, A[0], A[-1])
            if X is None or X == A:
                continue
            R = cover.project(X)
            if not _simple(R) or others.intersection(R):
                continue
            return P[:i] + (R,) + P[i + 1:]
    raise NoImprovingStep("no single-path move makes progress")


@dataclass
class EngineRun:
    """Trace of the constructive engine on a separator-free instance."""

    cover: Optional[StripCover]
    join: Linkage
    forward: List[Linkage]
    backward: List[Linkage]

    @property
    def sequence(self) -> List[Linkage]:
        return self.forward + self.backward[::-1][1:]


def _climb(inst: Instance, cover: StripCover, P: Linkage, J: Linkage) -> List[Linkage]:
    cap = 4 * inst.k * len(inst.graph.faces) * (2 * len(inst.graph.vertices) + 8) + 16
    seq = [P]
    while seq[-1] != J:
        if len(seq) > cap:
            raise NoImprovingStep("step budget exhausted")
        seq.append(improve_step(inst, cover, seq[-1], J))
    return seq


def engine_run(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> EngineRun:
    """Reconfigure P and Q up to their join; requires no size-k terminal separator and mu = 0."""
    P = tuple(map(tuple, P))
    Q = tuple(map(tuple, Q))
    if P == Q:
        return EngineRun(None, P, [P], [Q])
    if inst.k == 1:
        return EngineRun(None, Q, [P, Q], [Q])
    cover = StripCover.for_linkage(inst, P)
    J = join(inst, cover, P, Q)
    return EngineRun(cover, J, _climb(inst, cover, P, J), _climb(inst, cover, Q, J))


# separator recursion


@dataclass
class TwoFaceReport:
    answer: bool
    mu: int
    separator: Optional[List[Vertex]] = None
    reason: str = ""
    moves: Optional[List[Move]] = field(default=None, repr=False)


def _face_hint(g: PlaneGraph, face: Optional[int], keep: Set[Vertex]) -> Optional[List[Vertex]]:
    if face is None:
        return None
    return [v for v in g.faces[face].vertices if v in keep]


def _sub_instances(
    g: PlaneGraph, keep: Set[Vertex], pairs: Dict[int, Tuple[Vertex, Vertex]], hints: Dict[str, Optional[List[Vertex]]]
) -> List[Tuple[Instance, List[int]]]:
    """Induced subgraph split per component, each classified as one- or two-face."""
    sub = g.subgraph(keep)
    groups: Dict[int, List[int]] = {}
    for i in sorted(pairs):
        groups.setdefault(sub.component_of(pairs[i][0]), []).append(i)
    out = []
    for cid in sorted(groups):
        ids = groups[cid]
        comp = set(sub.components()[cid])
        piece = sub.subgraph(comp) if len(groups) > 1 or len(comp) < len(sub.vertices) else sub
        h = {key: [v for v in val if v in comp] for key, val in hints.items() if val}
        inst = classify_instance(piece, [pairs[i] for i in ids], faces_hint=h)
        if inst.kind not in ("one_face", "two_face"):
            raise InvalidInput("sub-instance is neither one-face nor two-face")
        out.append((inst, ids))
    return out


def _restrict(paths: Mapping[int, Path], ids: Sequence[int]) -> Linkage:
    return tuple(paths[i] for i in ids)


def _solve(inst: Instance, P: Linkage, Q: Linkage, want_moves: bool) -> TwoFaceReport:
    k = inst.k
    if inst.kind == "one_face":
        moves = None
        if want_moves:
            pairs = dict(enumerate(inst.pairs))
            moves = one_face_moves(inst.graph, pairs, dict(enumerate(P)), dict(enumerate(Q)))
        return TwoFaceReport(True, 0, reason="one-face", moves=moves)
    mu = mu_two_face(inst, P, Q)
    if P == Q:
        return TwoFaceReport(True, mu, moves=[])
    if k == 1:
        return TwoFaceReport(True, 0, reason="single pair", moves=[(0, Q[0])])
    sep = min_terminal_separator(inst)
    if sep is None:
        if mu != 0:
            return TwoFaceReport(False, mu, reason="mu nonzero without a size-k separator")
        moves = None
        if want_moves:
            run = engine_run(inst, P, Q)
            moves = _moves_of(run.sequence)
        return TwoFaceReport(True, mu, moves=moves)
    return _split(inst, P, Q, sep, mu, want_moves)


def _moves_of(seq: Sequence[Linkage]) -> List[Move]:
    out = []
    for a, b in zip(seq, seq[1:]):
        for i, (p, q) in enumerate(zip(a, b)):
            if p != q:
                out.append((i, q))
    return out


def _split(inst: Instance, P: Linkage, Q: Linkage, sep: VertexCut, mu: int, want_moves: bool) -> TwoFaceReport:
    g = inst.graph
    U = sep.cut
    cut_list = sorted(U, key=lambda v: (str(type(v)), v))
    u_of: Dict[int, Vertex] = {}
    for i, (p, q) in enumerate(zip(P, Q)):
        a, b = U.intersection(p), U.intersection(q)
        if a != b:
            return TwoFaceReport(False, mu, cut_list, reason=f"path {i + 1} changes its separator vertex")
        if len(a) != 1:
            raise InvalidInput("path meets the separator more than once")
        u_of[i] = next(iter(a))
    X = set(sep.side)
    Y: Set[Vertex] = set()
    queue = deque(v for v in inst.sinks)
    Y.update(inst.sinks)
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in U and y not in Y:
                Y.add(y)
                queue.append(y)
    head = {i: p[: p.index(u_of[i]) + 1] for i, p in enumerate(P)}
    tail = {i: p[p.index(u_of[i]):] for i, p in enumerate(P)}
    qhead = {i: q[: q.index(u_of[i]) + 1] for i, q in enumerate(Q)}
    qtail = {i: q[q.index(u_of[i]):] for i, q in enumerate(Q)}
    side1 = {i: (s, u_of[i]) for i, (s, _) in enumerate(inst.pairs)}
    side2 = {i: (u_of[i], t) for i, (_, t) in enumerate(inst.pairs)}
    hint_s = _face_hint(g, inst.S, X | U)
    hint_t = _face_hint(g, inst.T, Y | U)
    parts1 = _sub_instances(g, X | set(U), side1, {"S": hint_s, "T": sorted(U, key=str)})
    parts2 = _sub_instances(g, Y | set(U), side2, {"S": sorted(U, key=str), "T": hint_t})
    moves: List[Move] = []
    state = {i: p for i, p in enumerate(P)}
    for parts, first in ((parts1, True), (parts2, False)):
        for sub, ids in parts:
            rp = _restrict(head if first else tail, ids)
            rq = _restrict(qhead if first else qtail, ids)
            rep = _solve(sub, rp, rq, want_moves)
            if not rep.answer:
                return TwoFaceReport(False, mu, cut_list, reason=rep.reason)
            if want_moves:
                for j, piece in rep.moves:
                    i = ids[j]
                    cur = state[i]
                    cut = cur.index(u_of[i])
                    full = piece + cur[cut + 1:] if first else cur[:cut] + piece
                    state[i] = full
                    moves.append((i, full))
    return TwoFaceReport(True, mu, cut_list, moves=moves if want_moves else None)


def _check_two_face(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> Tuple[Linkage, Linkage]:
    if inst.pairs is None or inst.kind not in ("two_face", "one_face"):
        raise InvalidInput("not a two-face instance")
    if inst.kind == "two_face" and (inst.S is None or inst.T is None):
        raise InvalidInput("two-face instance needs faces S and T")
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    return tuple(map(tuple, P)), tuple(map(tuple, Q))


def two_face_report(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> TwoFaceReport:
    P, Q = _check_two_face(inst, P, Q)
    return _solve(inst, P, Q, want_moves=False)


def decide_two_face(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> bool:
    return two_face_report(inst, P, Q).answer


def sequence_two_face(inst: Instance, P: Sequence[Path], Q: Sequence[Path]) -> Optional[List[Linkage]]:
    """A reconfiguration sequence from P to Q, or None when none exists."""
    P, Q = _check_two_face(inst, P, Q)
    rep = _solve(inst, P, Q, want_moves=True)
    if not rep.answer:
        return None
    seq = apply_moves(P, rep.moves)
    if seq[-1] != Q:
        raise InvalidInput("internal error: sequence does not reach the target")
    return seq


def _pairs_report(g: PlaneGraph, pairs: Mapping[int, Tuple[Vertex, Vertex]], P: Mapping[int, Path], Q: Mapping[int, Path], want_moves: bool) -> Tuple[bool, List[Move]]:
    moves: List[Move] = []
    keep = set(g.vertices)
    for sub, ids in _sub_instances(g, keep, dict(pairs), {}):
        rep = _solve(sub, _restrict(P, ids), _restrict(Q, ids), want_moves)
        if not rep.answer:
            return False, []
        if want_moves:
            moves += [(ids[j], piece) for j, piece in rep.moves]
    return True, moves


def pairs_decide(g: PlaneGraph, pairs: Mapping[int, Tuple[Vertex, Vertex]], P: Mapping[int, Path], Q: Mapping[int, Path]) -> bool:
    """Decide a keyed one- or two-face instance given by an explicit pair map."""
    return _pairs_report(g, pairs, P, Q, False)[0]


def pairs_moves(g: PlaneGraph, pairs: Mapping[int, Tuple[Vertex, Vertex]], P: Mapping[int, Path], Q: Mapping[int, Path]) -> Optional[List[Move]]:
    """Keyed single-path moves from P to Q, or None when Q is unreachable."""
    ok, moves = _pairs_report(g, pairs, P, Q, True)
    return moves if ok else None
