"""Command-line front end: decide, sequence, verify, mu, word, oracle, gen.

Exit codes: 0 for YES or ok, 1 for NO or a failed check, 2 for errors.
All JSON output is written with sorted keys so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Dict, List, Mapping, Optional, Sequence

from . import crossings, generators, oracle, words
from .errors import ReconfError
from .linkage import Linkage, as_linkage, st_linkage, validate_linkage, verify_sequence
from .one_face import decide_one_face, sequence_one_face
from .plane_graph import Instance, PlaneGraph, _encode_vertex, _lookup, instance_from_json, instance_to_json, to_dot
from .st_paths import sequence_st, st_report
from .two_face import sequence_two_face, two_face_report

MODES = {"auto": None, "one-face": "one_face", "two-face": "two_face", "st": "st"}


class UsageError(Exception):
    pass


# input


def _load(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _table(inst: Instance) -> Dict[Any, Any]:
    table = {str(v): v for v in inst.graph.vertices}
    table.update({v: v for v in inst.graph.vertices if not isinstance(v, tuple)})
    return table


def parse_linkage(inst: Instance, raw: Sequence[Sequence[Any]]) -> Linkage:
    table = _table(inst)
    paths = [tuple(_lookup(table, v) for v in p) for p in raw]
    return st_linkage(paths) if inst.is_st else as_linkage(paths)


def load_instance(args: argparse.Namespace) -> tuple:
    """Instance plus the optional linkages ``P`` and ``Q`` stored with it or given by flag."""
    data = _load(args.input)
    mode = MODES[getattr(args, "mode", "auto")]
    inst = instance_from_json(data, force="two_face" if mode == "two_face" else None)
    if mode == "one_face" and inst.kind != "one_face":
        raise UsageError(f"instance is {inst.kind}, not one-face")
    if mode == "two_face" and inst.kind != "two_face":
        raise UsageError(f"instance is {inst.kind}, not two-face")
    if mode == "st" and not inst.is_st:
        raise UsageError("instance has no s-t terminals")
    P = data.get("P")
    Q = data.get("Q")
    if getattr(args, "P", None):
        P = _load(args.P)
    if getattr(args, "Q", None):
        Q = _load(args.Q)
    P = parse_linkage(inst, P) if P is not None else None
    Q = parse_linkage(inst, Q) if Q is not None else None
    return inst, P, Q


def _need(P: Optional[Linkage], Q: Optional[Linkage]) -> None:
    if P is None or Q is None:
        raise UsageError("linkages P and Q are required (in the instance file or via --P/--Q)")


# output


def encode_linkage(lk: Sequence[Sequence[Any]]) -> List[List[Any]]:
    return [[_encode_vertex(v) for v in p] for p in lk]


def emit(out: Mapping[str, Any], fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "text":
        for key in sorted(out):
            stream.write(f"{key}: {json.dumps(out[key], sort_keys=True)}\n")
        return
    stream.write(json.dumps(out, sort_keys=True) + "\n")


# solving


def decide(inst: Instance, P: Linkage, Q: Linkage, limit: int = oracle.DEFAULT_LIMIT) -> Dict[str, Any]:
    """Decision with the method matching the instance kind; the oracle handles the rest."""
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    out: Dict[str, Any] = {"kind": inst.kind}
    if inst.kind == "one_face":
        out.update(answer=decide_one_face(inst, P, Q), method="one-face")
    elif inst.kind == "two_face":
        rep = two_face_report(inst, P, Q)
        out.update(answer=rep.answer, method="two-face", mu=rep.mu)
        if rep.separator is not None:
            out["separator"] = [_encode_vertex(v) for v in rep.separator]
        if rep.reason:
            out["reason"] = rep.reason
    elif inst.is_st and isinstance(inst.graph, PlaneGraph):
        rep = st_report(inst.graph, *inst.st, P, Q)
        out.update(answer=rep.answer, method="st", reason=rep.reason)
    else:
        out.update(answer=oracle.oracle_decide(inst, P, Q, limit), method="oracle")
    out["answer"] = "YES" if out["answer"] else "NO"
    return out


def sequence(inst: Instance, P: Linkage, Q: Linkage, limit: int = oracle.DEFAULT_LIMIT) -> Optional[List[Linkage]]:
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    if inst.kind == "one_face":
        return sequence_one_face(inst, P, Q)
    if inst.kind == "two_face":
        return sequence_two_face(inst, P, Q)
    if inst.is_st and isinstance(inst.graph, PlaneGraph):
        return sequence_st(inst.graph, *inst.st, P, Q)
    return oracle.oracle_shortest(inst, P, Q, limit)


# subcommands


def cmd_decide(args: argparse.Namespace) -> int:
    inst, P, Q = load_instance(args)
    _need(P, Q)
    out = decide(inst, P, Q, args.limit)
    emit(out, args.format)
    return 0 if out["answer"] == "YES" else 1


def cmd_sequence(args: argparse.Namespace) -> int:
    inst, P, Q = load_instance(args)
    _need(P, Q)
    seq = sequence(inst, P, Q, args.limit)
    if seq is None:
        emit({"answer": "NO", "kind": inst.kind}, args.format)
        return 1
    emit({"answer": "YES", "kind": inst.kind, "length": len(seq), "sequence": [encode_linkage(lk) for lk in seq]},
         args.format)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    inst, _, _ = load_instance(args)
    raw = _load(args.sequence)
    if isinstance(raw, Mapping):
        raw = raw["sequence"]
    seq = [parse_linkage(inst, lk) for lk in raw]
    try:
        verify_sequence(inst, seq)
    except ReconfError as exc:
        emit({"ok": False, "index": getattr(exc, "index", None), "error": str(exc)}, args.format)
        return 1
    emit({"ok": True, "length": len(seq)}, args.format)
    return 0


def cmd_mu(args: argparse.Namespace) -> int:
    inst, P, Q = load_instance(args)
    _need(P, Q)
    if not isinstance(inst.graph, PlaneGraph) or inst.is_st:
        raise UsageError("mu needs a plane instance with terminal pairs")
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    mat = crossings.mu_matrix(inst.graph, P, Q)
    out: Dict[str, Any] = {"matrix": {f"{i + 1},{j + 1}": v for (i, j), v in sorted(mat.items())}}
    values = set(mat.values())
    out["mu"] = values.pop() if len(values) == 1 else (0 if not values else None)
    emit(out, args.format)
    return 0


def word_report(sequences: Sequence[Sequence[Sequence[int]]]) -> Dict[str, Any]:
    k = len(sequences)
    rows = []
    for j, cs in enumerate(sequences, start=1):
        raw = words.word_from_crossings([tuple(c) for c in cs], k)
        red = words.reduce(raw)
        rows.append({
            "j": j,
            "word": words.format_word(raw),
            "reduced": words.format_word(red),
            "abelianization": list(words.abelianize(raw, k)),
            "member": words.in_cyclic_subgroup(red, j),
        })
    ok, witness = words.curves_reconfigurable([[tuple(c) for c in cs] for cs in sequences])
    return {"words": rows, "reconfigurable": ok, "witness": witness[0] if witness else None}


def cmd_word(args: argparse.Namespace) -> int:
    data = _load(args.input)
    if "crossings" in data:
        seqs = data["crossings"]
    else:
        inst, P, Q = load_instance(args)
        _need(P, Q)
        validate_linkage(inst, P)
        validate_linkage(inst, Q)
        seqs = [crossings.crossing_sequence(inst.graph, P, Qj, j) for j, Qj in enumerate(Q, 1)]
    out = word_report(seqs)
    emit(out, args.format)
    return 0 if out["reconfigurable"] else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    inst, P, Q = load_instance(args)
    _need(P, Q)
    validate_linkage(inst, P)
    validate_linkage(inst, Q)
    if args.shortest:
        seq = oracle.oracle_shortest(inst, P, Q, args.limit)
        out: Dict[str, Any] = {"answer": "YES" if seq else "NO"}
        if seq:
            out.update(length=len(seq), sequence=[encode_linkage(lk) for lk in seq])
    else:
        out = {"answer": "YES" if oracle.oracle_decide(inst, P, Q, args.limit) else "NO"}
    emit(out, args.format)
    return 0 if out["answer"] == "YES" else 1


def _gen(args: argparse.Namespace):
    rng = random.Random(args.seed)
    fam = args.family
    if fam == "cylinder":
        return generators.gen_cylinder(args.rows, args.cols, args.k, args.winding_p, args.winding_q)
    if fam == "figure1":
        return generators.gen_figure1()
    if fam == "damaged-cylinder":
        inst = generators.damaged_cylinder(rng)
        lks = oracle.enumerate_linkages(inst)
        if not lks:
            raise UsageError("damaged cylinder admits no linkage; try another seed")
        return inst, lks[0], rng.choice(lks)
    if fam == "st-cylinder":
        g, s, t = generators.st_cylinder_graph(args.rows, args.cols)
        inst = Instance(g, st=(s, t), k=args.k, kind="st")
        lks = oracle.enumerate_linkages(inst)
        return inst, lks[0], rng.choice(lks)
    planar = fam == "ncl-planar"
    h = generators.random_ncl_graph(rng, args.ncl_vertices, planar=planar)
    sigma = generators.random_ncl_config(h, rng)
    tau = generators.random_ncl_config(h, rng)
    if planar:
        return generators.gen_ncl_planar(h, sigma, tau)
    return generators.gen_ncl_stpaths(h, sigma, tau)


def cmd_gen(args: argparse.Namespace) -> int:
    inst, P, Q = _gen(args)
    if args.format == "dot":
        sys.stdout.write(to_dot(inst.graph))
        return 0
    out = instance_to_json(inst)
    out["P"] = encode_linkage(P)
    out["Q"] = encode_linkage(Q)
    emit(out, args.format)
    return 0


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkreconf", description="Reconfiguration of vertex-disjoint paths.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, linkages: bool = True, mode: bool = True) -> None:
        p.add_argument("-i", "--input", required=True, help="instance JSON file, or - for stdin")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if mode:
            p.add_argument("--mode", choices=sorted(MODES), default="auto")
        if linkages:
            p.add_argument("--P", help="JSON file with the start linkage")
            p.add_argument("--Q", help="JSON file with the target linkage")

    p = sub.add_parser("decide", help="is P reconfigurable to Q")
    common(p)
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("sequence", help="emit a reconfiguration sequence")
    common(p)
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", help="check a reconfiguration sequence")
    common(p, linkages=False)
    p.add_argument("-s", "--sequence", required=True, help="JSON list of linkages")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mu", help="pairwise algebraic intersection numbers")
    common(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("word", help="free-group words from crossing data or linkages")
    common(p)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("oracle", help="exhaustive search")
    common(p)
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.add_argument("--shortest", action="store_true", help="also return a shortest sequence")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate an instance with two linkages")
    p.add_argument("--family", required=True,
                   choices=("cylinder", "damaged-cylinder", "st-cylinder", "figure1", "ncl-st", "ncl-planar"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rows", type=int, default=2)
    p.add_argument("--cols", type=int, default=6)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--winding-p", type=int, default=0)
    p.add_argument("--winding-q", type=int, default=0)
    p.add_argument("--ncl-vertices", type=int, default=6)
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, ReconfError, KeyError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
