"""Command-line front end.

Exit codes: 0 success, 2 unparseable graph or word, 3 graph too large, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .centralisers import block_decomposition, centraliser_of_element, root
from .extension import DEFAULT_CAP, classify_extension
from .graph import CapacityError, CommutationGraph, GraphError, center, family, parse_graph
from .lattice import build_lattice, cdim, hasse_dot, max_chain
from .scan import CHECKS, run_scan
from .words import WordError, cyclic_permutations, cyclic_reduce, normalize

EXIT_OK, EXIT_PARSE, EXIT_CAPACITY, EXIT_IO = 0, 2, 3, 4
DEFAULT_SEED = 20240601


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _word_text(w) -> str:
    return str(w) or "1"


def _read_input(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure(EXIT_IO, f"cannot read {path}: {exc}") from exc


def _load(args) -> tuple[CommutationGraph, str]:
    text = _read_input(args.graph)
    return parse_graph(text, format=args.format), text


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _emit(args, result: dict, text_lines: list[str], digest_source: str, warnings: list[str] | None = None) -> None:
    warnings = warnings or []
    if args.json:
        envelope = {
            "command": args.command if args.command != "word" else f"word {args.op}",
            "input_digest": _digest(digest_source),
            "result": result,
            "warnings": warnings,
        }
        print(json.dumps(envelope, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)


def _write(path: str, content: str) -> None:
    try:
        Path(path).write_text(content, encoding="utf-8")
    except OSError as exc:
        raise _Failure(EXIT_IO, f"cannot write {path}: {exc}") from exc


def cmd_cdim(args) -> None:
    g, text = _load(args)
    d = cdim(g)
    result = {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.edges()],
        "cdim": d,
        "center": center(g).names(),
    }
    _emit(args, result, [f"cdim = {d}"], text)


def cmd_chain(args) -> None:
    g, text = _load(args)
    chain, witness = max_chain(g)
    lines = [f"cdim = {len(witness)}", "witness: " + (" ".join(witness) or "(none)")]
    for i, s in enumerate(chain):
        lines.append(f"S{i} = {s!r}")
    result = {"cdim": len(witness), "witness": witness, "chain": [s.names() for s in chain]}
    _emit(args, result, lines, text)


def cmd_lattice(args) -> None:
    g, text = _load(args)
    lat = build_lattice(g)
    dot = hasse_dot(lat)
    if args.dot:
        _write(args.dot, dot)
    result = {
        "height": lat.height,
        "nodes": [e.carrier.names() for e in lat.elements],
        "covers": [list(p) for p in lat.hasse],
    }
    lines = [f"{len(lat)} nodes, {len(lat.hasse)} covering edges, height {lat.height}"]
    if not args.dot:
        lines = [dot.rstrip("\n")]
    _emit(args, result, lines, text)


def _explain(rep) -> list[str]:
    lines = [
        f"cdim(G) = {rep.cdim_G}, cdim(G - {rep.vertex}) = {rep.cdim_Gx}",
        f"corollary quick checks: {', '.join(sorted(rep.corollary_hits)) or 'none'}",
    ]
    for kind, P, r in rep.witnesses:
        lock = "no" if r.locked_at is None else f"at {r.locked_at[0]}, keys {r.locked_at[1]!r}"
        tie = "no" if r.tied_at is None else f"at {r.tied_at[0]}, {'+'.join(sorted(r.tied_at[1]))}"
        lines.append(f"  {kind}: ({', '.join(P.sequence)}) locked {lock}; tied {tie}")
    lines.append(f"predicted delta: {rep.predicted_delta}; amended rule: {rep.amended_predicted_delta}")
    return lines


def cmd_delta(args) -> None:
    g, text = _load(args)
    try:
        rep = classify_extension(g, args.vertex, cap=args.cap)
    except GraphError as exc:
        raise _Failure(EXIT_PARSE, str(exc)) from exc
    warnings = []
    if not rep.witnesses_complete:
        warnings.append("witness search hit the node cap; predictions may be undecided")
    if rep.consistent is False:
        warnings.append(
            f"locked/tied rule predicts delta {rep.predicted_delta}, lattices give {rep.delta}"
        )
    lines = [f"delta = {rep.delta} ({rep.theorem_clause})"]
    if args.explain:
        lines += _explain(rep)
    _emit(args, rep.to_dict(), lines, f"{text}\0{args.vertex}", warnings)


def cmd_word(args) -> None:
    g, text = _load(args)
    words = [normalize(g, w) for w in args.words]
    need = 2 if args.op == "equal" else 1
    if len(words) != need:
        raise _Failure(EXIT_PARSE, f"word {args.op} takes {need} word argument(s)")
    w = words[0]
    if args.op == "normalize":
        result = {"normal_form": _word_text(w), "length": len(w)}
        lines = [_word_text(w)]
    elif args.op == "equal":
        eq = words[0] == words[1]
        result = {"equal": eq, "normal_forms": [_word_text(u) for u in words]}
        lines = ["true" if eq else "false"]
    elif args.op == "root":
        r, m = root(w)
        result = {"root": _word_text(r), "exponent": m}
        lines = [f"root = {_word_text(r)}", f"exponent = {m}"]
    elif args.op == "blocks":
        dec = block_decomposition(w)
        result = {"conjugator": _word_text(dec.conjugator), "blocks": [_word_text(b) for b in dec.blocks]}
        lines = [f"conjugator = {_word_text(dec.conjugator)}"] + [f"block {_word_text(b)}" for b in dec.blocks]
    elif args.op == "cyclic":
        u, v = cyclic_reduce(w)
        perms = sorted(_word_text(p) for p in cyclic_permutations(v))
        result = {"conjugator": _word_text(u), "cyclically_minimal": _word_text(v), "cyclic_permutations": perms}
        lines = [f"conjugator = {_word_text(u)}", f"core = {_word_text(v)}"] + [f"  {p}" for p in perms]
    else:  # centralizer
        c = centraliser_of_element(w)
        result = {
            "conjugator": _word_text(c.conjugator),
            "roots": [_word_text(v) for v, _ in c.cyclic_parts],
            "block_exponents": [m for _, m in c.cyclic_parts],
            "abelianizing_set": c.abelianizing_set.names(),
            "whole_group": c.whole_group,
        }
        lines = [
            f"conjugator = {_word_text(c.conjugator)}",
            "roots: " + (", ".join(_word_text(v) for v, _ in c.cyclic_parts) or "(none)"),
            f"abelianizing set: {c.abelianizing_set!r}",
        ]
    _emit(args, result, lines, "\0".join([text, args.op, *args.words]))


def cmd_scan(args) -> None:
    try:
        res = run_scan(args.max_n, args.check, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise _Failure(EXIT_PARSE, str(exc)) from exc
    data = res.to_dict()
    lines = [
        f"check {args.check}: {res.graphs} graphs, {len(res.counterexamples)} counterexamples (seed {args.seed})",
        "cdim histogram: " + ", ".join(f"{k}: {v}" for k, v in data["histogram"].items()),
    ]
    lines += [f"  {c['graph']}  [{c['problem']}]" for c in data["counterexamples"]]
    source = json.dumps({"check": args.check, "max_n": args.max_n, "samples": args.samples, "seed": args.seed}, sort_keys=True)
    _emit(args, data, lines, source)
    if res.counterexamples:
        raise SystemExit(1)


def cmd_family(args) -> None:
    g = family(args.kind, args.n)
    out = g.to_text()
    if args.out:
        _write(args.out, out)
        print(f"wrote {args.kind}({args.n}) with {len(g.edges())} edges to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphgroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")

    graph_in = argparse.ArgumentParser(add_help=False, parents=[common])
    graph_in.add_argument("graph", help="graph file, or - for stdin")
    graph_in.add_argument("--format", choices=["edges", "dot"], default="edges")

    sub.add_parser("cdim", parents=[graph_in], help="centraliser dimension").set_defaults(func=cmd_cdim)
    sub.add_parser("chain", parents=[graph_in], help="a longest chain and its generators").set_defaults(
        func=cmd_chain
    )

    q = sub.add_parser("lattice", parents=[graph_in], help="Hasse diagram of the canonical lattice")
    q.add_argument("--dot", metavar="OUT", help="write DOT here instead of stdout")
    q.set_defaults(func=cmd_lattice)

    q = sub.add_parser("delta", parents=[graph_in], help="dimension jump from adding a vertex")
    q.add_argument("--vertex", required=True)
    q.add_argument("--explain", action="store_true", help="show the witnessing parameter systems")
    q.add_argument("--cap", type=int, default=DEFAULT_CAP, help="node cap for the witness search")
    q.set_defaults(func=cmd_delta)

    q = sub.add_parser("word", help="word problem tools")
    q.add_argument("op", choices=["normalize", "equal", "centralizer", "root", "blocks", "cyclic"])
    q.add_argument("graph")
    q.add_argument("words", nargs="+", help='words such as "x1 x3^-1 x1"')
    q.add_argument("--format", choices=["edges", "dot"], default="edges")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_word)

    q = sub.add_parser("scan", parents=[common], help="check a property on many small graphs")
    q.add_argument("--max-n", type=int, required=True)
    q.add_argument("--check", choices=sorted(CHECKS), required=True)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--samples", type=int, default=500, help="random graphs per size above 6")
    q.set_defaults(func=cmd_scan)

    q = sub.add_parser("family", help="write a standard graph")
    q.add_argument("kind", choices=["semibraid", "complete", "empty"])
    q.add_argument("n", type=int)
    q.add_argument("--out")
    q.set_defaults(func=cmd_family)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (GraphError, WordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SystemExit as exc:
        return int(exc.code or 0)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
