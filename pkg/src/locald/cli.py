"""Command-line entry point.

Exit codes: 0 when the checked property holds (or an attack succeeds), 1 when
it fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .algorithms import default_language, parse_algorithm
from .codes import cert_size, to_hex
from .enumeration import CapExceeded, canonical_form, enumerate_instances
from .formats import FormatError, config_to_json, config_to_text, load_config, save_config
from .gadgets import (
    bound_fns,
    partition_gadget,
    path_and_cycle,
    splice_cycle_from_path,
    transplant_attack,
    tree_pair_gadget,
)
from .graphs import Configuration, GraphError, complete_graph, cycle_graph, path_graph, star_graph
from .languages import BIPARTITE, EQSIZE, FPF, TREE, Language, member, negative_instances, parse_language, positive_instances
from .report import measure_all, render_table
from .runtime import IdStrategy, LocalVerifier, check_decides, check_verifies, run_verifier
from .search import CertSpace, SearchBudgetExceeded, min_cert_size, soundness_search

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("LOCALD_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"LOCALD_SEED must be an integer, got {raw!r}") from None


_NAMED = re.compile(r"^([KPCS])(\d+)$")


def parse_graph(spec: str) -> Configuration:
    """``K3``, ``P5``, ``C4``, ``S3`` (star with 3 leaves) or a configuration file."""
    m = _NAMED.match(spec.strip())
    if m:
        kind, size = m.group(1), int(m.group(2))
        make = {"K": complete_graph, "P": path_graph, "C": cycle_graph, "S": star_graph}[kind]
        return Configuration.plain(make(size))
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"no such graph name or file: {spec}")
    return load_config(path)


def parse_space(spec: str, n: int) -> CertSpace:
    """``bits:K``, ``distance[:M]``, ``color``, ``lift[:M]``, ``treelift[:M]``."""
    name, _, arg = spec.partition(":")
    bound = int(arg) if arg else n
    if name == "bits":
        return CertSpace.all_bitstrings_up_to(bound)
    if name == "distance":
        return CertSpace.distance_labels(bound)
    if name == "color":
        return CertSpace.color_bits()
    if name == "lift":
        return CertSpace.structured_lift(bound)
    if name == "treelift":
        return CertSpace.structured_lift(bound, "tree")
    raise UsageError(f"unknown certificate space {spec!r}")


def default_space(lang: Language, n: int) -> CertSpace | None:
    if lang.tag == TREE:
        return CertSpace.distance_labels(n)
    if lang.tag == FPF:
        return CertSpace.structured_lift(n, "tree")
    if lang.tag == EQSIZE:
        return CertSpace.structured_lift(n)
    if lang.tag == BIPARTITE:
        return CertSpace.color_bits()
    return None


def _ids(args) -> IdStrategy:
    return IdStrategy(kind=args.ids, k=args.k, seed=args.seed)


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def _lang_for(args) -> Language:
    if args.lang:
        return parse_language(args.lang)
    lang = default_language(args.name)
    if lang is None:
        raise UsageError(f"{args.name} has no default language; pass --lang")
    return lang


def _instances(lang: Language, lo: int, hi: int):
    for n in range(lo, hi + 1):
        yield from positive_instances(lang, n)
        yield from negative_instances(lang, n)


def cmd_decide(args) -> int:
    alg = parse_algorithm(args.alg)
    args.name = args.alg
    lang = _lang_for(args)
    report = check_decides(alg, lang, _instances(lang, args.min_n, args.max_n), _ids(args))
    _emit({"algorithm": alg.name, "language": lang.cli_name, **report.to_json()}, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    ver = parse_algorithm(args.ver)
    if not isinstance(ver, LocalVerifier):
        raise UsageError(f"{args.ver} is not a verifier")
    args.name = args.ver
    lang = _lang_for(args)
    instances = list(_instances(lang, args.min_n, args.max_n))
    if args.space == "none":
        space = None
    elif args.space:
        space = lambda c: parse_space(args.space, c.n)
    else:
        space = lambda c: default_space(lang, c.n)

    class _PerInstance:
        # resolves the space bound from each instance's size
        def find_fooling(self, v, config, ids):
            s = space(config)
            return None if s is None else s.find_fooling(v, config, ids)

        def describe(self):
            return args.space or "language default"

    report = check_verifies(
        ver, lang, instances, soundness_space=_PerInstance() if space else None, id_strategy=_ids(args)
    )
    _emit({"verifier": ver.name, "language": lang.cli_name, **report.to_json()}, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _write_config(config: Configuration, out: str | None) -> None:
    if out:
        save_config(config, out)
    else:
        sys.stdout.write(config_to_text(config))


def cmd_gadget(args) -> int:
    if args.kind == "pathcycle":
        p, c = path_and_cycle(args.t)
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        save_config(p, out / f"P{p.n}.txt")
        save_config(c, out / f"C{c.n}.txt")
        _emit({"path": str(out / f"P{p.n}.txt"), "cycle": str(out / f"C{c.n}.txt")}, None)
        return EXIT_OK
    if args.kind == "partition":
        g1, g2 = parse_graph(args.g1).graph, parse_graph(args.g2).graph
        config = partition_gadget(g1, args.v1, args.i, g2, args.v2, args.j, args.t)
    elif args.kind == "treepair":
        g1, g2 = parse_graph(args.g1).graph, parse_graph(args.g2).graph
        config = tree_pair_gadget(g1, args.v1, g2, args.v2)
    else:
        raise UsageError(f"unknown gadget {args.kind}")
    _write_config(config, args.out)
    return EXIT_OK


def cmd_fool(args) -> int:
    ver = parse_algorithm(args.ver)
    if not isinstance(ver, LocalVerifier) or ver.prover is None:
        raise UsageError(f"{args.ver} is not a verifier with a prover")
    if args.kind == "splice":
        # long enough that some (2t+1)-window of k-bit certificates repeats
        k = cert_size(ver.prover(Configuration.plain(path_graph(2 * args.t + 3))))
        length = args.length or (4 * args.t + 4) * (2 ** ((k + 1) * (2 * args.t + 1)) + 1)
        path = Configuration.plain(path_graph(length))
        certs = list(ver.prover(path))
        result = splice_cycle_from_path(path, certs, args.t)
        if result is None:
            _emit({"found": False, "pathLength": length}, args.out)
            return EXIT_FAIL
        ids = _ids(args)
        accepted = all(run_verifier(ver, result.graph, i, result.certs).accepted for i in ids.assignments(result.graph.n))
        doc = {
            "found": accepted,
            "pathLength": length,
            "spliceNodes": list(result.splice_nodes),
            "config": config_to_json(result.graph),
            "certs": [to_hex(c) for c in result.certs],
            "member": member(Language(TREE), result.graph),
        }
        _emit(doc, args.out)
        return EXIT_OK if accepted else EXIT_FAIL
    if args.kind == "transplant":
        pool = [g for n in range(1, args.pool_max_n + 1) for g in enumerate_instances("connectedGraphs", n)]
        result = transplant_attack(ver, args.t, pool, _ids(args))
        if result is None:
            _emit({"found": False, "poolSize": len(pool)}, args.out)
            return EXIT_FAIL
        doc = {
            "found": True,
            "poolSize": len(pool),
            "sides": list(result.sides),
            "config": config_to_json(result.config),
            "certs": [to_hex(c) for c in result.certs],
            "member": member(Language(EQSIZE), result.config),
        }
        _emit(doc, args.out)
        return EXIT_OK
    raise UsageError(f"unknown attack {args.kind}")


def cmd_search(args) -> int:
    ver = parse_algorithm(args.ver)
    config = parse_graph(args.graph)
    if args.kind == "min-cert":
        size = min_cert_size(ver, config, _ids(args), args.max_bits)
        _emit({"verifier": ver.name, "n": config.n, "minCertSize": size, "maxBits": args.max_bits}, args.out)
        return EXIT_OK if size is not None else EXIT_FAIL
    space = parse_space(args.space or f"bits:{args.max_bits}", config.n)
    found = soundness_search(ver, config, space, _ids(args))
    doc = {
        "verifier": ver.name,
        "n": config.n,
        "space": space.describe(),
        "fooling": None if found is None else [to_hex(c) for c in found],
    }
    _emit(doc, args.out)
    return EXIT_OK if found is None else EXIT_FAIL


def cmd_table(args) -> int:
    text = render_table(measure_all(seed=args.seed), args.format)
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    graphs = list(enumerate_instances(args.kind, args.n, cap=args.cap))
    doc = {"kind": args.kind, "n": args.n, "count": len(graphs)}
    if args.list:
        doc["graphs"] = [canonical_form(g) for g in graphs] if args.kind != "labeledTrees" else [g.edges for g in graphs]
    if args.kind == "labeledTrees":
        doc["cayley"] = bound_fns().cayley(args.n)
    _emit(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="locald", description="Local distributed decision workbench")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_ids=True):
        if with_ids:
            sp.add_argument("--ids", choices=["auto", "all", "sampled"], default="auto")
            sp.add_argument("--k", type=int, default=20, help="sampled assignments per instance")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("decide", help="check a decider against a language")
    sp.add_argument("--alg", required=True)
    sp.add_argument("--lang")
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--max-n", type=int, default=5)
    common(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("verify", help="check completeness and soundness of a verifier")
    sp.add_argument("--ver", required=True)
    sp.add_argument("--lang")
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--space", help="bits:K, distance[:M], color, lift[:M], treelift[:M] or none")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gadget", help="write a lower-bound gadget")
    sp.add_argument("kind", choices=["pathcycle", "partition", "treepair"])
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--g1", default="K2")
    sp.add_argument("--g2", default="K2")
    sp.add_argument("--v1", type=int, default=0)
    sp.add_argument("--v2", type=int, default=0)
    sp.add_argument("--i", type=int, choices=[0, 1], default=0)
    sp.add_argument("--j", type=int, choices=[0, 1], default=1)
    sp.add_argument("--out-dir", default=".")
    common(sp, with_ids=False)
    sp.set_defaults(func=cmd_gadget)

    sp = sub.add_parser("fool", help="run a splice or transplant attack")
    sp.add_argument("kind", choices=["splice", "transplant"])
    sp.add_argument("--ver", required=True)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--length", type=int, default=None, help="path length for splice")
    sp.add_argument("--pool-max-n", type=int, default=5)
    common(sp)
    sp.set_defaults(func=cmd_fool)

    sp = sub.add_parser("search", help="brute-force certificate searches")
    sp.add_argument("kind", choices=["min-cert", "soundness"])
    sp.add_argument("--ver", required=True)
    sp.add_argument("--graph", required=True, help="K3, P5, C4, S3 or a configuration file")
    sp.add_argument("--max-bits", type=int, default=3)
    sp.add_argument("--space")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("table", help="measured certificate sizes")
    sp.add_argument("--format", choices=["text", "csv"], default="text")
    common(sp, with_ids=False)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("enumerate", help="count graphs up to isomorphism")
    sp.add_argument("--kind", choices=["connectedGraphs", "trees", "labeledTrees"], default="connectedGraphs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cap", type=int, default=8)
    sp.add_argument("--list", action="store_true")
    common(sp, with_ids=False)
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except (UsageError, FormatError, GraphError, CapExceeded, SearchBudgetExceeded, ValueError) as exc:
        print(f"locald: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
