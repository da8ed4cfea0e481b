"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 order cap exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .cayley import CayleyError, build_cayley, complete_cayley
from .classify import predict_stabilizer
from .colour_aut import (
    COLOUR_PERMUTING,
    MODES,
    enumerate_stabilizer,
    full_group,
)
from .decompose import DecompositionError, decompose_colour_permuting
from .groups import (
    GroupMap,
    GroupSpecError,
    OrderCapError,
    build_group,
    centre,
    check_cap,
    enumerate_automorphisms,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _graph(args, G):
    if args.complete == bool(args.set):
        raise UsageError("give exactly one of --complete or --set")
    if args.complete:
        return complete_cayley(G)
    S = {G.element(tok) for tok in args.set.split(",") if tok.strip()}
    return build_cayley(G, S)


def cmd_build(args) -> int:
    G = build_group(args.group)
    info = {
        "name": G.name,
        "order": G.order,
        "identity": G.identity,
        "abelian": G.is_abelian(),
        "centre_order": len(centre(G)),
        "labels": list(G.labels),
    }
    if args.format == "json":
        _emit(_dump(info), args.out)
    else:
        lines = [f"{k}={info[k]}" for k in ("name", "order", "identity", "abelian", "centre_order")]
        lines.append("elements: " + " ".join(f"{x}:{lab}" for x, lab in enumerate(G.labels)))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    G = build_group(args.group)
    report = predict_stabilizer(G).to_json(G)
    code = EXIT_OK
    if args.check:
        brute = enumerate_stabilizer(complete_cayley(G), "colour-preserving")
        pred = predict_stabilizer(G).predicted_stabilizer
        report["agreement"] = brute.images() == pred.images()
        report["brute_force_size"] = len(brute)
        if not report["agreement"]:
            code = EXIT_VERIFY
    if args.format == "json":
        _emit(_dump(report), args.out)
    else:
        keys = ["group", "kind", "stabilizer_size", "cca", "strongly_cca"]
        if args.check:
            keys.append("agreement")
        text = " ".join(
            f"{'stabilizer' if k == 'stabilizer_size' else k}={str(report[k]).lower() if isinstance(report[k], bool) else report[k]}"
            for k in keys
        )
        _emit(text + "\n", args.out)
    return code


def cmd_enum(args) -> int:
    G = build_group(args.group)
    if args.mode == "group":
        result = enumerate_automorphisms(G)
    else:
        X = _graph(args, G)
        result = enumerate_stabilizer(X, args.mode)
        if args.full:
            result = full_group(result)
    if args.format == "json":
        _emit(_dump(result.to_json()), args.out)
    else:
        lines = [f"mode={result.mode} stabilized={str(result.stabilized).lower()} size={len(result)}"]
        lines += [" ".join(map(str, m.image)) for m in result]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    G = build_group(args.group)
    if args.map:
        image = tuple(G.element(tok) for tok in args.map.split(","))
        try:
            maps = [GroupMap(G, image)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        stab = enumerate_stabilizer(complete_cayley(G), COLOUR_PERMUTING)
        maps = list(full_group(stab) if args.full else stab)
    certs = []
    try:
        for phi in maps:
            certs.append(decompose_colour_permuting(G, phi).certificate())
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = all(all(c["checks"].values()) for c in certs)
    if args.format == "json":
        _emit(_dump(certs if len(certs) != 1 else certs[0]), args.out)
    else:
        _emit(f"group={G.name} maps={len(certs)} all_verified={str(ok).lower()}\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    kwargs = {}
    if args.max_order is not None:
        if args.suite in ("lemmas", "classif", "decomposition", "normal-search"):
            kwargs["max_order"] = args.max_order
    if args.group:
        if args.suite != "decomposition":
            raise UsageError("--group applies to the decomposition suite only")
        kwargs["group"] = args.group
    if args.suite == "lemmas":
        kwargs["seed"] = args.seed
    checks = run_suite(args.suite, log=print, **kwargs)
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"first failure: {failed[0].name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_export(args) -> int:
    G = build_group(args.group)
    X = _graph(args, G)
    fmt = args.format
    if fmt == "dot":
        _emit(X.to_dot(), args.out)
    elif fmt == "json":
        _emit(_dump(X.to_json()), args.out)
    else:
        lines = [f"{g} {h} {c}" for g, h, c in X.edges()]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccakit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("text", "json"), default="text"):
        sp.add_argument("group", help='group spec, e.g. "Q8xZ2^2" or "Dic(Z6)"')
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write output to this path")

    def graph_flags(sp):
        sp.add_argument("--complete", action="store_true", help="use S = G minus identity")
        sp.add_argument("--set", help="comma-separated connection set (indices or labels)")

    sp = sub.add_parser("build", help="construct a group and print a summary")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("classify", help="predicted stabilizer and CCA verdict for K_G")
    common(sp)
    sp.add_argument("--check", action="store_true", help="also compare against brute force")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("enum", help="enumerate automorphisms")
    common(sp, default="json")
    graph_flags(sp)
    sp.add_argument("--mode", choices=MODES + ("group",), default="colour-preserving")
    sp.add_argument("--full", action="store_true", help="include all translates, not just the stabilizer")
    sp.set_defaults(func=cmd_enum)

    sp = sub.add_parser("decompose", help="factor colour-permuting automorphisms of K_G")
    common(sp, default="json")
    sp.add_argument("--map", help="comma-separated images of 0..n-1 (default: every stabilizer map)")
    sp.add_argument("--full", action="store_true", help="decompose the whole group, translates included")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--max-order", type=int, dest="max_order")
    sp.add_argument("--group", help="restrict the decomposition suite to one group")
    sp.add_argument("--seed", type=int, default=0, help="seed for random graphs (lemmas)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="write a Cayley graph as DOT or JSON")
    common(sp, formats=("dot", "json", "text"), default="dot")
    graph_flags(sp)
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        check_cap(1)
        return args.func(args)
    except OrderCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GroupSpecError, CayleyError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
