"""Command-line front end.

Exit status: 0 decisive positive, 1 decisive negative, 2 Unknown,
3 usage error, 4 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import checks, serialize
from .dsl import load_file
from .errors import RegulusError
from .recipe import Leaf

USAGE_ERROR, INPUT_ERROR = 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, file=True):
    if file:
        p.add_argument("file", help=".cat input file")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (corpus runs only)")


def _bounds(p):
    p.add_argument("--max-stage", type=int)
    p.add_argument("--max-diagrams", type=int)
    p.add_argument("--cert", help="write the certificate sidecar to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regulus", description="Finite category and free colimit completion checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("validate", help="parse, elaborate and validate a file"))

    p = sub.add_parser("check-cofinal", help="cofinality of a functor")
    _common(p)
    p.add_argument("--functor", required=True)
    p.add_argument("--level", choices=["connected", "weak"], default="connected")

    p = sub.add_parser("check-sifted", help="siftedness of a category")
    _common(p)
    p.add_argument("--category", required=True)
    p.add_argument("--level", choices=["connected", "weak"], default="connected")

    for name, text in (("check-filtered", "filteredness"), ("check-contractible", "weak contractibility ladder"),
                       ("karoubi", "idempotent completion"), ("homology", "nerve homology"),
                       ("components", "connected components and invariants")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--category", required=True)
        if name in ("check-contractible", "homology"):
            p.add_argument("--depth", type=int, default=4)
        if name == "homology":
            p.add_argument("--reduced", action="store_true")
            p.add_argument("--triplets", action="store_true", help="include boundary matrices as triplets")

    p = sub.add_parser("closure", help="regular closure membership of a category")
    _common(p)
    p.add_argument("--category", required=True)
    p.add_argument("--class", dest="shape_class", required=True)
    _bounds(p)

    p = sub.add_parser("membership", help="membership of a presheaf in the free completion")
    _common(p)
    p.add_argument("--presheaf", required=True)
    p.add_argument("--class", dest="shape_class", required=True)
    p.add_argument("--via-elements", action="store_true", help="decide through the category of elements")
    _bounds(p)

    p = sub.add_parser("eval-recipe", help="evaluate a recipe, or re-check a certificate sidecar (.json)")
    _common(p)
    p.add_argument("--recipe")

    p = sub.add_parser("elements", help="category of elements of a presheaf")
    _common(p)
    p.add_argument("--presheaf", required=True)

    p = sub.add_parser("check-preservation", help="colimit preservation, directly and via path categories")
    _common(p)
    p.add_argument("--functor", required=True)
    p.add_argument("--shape", required=True)
    p.add_argument("--max-diagrams", type=int)

    _common(sub.add_parser("corpus", help="run the bundled corpus"), file=False)
    return parser


def _dispatch(args) -> checks.CheckResult:
    cmd = args.command
    if cmd == "eval-recipe" and args.file.endswith(".json"):
        with open(args.file, encoding="utf-8") as fh:
            return checks.eval_certificate(json.load(fh))
    ws = load_file(args.file)
    opts = {}
    for key in ("max_stage", "max_diagrams", "depth"):
        if getattr(args, key, None) is not None:
            opts[key] = getattr(args, key)
    if cmd == "validate":
        return checks.run_check(ws, "validate")
    if cmd == "check-cofinal":
        return checks.run_check(ws, "cofinal", [args.functor], {"level": args.level})
    if cmd == "check-sifted":
        return checks.run_check(ws, "sifted", [args.category], {"level": args.level})
    if cmd == "check-filtered":
        return checks.run_check(ws, "filtered", [args.category])
    if cmd == "check-contractible":
        return checks.run_check(ws, "contractible", [args.category], opts)
    if cmd in ("karoubi", "components"):
        return checks.run_check(ws, cmd, [args.category])
    if cmd == "homology":
        return checks.run_check(ws, "homology", [args.category],
                                {**opts, "reduced": args.reduced, "triplets": args.triplets})
    if cmd == "closure":
        return checks.run_check(ws, "closure", [args.category, args.shape_class], opts)
    if cmd == "membership":
        if args.via_elements:
            opts["via"] = "elements"
        return checks.run_check(ws, "membership", [args.presheaf, args.shape_class], opts)
    if cmd == "eval-recipe":
        name = args.recipe
        if name is None:
            if len(ws.recipes) != 1:
                raise RegulusError("--recipe is required when the file does not hold exactly one recipe")
            name = next(iter(ws.recipes))
        return checks.run_check(ws, "eval-recipe", [name])
    if cmd == "elements":
        return checks.run_check(ws, "elements", [args.presheaf])
    if cmd == "check-preservation":
        return checks.run_check(ws, "preservation", [args.functor, args.shape], opts)
    raise RegulusError(f"unknown command {cmd}")


def _format_value(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(serialize._plain(v), sort_keys=True, ensure_ascii=False)
    if hasattr(v, "value"):
        return str(v.value)
    return str(v)


def _format_certificate(cert: dict) -> list[str]:
    from .serialize import recipe_from_json

    r = recipe_from_json(cert["recipe"])
    objs = cert["category"]["objects"]
    shapes = cert["shape_class"]["shapes"]
    lines = [f"certificate ({len(r)} steps, depth {r.depth()}):"]
    for k, s in enumerate(r.steps):
        if isinstance(s, Leaf):
            lines.append(f"  s{k} = leaf {objs[s.obj]}")
        else:
            J = shapes[s.shape]["objects"]
            nodes = ", ".join(f"{J[j]}=s{n}" for j, n in enumerate(s.nodes))
            lines.append(f"  s{k} = colim shape#{s.shape} [{nodes}]")
    lines.append(f"  root s{r.root}")
    return lines


def render(result: checks.CheckResult) -> str:
    lines = [f"verdict: {result.verdict}"]
    for title, block in (("witness", result.witnesses), ("detail", result.details), ("bound", result.bounds)):
        for k in sorted(block or {}):
            value = block[k]
            if k == "triplets":
                lines.append(f"{title} {k}:")
                lines.extend("  " + t for t in value.splitlines())
            else:
                lines.append(f"{title} {k}: {_format_value(value)}")
    if result.certificate is not None:
        lines.extend(_format_certificate(result.certificate))
    return "\n".join(lines) + "\n"


def _corpus_one(index: int):
    from .corpus import corpus_entries, run_entry

    ws, entry = corpus_entries()[index]
    result, bad = run_entry(ws, entry)
    return entry.id, result.verdict, bad


def _run_corpus(args) -> int:
    from .corpus import manifest

    n = len(manifest())
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_corpus_one, range(n)))
    else:
        from .corpus import run_corpus
        rows = [(e.id, r.verdict, bad) for e, r, bad in run_corpus()]
    failed = [r for r in rows if r[2]]
    if args.json:
        rep = serialize.report("corpus", "Pass" if not failed else "Fail", details={
            "entries": [{"id": i, "verdict": v, "mismatches": b} for i, v, b in rows],
            "passed": len(rows) - len(failed), "failed": len(failed)})
        sys.stdout.write(serialize.dumps(rep) + "\n")
    else:
        for i, v, b in rows:
            sys.stdout.write(f"{'ok  ' if not b else 'FAIL'} {i}: {v}" + (f" ({'; '.join(b)})" if b else "") + "\n")
        sys.stdout.write(f"{len(rows) - len(failed)}/{len(rows)} entries match\n")
    return 0 if not failed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            return _run_corpus(args)
        result = _dispatch(args)
    except (RegulusError, OSError, ValueError, KeyError) as e:
        sys.stderr.write(f"regulus: error: {e}\n")
        return INPUT_ERROR
    if getattr(args, "cert", None) and result.certificate is not None:
        with open(args.cert, "w", encoding="utf-8") as fh:
            fh.write(serialize.dumps(result.certificate) + "\n")
        result.details["certificate_file"] = args.cert
    if args.json:
        sys.stdout.write(serialize.dumps(result.report(args.command)) + "\n")
    else:
        sys.stdout.write(render(result))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
