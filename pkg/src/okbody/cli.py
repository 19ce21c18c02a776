"""Command-line front end.

Subcommands: validate | context | cone | body | h0 | valuations | example |
report.  Exit codes: 0 success, 1 malformed input or unknown example, 2
validation failure, 3 admissible-set cap exceeded, 4 oracle check failure.
OKB_THREADS bounds per-class parallelism; outputs are assembled in class order
either way, so runs are byte-reproducible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import catalog, serialize
from .cone import CapExceeded, global_cone
from .fan import select_flag, validate_fan
from .filtration import check_compatibility, derive_context
from .sections import h0 as h0_of
from .sections import valuation_set

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_CHECK = 4


def _load(path):
    try:
        return serialize.load_problem(path)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)
    except (OSError, serialize.ProblemFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _validated(problem, check_projective=False):
    rep = validate_fan(problem.fan, check_projective=check_projective)
    compat = check_compatibility(problem.fan, problem.bundle)
    return rep, compat


def _context(problem):
    basis = select_flag(problem.fan, problem.tau)
    return basis, derive_context(problem.fan, basis, problem.bundle)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(problem):
    for msg in problem.warnings:
        print(f"warning: {msg}", file=sys.stderr)


def _resolve_classes(args, problem, ctx):
    ncoeffs = ctx.d - ctx.n
    if args.classes:
        try:
            return [serialize.parse_class_spec(s, ncoeffs) for s in args.classes]
        except serialize.ProblemFormatError as exc:
            print(f"error: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_INPUT)
    if problem.classes:
        return problem.classes
    print("error: no classes given (use --class \"m,...;w\" or a 'classes' "
          "array in the problem file)", file=sys.stderr)
    raise SystemExit(EXIT_INPUT)


def _class_map(classes, fn):
    workers = 1
    env = os.environ.get("OKB_THREADS")
    if env:
        try:
            workers = max(1, int(env))
        except ValueError:
            print(f"warning: ignoring OKB_THREADS={env!r}", file=sys.stderr)
    if workers == 1 or len(classes) <= 1:
        return [fn(c) for c in classes]
    with ThreadPoolExecutor(max_workers=min(workers, len(classes))) as pool:
        return list(pool.map(fn, classes))


def cmd_validate(args):
    problem = _load(args.path)
    _warn(problem)
    rep, compat = _validated(problem, check_projective=args.projective)
    lines = [
        f"smooth: {'PASS' if rep.smooth else 'FAIL'}",
        f"complete: {'PASS' if rep.complete else 'FAIL'}",
    ]
    if rep.projective is not None:
        lines.append(f"projective: {'PASS' if rep.projective else 'FAIL'}")
    lines.append(f"compatible: {'PASS' if compat.ok else 'FAIL'}")
    for msg in rep.failures + compat.failures:
        lines.append(f"  - {msg}")
    lines.append("note: indices above are 0-based (add 1 for the usual "
                 "mathematical numbering)")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if rep.ok and compat.ok else EXIT_INVALID


def _gate(args, check_projective=False):
    problem = _load(args.path)
    _warn(problem)
    rep, compat = _validated(problem, check_projective)
    if not (rep.ok and compat.ok):
        for msg in rep.failures + compat.failures:
            print(f"error: {msg}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)
    return problem


def cmd_context(args):
    problem = _gate(args)
    basis, ctx = _context(problem)
    _emit(serialize.dumps(serialize.context_payload(ctx)), args.out)
    return EXIT_OK


def cmd_cone(args):
    problem = _gate(args)
    basis, ctx = _context(problem)
    try:
        gc = global_cone(ctx, cap=args.cap)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    payload = {"context": serialize.context_payload(ctx),
               "cone": serialize.cone_payload(gc)}
    _emit(serialize.dumps(payload), args.out)
    return EXIT_OK


def _body_like(args, with_vertices=False, with_volume=False, with_lattice=False,
               with_check=False, with_sections=False, sections_only=False):
    problem = _gate(args)
    basis, ctx = _context(problem)
    try:
        gc = global_cone(ctx, cap=args.cap)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP, None, None, None
    classes = _resolve_classes(args, problem, ctx)

    def one(cls):
        if sections_only:
            vs = valuation_set(ctx, cls) if cls.twist >= 0 else ()
            return {"class": serialize.class_payload(cls),
                    "h0": h0_of(ctx, cls) if cls.twist >= 0 else 0,
                    "valuations": [list(v) for v in vs]}
        return serialize.body_payload(
            gc, ctx, cls, with_vertices=with_vertices, with_volume=with_volume,
            with_lattice=with_lattice, with_check=with_check,
            with_sections=with_sections)

    blocks = _class_map(classes, one)
    payload = {"context": serialize.context_payload(ctx), "bodies": blocks}
    return EXIT_OK, payload, gc, blocks


def cmd_body(args):
    code, payload, gc, blocks = _body_like(
        args, with_vertices=args.vertices or args.volume,
        with_volume=args.volume, with_lattice=args.lattice,
        with_check=args.check)
    if code != EXIT_OK:
        return code
    if args.off_dir:
        os.makedirs(args.off_dir, exist_ok=True)
        for i, block in enumerate(blocks):
            if "vertices" not in block:
                continue
            text = serialize.off_text(
                [[serialize.Fraction(x) for x in v] for v in block["vertices"]])
            if text:
                with open(os.path.join(args.off_dir, f"body_{i}.off"), "w") as fh:
                    fh.write(text)
    _emit(serialize.dumps(payload), args.out)
    if args.check and any(not b["checks"]["ok"] for b in blocks):
        return EXIT_CHECK
    return EXIT_OK


def cmd_h0(args):
    code, payload, _, _ = _body_like(args, sections_only=True)
    if code != EXIT_OK:
        return code
    for block in payload["bodies"]:
        del block["valuations"]
    _emit(serialize.dumps(payload), args.out)
    return EXIT_OK


def cmd_valuations(args):
    code, payload, _, _ = _body_like(args, sections_only=True)
    if code != EXIT_OK:
        return code
    _emit(serialize.dumps(payload), args.out)
    return EXIT_OK


def cmd_example(args):
    try:
        data = catalog.build(args.name, args.args)
    except KeyError:
        print(f"error: unknown example {args.name!r}; available: "
              f"{', '.join(catalog.NAMES)}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(serialize.dumps(data))
    return EXIT_OK


def cmd_report(args):
    from . import report as rpt

    code, payload, gc, blocks = _body_like(
        args, with_vertices=True, with_volume=True, with_lattice=args.lattice,
        with_check=True, with_sections=True)
    if code != EXIT_OK:
        return code
    os.makedirs(args.out_dir, exist_ok=True)
    rows = []
    for i, block in enumerate(blocks):
        fig_name = f"body_{i}.png"
        verts = [[serialize.Fraction(x) for x in v] for v in block["vertices"]]
        drawn = rpt.render_body(
            verts, os.path.join(args.out_dir, fig_name),
            title=f"class {block['class']['coeffs']};{block['class']['twist']}")
        rows.append({
            "index": i,
            "coeffs": " ".join(str(c) for c in block["class"]["coeffs"]),
            "twist": block["class"]["twist"],
            "h0": block["h0"],
            "valuations": len(block["valuations"]),
            "volume": block["volume"],
            "vol_class": block["vol_class"],
            "is_big": block["is_big"],
            "checks_ok": block["checks"]["ok"],
            "figure": fig_name if drawn else "",
        })
    with open(os.path.join(args.out_dir, "result.json"), "w") as fh:
        fh.write(serialize.dumps(payload))
    rpt.write_summary_csv(os.path.join(args.out_dir, "summary.csv"), rows)
    if any(not b["checks"]["ok"] for b in blocks):
        return EXIT_CHECK
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors share the malformed-input exit code, keeping 2/3/4
        # reserved for validation, cap and check failures
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="okb",
        description="Exact Okounkov bodies of projectivized rank-two toric "
                    "vector bundles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, classes=True):
        p.add_argument("path", help="problem JSON file")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--cap", type=int, default=100_000,
                       help="hard cap on the number of admissible C-sets")
        if classes:
            p.add_argument("--class", dest="classes", action="append",
                           metavar="M;W",
                           help='class as "m_{n+1},...,m_d;w" (repeatable; '
                                "coefficients refer to rays in flag order)")

    p = sub.add_parser("validate", help="validate fan and filtration data")
    p.add_argument("path")
    p.add_argument("--out")
    p.add_argument("--projective", action="store_true",
                   help="also certify projectivity (strictly convex support "
                        "function), off by default")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("context", help="derived flag context")
    add_common(p, classes=False)
    p.set_defaults(fn=cmd_context)

    p = sub.add_parser("cone", help="global cone inequalities with provenance")
    add_common(p, classes=False)
    p.set_defaults(fn=cmd_cone)

    p = sub.add_parser("body", help="per-class fiber bodies")
    add_common(p)
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--volume", action="store_true")
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--check", action="store_true",
                   help="run the full oracle comparison (exit 4 on failure)")
    p.add_argument("--off-dir", help="also export 3-d bodies as OFF files here")
    p.set_defaults(fn=cmd_body)

    p = sub.add_parser("h0", help="section-space dimensions per class")
    add_common(p)
    p.set_defaults(fn=cmd_h0)

    p = sub.add_parser("valuations", help="valuation vectors per class")
    add_common(p)
    p.set_defaults(fn=cmd_valuations)

    p = sub.add_parser("example", help="emit a builtin problem file")
    p.add_argument("name")
    p.add_argument("args", nargs="*", type=int)
    p.set_defaults(fn=cmd_example)

    p = sub.add_parser("report",
                       help="full results with figures and a CSV summary")
    add_common(p)
    p.add_argument("--lattice", action="store_true")
    p.add_argument("out_dir", help="output directory")
    p.set_defaults(fn=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
