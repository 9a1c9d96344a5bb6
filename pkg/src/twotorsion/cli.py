"""Command-line driver.

Exit codes: 0 success, 2 verification failure, 3 parse error,
4 resampling budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .census import CensusError, exponent_of_order, run_census
from .coloring import (
    ColoringError,
    RefineConfig,
    SearchFailure,
    block_coloring,
    format_coloring,
    is_proper,
    parse_coloring,
    pattern_complex,
    patterns_distinct,
    refine,
    verify_quotient_torsion,
)
from .construction import TwoGroup, build_telescope, check_bounds, realize_group
from .formats import FormatError, parse_facet_file, write_facets
from .homology import homology
from .pipeline import PipelineError, render_report, run_pipeline

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_SEARCH = 0, 2, 3, 4


class VerificationFailed(Exception):
    pass


def _group(args) -> TwoGroup:
    if args.group and args.partition:
        raise SystemExit("give only one of --group and --partition")
    text = args.group or args.partition
    if not text:
        raise SystemExit("a group is required (--group 2^e1+2^e2 or --partition e1,e2)")
    return TwoGroup.parse(text)


def _emit(text: str, out: Path | None, name: str):
    if out is None:
        sys.stdout.write(text)
    else:
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)


def _write_manifest(args, out: Path | None, started: float, status: int):
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    artifacts = sorted(str(p.relative_to(out)) for p in out.rglob("*")
                       if p.is_file() and p.name != "manifest.txt")
    params = {k: str(v) if isinstance(v, Path) else v
              for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    lines = [
        f"command: {args.command}",
        f"parameters: {params}",
        f"seed: {getattr(args, 'seed', None)}",
        f"version: {__version__}",
        f"inputs: {[str(p) for p in (getattr(args, 'complex', None), getattr(args, 'coloring', None)) if p]}",
        f"outputs: {artifacts}",
        f"exit_code: {status}",
        f"wall_time_s: {time.perf_counter() - started:.3f}",
    ]
    (out / "manifest.txt").write_text("\n".join(lines) + "\n")


def _homology_section(X, dims=None):
    h = homology(X, dims)
    items = [("f_vector", X.f_vector())]
    for k in h.dims:
        items.append((f"H{k}", h.describe(k)))
        items.append((f"betti{k}", h.betti[k]))
        items.append((f"torsion{k}", h.torsion[k]))
    return ("homology", items), h


# -- subcommands --------------------------------------------------------------

def cmd_build(args):
    if args.t is not None:
        T = build_telescope(args.d, args.t)
        X, G = T.complex, TwoGroup((args.t,))
    else:
        G = _group(args)
        X = realize_group(args.d, G).complex
    b = check_bounds(X, args.d, G)
    report = render_report([
        ("build", [("d", args.d), ("group", str(G)), ("vertices", X.num_vertices),
                   ("f_vector", X.f_vector())]),
        ("bounds", [("vertex_bound", b.vertex_bound), ("vertex_bound_ok", b.vertices_ok),
                    ("delta_0_dm1", b.delta), ("delta_bound", b.delta_bound),
                    ("delta_bound_ok", b.delta_ok)]),
    ])
    if args.out is None:
        sys.stdout.write(write_facets(X))
        sys.stderr.write(report)
        return EXIT_OK
    _emit(write_facets(X), args.out, "complex.facets")
    _emit(report, args.out, "report.txt")
    return EXIT_OK


def cmd_homology(args):
    X = parse_facet_file(args.complex)
    section, _ = _homology_section(X)
    _emit(render_report([section]), args.out, "report.txt")
    return EXIT_OK


def cmd_color(args):
    R = realize_group(args.d, _group(args))
    c = block_coloring(R)
    text = format_coloring(c, {"kind": "block", "d": args.d, "palette": len(c.palette)})
    if args.out is not None:
        _emit(write_facets(R.complex), args.out, "complex.facets")
    _emit(text, args.out, "coloring.tsv")
    return EXIT_OK


def cmd_refine(args):
    X = parse_facet_file(args.complex)
    c, _ = parse_coloring(Path(args.coloring).read_text())
    cfg = RefineConfig(seed=args.seed, max_resamples=args.max_resamples, strategy=args.strategy)
    res = refine(X, c, args.L, cfg)
    header = {"kind": "refined", "seed": args.seed, "L": res.L, "n": res.n, "d": res.d,
              "second_palette": res.q, "palette": len(res.coloring.palette),
              "palette_bound": res.palette_bound}
    _emit(format_coloring(res.coloring, header), args.out, "refined.tsv")
    return EXIT_OK


def cmd_quotient(args):
    X = parse_facet_file(args.complex)
    c, _ = parse_coloring(Path(args.coloring).read_text())
    Y = pattern_complex(X, c)
    _emit(write_facets(Y), args.out, "quotient.facets")
    return EXIT_OK


def cmd_verify(args):
    X = parse_facet_file(args.complex)
    c, _ = parse_coloring(Path(args.coloring).read_text())
    d = X.dim
    ok = verify_quotient_torsion(X, c)
    Y = pattern_complex(X, c)
    report = render_report([
        ("verify", [
            ("d", d),
            ("proper", is_proper(X, c)),
            ("all_patterns_distinct", patterns_distinct(X, c, d - 1, "all-pairs")),
            ("torsion_complex", homology(X, [d - 1]).torsion[d - 1]),
            ("torsion_quotient", homology(Y, [d - 1]).torsion[d - 1]),
            ("preserved", ok),
        ]),
    ])
    _emit(report, args.out, "report.txt")
    if not ok:
        raise VerificationFailed("quotient torsion differs")
    return EXIT_OK


def cmd_census(args):
    if (args.e is None) == (args.order is None):
        raise SystemExit("give exactly one of --e and --order")
    e = args.e if args.e is not None else exponent_of_order(args.order)
    rep = run_census(args.d, e, verify=not args.no_verify, workers=args.workers)
    items = [("d", rep.d), ("e", rep.e), ("group_count", rep.group_count),
             ("distinctness_certified", rep.distinctness_certified),
             ("vertex_bound", 2 * (args.d + 1) * e)]
    rows = []
    for i, entry in enumerate(rep.realized):
        rows.append((f"group{i}", f"{entry.group.exponents} vertices={entry.num_vertices} "
                                  f"torsion={entry.torsion}"))
    if args.out is not None and args.write_complexes:
        cdir = args.out / "complexes"
        cdir.mkdir(parents=True, exist_ok=True)
        for i, entry in enumerate(rep.realized):
            name = f"group{i:04d}_" + "-".join(map(str, entry.group.exponents)) + ".facets"
            X = realize_group(args.d, entry.group).complex
            (cdir / name).write_text(write_facets(X))
    _emit(render_report([("census", items), ("groups", rows)]), args.out, "report.txt")
    if args.no_verify:
        return EXIT_OK
    if not rep.distinctness_certified:
        raise VerificationFailed("torsion certificates are not pairwise distinct")
    return EXIT_OK


def cmd_pipeline(args):
    G = _group(args)
    res = run_pipeline(args.d, G, seed=args.seed, max_resamples=args.max_resamples,
                       strategy=args.strategy)
    if args.out is not None:
        _emit(write_facets(res.initial), args.out, "initial.facets")
        _emit(format_coloring(res.coloring, {"kind": "block", "d": args.d}), args.out, "block.tsv")
        header = {"kind": "refined", "seed": args.seed, "L": res.refined.L, "n": res.refined.n,
                  "d": args.d, "palette": len(res.refined.coloring.palette)}
        _emit(format_coloring(res.refined.coloring, header), args.out, "refined.tsv")
        _emit(write_facets(res.quotient), args.out, "quotient.facets")
    _emit(render_report(res.sections), args.out, "report.txt")
    if not res.certified:
        raise VerificationFailed("torsion certificate failed")
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _add_group_flags(p):
    p.add_argument("--group", help="cyclic orders, e.g. 2^3+2^1")
    p.add_argument("--partition", help="exponents, e.g. 3,1")


def _add_refine_flags(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-resamples", type=int, default=100_000)
    p.add_argument("--strategy", choices=["resample-local", "restart-global"],
                   default="resample-local")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twotorsion", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build X(d,t) or the complex for a 2-group")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, help="telescope length (cyclic group Z/2^t)")
    _add_group_flags(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("homology", help="integral homology of a facet file")
    p.add_argument("complex")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("color", help="block coloring of the complex for a 2-group")
    p.add_argument("--d", type=int, required=True)
    _add_group_flags(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("refine", help="refine a coloring so all (d-1)-patterns differ")
    p.add_argument("complex")
    p.add_argument("--coloring", required=True)
    p.add_argument("--L", type=int, default=None)
    _add_refine_flags(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("quotient", help="pattern complex of a colored complex")
    p.add_argument("complex")
    p.add_argument("--coloring", required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("verify", help="check that the quotient keeps the torsion")
    p.add_argument("complex")
    p.add_argument("--coloring", required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="realize every abelian group of order 2^e")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--e", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--write-complexes", action="store_true")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("pipeline", help="build, color, refine, quotient, certify")
    p.add_argument("--d", type=int, required=True)
    _add_group_flags(p)
    _add_refine_flags(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    code = EXIT_VERIFY
    try:
        code = args.func(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        code = EXIT_PARSE
    except SearchFailure as exc:
        print(f"search failure: {exc}", file=sys.stderr)
        code = EXIT_SEARCH
    except PipelineError as exc:
        print(f"pipeline error: {exc}", file=sys.stderr)
        if isinstance(exc.cause, SearchFailure):
            code = EXIT_SEARCH
        elif isinstance(exc.cause, FormatError):
            code = EXIT_PARSE
    except (VerificationFailed, ColoringError, CensusError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_PARSE
    finally:
        _write_manifest(args, getattr(args, "out", None), started, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
