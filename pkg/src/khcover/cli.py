"""Command line front end.

One subcommand per pipeline stage: homology tables (kh), correction terms
(dinv), the determinant versus rank report (bounds), quasi-alternating
certificates (qa), filtration pages (ss) and plain determinants (det).
Inputs are PD code files; a directory stands for all *.pd files inside it,
in sorted order.  Every output carries the conventions version so tables
computed under different sign choices are never silently compared.

Exit codes: 0 success, 2 unreadable or invalid input, 3 budget exceeded,
4 alternating-only command on a non-alternating diagram.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .conventions import CONVENTIONS_VERSION
from .diagram import LinkDiagram, mirror, parse_pd
from .dinv import d_table
from .errors import BudgetExceeded, KhcoverError, NotAlternating
from .goeritz import black_graph, build_lattice, goeritz_determinant
from .homalg import flatten_cube, spectral_pages
from .khovanov import DEFAULT_BUDGET_MB, assemble, graded_euler, homology
from .quasialt import QACertificate, qa_certify

__all__ = ["main"]


def _budget_mb() -> int:
    raw = os.environ.get("KHCOVER_BUDGET_MB")
    if raw is None:
        return DEFAULT_BUDGET_MB
    try:
        mb = int(raw)
    except ValueError:
        raise KhcoverError("KHCOVER_BUDGET_MB must be an integer, got %r" % raw)
    if mb <= 0:
        raise KhcoverError("KHCOVER_BUDGET_MB must be positive")
    return mb


def _parse_budget(text: str) -> int:
    """Node budget for certificate searches.

    A plain integer counts search nodes.  A trailing 's' reads as seconds
    and is charged at a nominal thousand nodes per second, which keeps
    batch outputs machine-independent.
    """
    if text.endswith("s"):
        return 1000 * int(text[:-1])
    return int(text)


def _expand(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found = sorted(p.glob("*.pd"))
            if not found:
                raise KhcoverError("no .pd files in directory %s" % p)
            files.extend(found)
        else:
            files.append(p)
    return files


def _load(path: Path) -> LinkDiagram:
    try:
        text = path.read_text()
    except OSError as e:
        raise KhcoverError("cannot read %s: %s" % (path, e))
    code = ";".join(
        line.strip() for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    )
    return parse_pd(code, name=path.stem)


def _prepare(path: Path, args) -> LinkDiagram:
    d = _load(path)
    if getattr(args, "mirror", False):
        d = mirror(d)
    if getattr(args, "mark", None) is not None:
        d = d.with_mark(args.mark)
    return d


# Each command maps one input file to a result dict; `table` rows carry the
# flat CSV view of the same result.


def cmd_kh(path: Path, args) -> dict:
    d = _prepare(path, args)
    table = homology(assemble(d, reduced=args.reduced, budget_mb=_budget_mb()))
    return {
        "file": path.name,
        "reduced": args.reduced,
        "total_rank": table.total_rank,
        "euler_poly": str(graded_euler(table)),
        "gradings": [[m, n, r] for (m, n), r in sorted(table.ranks.items())],
        "table": [
            {"file": path.name, "m": m, "n": n, "rank": r}
            for (m, n), r in sorted(table.ranks.items())
        ],
    }


def cmd_det(path: Path, args) -> dict:
    d = _prepare(path, args)
    det = goeritz_determinant(d)
    return {"file": path.name, "det": det, "table": [{"file": path.name, "det": det}]}


def cmd_bounds(path: Path, args) -> dict:
    d = _prepare(path, args)
    det = goeritz_determinant(d)
    kh = homology(assemble(d, reduced=True, budget_mb=_budget_mb()))
    row = {
        "file": path.name,
        "det": det,
        "kh_rank": kh.total_rank,
        "collapsed": det == kh.total_rank,
    }
    return {**row, "table": [row]}


def cmd_dinv(path: Path, args) -> dict:
    d = _prepare(path, args)
    lattice = build_lattice(black_graph(d))
    dt = d_table(lattice.q, threads=args.threads)
    return {
        "file": path.name,
        **dt.to_json_dict(),
        "table": [
            {"file": path.name, "label": ":".join(map(str, c.label)), "d": str(c.d)}
            for c in dt.classes
        ],
    }


def cmd_qa(path: Path, args) -> dict:
    d = _prepare(path, args)
    result = qa_certify(d, budget=args.budget)
    if isinstance(result, QACertificate):
        kids = [c.det for c in result.children] if result.children else []
        row = {
            "file": path.name,
            "result": "certificate",
            "det": result.det,
            "crossing": result.crossing,
            "child_dets": ":".join(map(str, kids)),
        }
        return {**row, "certificate": result.to_json_dict(),
                "rendered": result.render(), "table": [row]}
    row = {
        "file": path.name,
        "result": "unknown",
        "reason": result.reason,
        "explored": result.explored,
    }
    return {**row, "table": [row]}


def cmd_ss(path: Path, args) -> dict:
    d = _prepare(path, args)
    fc = flatten_cube(assemble(d, reduced=args.reduced, budget_mb=_budget_mb()))
    pages = spectral_pages(fc)
    return {
        "file": path.name,
        "reduced": args.reduced,
        **pages.to_json_dict(),
        "table": [
            {"file": path.name, "r": r + 1, "level": lv, "rank": rank}
            for r, p in enumerate(pages.pages)
            for lv, rank in enumerate(p)
        ],
    }


_COMMANDS = {
    "kh": cmd_kh,
    "dinv": cmd_dinv,
    "bounds": cmd_bounds,
    "qa": cmd_qa,
    "ss": cmd_ss,
    "det": cmd_det,
}


def _render_text(command: str, results: list[dict], out) -> None:
    print("# khcover %s, conventions %s" % (command, CONVENTIONS_VERSION), file=out)
    for r in results:
        if command == "kh":
            print(
                "%s: %s total rank %d, euler %s"
                % (r["file"], "reduced" if r["reduced"] else "unreduced",
                   r["total_rank"], r["euler_poly"]),
                file=out,
            )
            for m, n, rank in r["gradings"]:
                print("  m=%d n=%d rank=%d" % (m, n, rank), file=out)
        elif command == "det":
            print("%s: det %d" % (r["file"], r["det"]), file=out)
        elif command == "bounds":
            print(
                "%s: det %d <= kh_rank %d%s"
                % (r["file"], r["det"], r["kh_rank"],
                   " (collapsed)" if r["collapsed"] else ""),
                file=out,
            )
        elif command == "dinv":
            print(
                "%s: det %d, factors %s"
                % (r["file"], r["det"], r["factors"]),
                file=out,
            )
            for c in r["classes"]:
                print("  %s: d = %s" % (c["label"], c["d"]), file=out)
        elif command == "qa":
            if r["result"] == "certificate":
                print("%s: quasi-alternating" % r["file"], file=out)
                for line in r["rendered"].splitlines():
                    print("  " + line, file=out)
            else:
                print(
                    "%s: unknown (%s; %d nodes explored)"
                    % (r["file"], r["reason"], r["explored"]),
                    file=out,
                )
        elif command == "ss":
            print(
                "%s: stable page %d, total rank %d"
                % (r["file"], r["stable_page"], r["total_homology_rank"]),
                file=out,
            )
            for p in r["pages"]:
                print("  r=%d ranks %s" % (p["r"], p["ranks_by_level"]), file=out)


def _render_csv(results: list[dict], out) -> None:
    rows = [row for r in results for row in r["table"]]
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    fields.append("conventions_version")
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row, "conventions_version": CONVENTIONS_VERSION})


def _render_json(command: str, results: list[dict], out) -> None:
    slim = [{k: v for k, v in r.items() if k not in ("table", "rendered")} for r in results]
    json.dump(
        {
            "command": command,
            "conventions_version": CONVENTIONS_VERSION,
            "results": slim,
        },
        out,
        indent=2,
    )
    out.write("\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khcover",
        description="Link homology and branched double cover invariants over F2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "kh": "homology table and graded Euler polynomial",
        "dinv": "correction terms of the double cover (alternating only)",
        "bounds": "determinant versus reduced homology rank report",
        "qa": "search for a quasi-alternating certificate",
        "ss": "filtration spectral pages of the cube complex",
        "det": "determinant from the checkerboard form",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("inputs", nargs="+", metavar="FILE",
                       help="PD code file or directory of .pd files")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--mirror", action="store_true",
                       help="mirror each diagram before computing")
        p.add_argument("--mark", type=int, default=None,
                       help="move the basepoint to this arc")
        if name in ("kh", "ss"):
            group = p.add_mutually_exclusive_group()
            group.add_argument("--reduced", dest="reduced", action="store_true")
            group.add_argument("--unreduced", dest="reduced", action="store_false")
            p.set_defaults(reduced=(name == "kh"))
        if name == "qa":
            p.add_argument("--budget", type=_parse_budget, default=100000,
                           help="search node budget; trailing 's' reads as seconds")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    run = _COMMANDS[args.command]
    try:
        files = _expand(args.inputs)
        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                futures = [pool.submit(run, path, args) for path in files]
                results = [f.result() for f in futures]
        else:
            results = [run(path, args) for path in files]
    except NotAlternating as e:
        print("khcover: %s" % e, file=sys.stderr)
        return 4
    except BudgetExceeded as e:
        print("khcover: %s" % e, file=sys.stderr)
        return 3
    except (KhcoverError, OSError) as e:
        print("khcover: %s" % e, file=sys.stderr)
        return 2
    if args.format == "json":
        _render_json(args.command, results, sys.stdout)
    elif args.format == "csv":
        _render_csv(results, sys.stdout)
    else:
        _render_text(args.command, results, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
