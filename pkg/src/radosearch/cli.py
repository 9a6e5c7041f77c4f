"""Command-line entry point: ``radosearch <command> [options]``.

Exit codes: 0 success or match, 1 refutation or mismatch, 2 usage error,
3 timeout or inconclusive.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from . import __version__
from .bounds import PreconditionError, bounds_report, trivial_bounds
from .equation import (
    Coloring,
    Equation,
    excellence_equations,
    find_monochromatic,
    format_coloring,
    parse_coeffs,
    parse_coloring,
    regularity_status,
)
from .registry import conjecture_check, known_R
from .repro import SCOPE_ALIASES, SCOPES, reproduce_report
from .search import SearchStatus, max_excellent_length
from .store import CertificateStore, cached_rado_number

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_BUDGET_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*$")


def parse_budget(text: str) -> float:
    m = _BUDGET_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"budget must look like 600, 600s, 10m or 1h, got {text!r}")
    return float(m.group(1)) * {"": 1, "s": 1, "m": 60, "h": 3600}[m.group(2)]


def _coeffs(text: str) -> tuple[int, ...]:
    try:
        coeffs = parse_coeffs(text)
        Equation(coeffs)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return coeffs


def _shifts(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shift list {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", type=Path, help="write output to FILE instead of stdout")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--budget", type=parse_budget, help="time budget, e.g. 600s or 10m")
    common.add_argument("--store", type=Path, help="certificate store directory")
    common.add_argument("-v", "--verbose", action="store_true")

    def eq_args(p, shift=True, colors=True):
        p.add_argument("--coeffs", type=_coeffs, required=True, help="left coefficients, e.g. 1,1")
        if shift:
            p.add_argument("--shift", type=int, default=0)
        if colors:
            p.add_argument("--colors", type=_positive, required=True, help="number of colors t")

    parser = argparse.ArgumentParser(prog="radosearch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"radosearch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common], help="exact Rado number by search")
    eq_args(p)
    p.add_argument("--cap", type=_positive, default=100)
    p.add_argument("--force", action="store_true", help="ignore stored certificates")

    p = sub.add_parser("excellence", parents=[common], help="longest excellent coloring")
    eq_args(p, shift=False)
    p.add_argument("--cap", type=_positive, default=100)

    p = sub.add_parser("verify", parents=[common], help="check a coloring")
    eq_args(p, colors=False)
    p.add_argument("--colors", type=_positive)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coloring", help='colors as text, e.g. "1 2 2 1"')
    src.add_argument("--file", type=Path, help="file holding the coloring text")
    p.add_argument("--excellent", action="store_true", help="check excellence instead of goodness")

    p = sub.add_parser("bounds", parents=[common], help="bounds from R and excellent colorings")
    eq_args(p, colors=False)
    p.add_argument("--colors", type=_positive, default=None)
    p.add_argument("--R", type=_positive, dest="R", help="homogeneous Rado number (else registry)")
    p.add_argument("--excellent-length", type=_positive, help="length of a certified excellent coloring")
    p.add_argument("--search", action="store_true", help="compute missing R / excellent length by search")
    p.add_argument("--cap", type=_positive, default=100)

    p = sub.add_parser("conjecture", parents=[common], help="test the conjectured closed form")
    eq_args(p, shift=False)
    p.add_argument("--shifts", type=_shifts, required=True, help="comma-separated shifts, e.g. -2,-1,1,2")
    p.add_argument("--cap", type=_positive, default=100)

    p = sub.add_parser("reproduce", parents=[common], help="closed forms vs search, as a table")
    p.add_argument("--scope", choices=SCOPES + tuple(SCOPE_ALIASES), default="all")
    p.add_argument("--force", action="store_true", help="ignore stored certificates")
    p.add_argument("--csv", type=Path, help="also export the table as CSV")
    return parser


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2) + "\n" if args.format == "json" else text.rstrip("\n") + "\n"
    if args.out:
        args.out.write_text(out)
    else:
        sys.stdout.write(out)


def _store(args) -> CertificateStore | None:
    return CertificateStore(args.store) if args.store else None


def result_record(coeffs, shift, t, status, value, witness, method, elapsed) -> dict:
    """The stable JSON record for search-like commands."""
    return {
        "coeffs": list(coeffs),
        "shift": shift,
        "colors": t,
        "status": status,
        "value": value,
        "witness": format_coloring(witness),
        "method": method,
        "elapsed_ms": round(elapsed * 1000, 3),
        "engine_version": __version__,
    }


def _status_exit(status: SearchStatus) -> int:
    return EXIT_OK if status is SearchStatus.EXACT else EXIT_INCONCLUSIVE


def cmd_search(args) -> int:
    eq = Equation(args.coeffs, args.shift)
    res = cached_rado_number(eq, args.colors, args.cap, _store(args), force=args.force,
                             threads=args.threads, budget=args.budget)
    rec = result_record(eq.coeffs, eq.shift, args.colors, res.status.value, res.value, res.witness,
                        res.method, res.elapsed)
    text = f"{eq.pretty()}  (t={args.colors}, cap={args.cap})\n{res.status.value} {res.value}\nwitness: {rec['witness']}"
    _emit(args, rec, text)
    return _status_exit(res.status)


def cmd_excellence(args) -> int:
    res = max_excellent_length(args.coeffs, args.colors, args.cap, threads=args.threads, budget=args.budget)
    store = _store(args)
    if store is not None and res.status is SearchStatus.EXACT and len(res.witness):
        from .store import Certificate

        store.store(Certificate("excellent", res.coeffs, 0, args.colors, res.witness.colors, exact=True))
    rec = result_record(args.coeffs, None, args.colors, res.status.value, res.value, res.witness,
                        "excellence-search", res.elapsed)
    s = sum(args.coeffs) - 1
    text = (f"excellent for j = 0..{s}, coeffs {','.join(map(str, args.coeffs))} (t={args.colors}, cap={args.cap})\n"
            f"{res.status.value} {res.value}\nwitness: {rec['witness']}")
    _emit(args, rec, text)
    return _status_exit(res.status)


def cmd_verify(args) -> int:
    text = args.coloring if args.coloring is not None else args.file.read_text()
    col = parse_coloring(text, args.colors)
    eq = Equation(args.coeffs, args.shift)
    if args.excellent:
        targets = excellence_equations(args.coeffs)
    else:
        targets = [eq]
    failure = None
    for target in targets:
        bad = find_monochromatic(target, col)
        if bad is not None:
            failure = (target, bad)
            break
    ok = failure is None
    payload = {
        "coeffs": list(args.coeffs),
        "shift": None if args.excellent else args.shift,
        "colors": col.num_colors,
        "length": len(col),
        "check": "excellent" if args.excellent else "good",
        "good" if not args.excellent else "excellent": ok,
        "monochromatic": None if ok else {"equation": failure[0].pretty(), "tuple": list(failure[1].values)},
        "engine_version": __version__,
    }
    key = "excellent" if args.excellent else "good"
    lines = [f"{key}={'true' if ok else 'false'}"]
    if not ok:
        lines.append(f"monochromatic solution {failure[1].values} to {failure[0].pretty()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_bounds(args) -> int:
    eq = Equation(args.coeffs, args.shift)
    if eq.shift == 0:
        raise PreconditionError("bounds need a non-zero shift")
    status = regularity_status(eq)
    R, n = args.R, args.excellent_length
    notes = []
    if args.colors is not None:
        if R is None:
            hit = known_R(eq.coeffs, args.colors, _store(args))
            if hit is not None:
                R = hit.value
                notes.append(f"R={R} from registry ({hit.source.value})")
        if args.search and R is None:
            res = cached_rado_number(eq.homogeneous(), args.colors, args.cap, _store(args),
                                     threads=args.threads, budget=args.budget)
            if res.status is SearchStatus.EXACT:
                R = res.value
                notes.append(f"R={R} by search")
        if args.search and n is None and R is not None:
            exc = max_excellent_length(eq.coeffs, args.colors, R, threads=args.threads, budget=args.budget)
            if exc.status is SearchStatus.EXACT and exc.value:
                n = exc.value
                notes.append(f"excellent length {n} by search")
    rep = bounds_report(eq, args.colors or 0, R=R, excellent_length=n)
    payload = rep.to_dict()
    payload["regularity"] = status.value
    if eq.shift > 0:
        payload["trivial"] = list(trivial_bounds(eq.coeffs, eq.shift))
    payload["notes"] = notes
    fmt = lambda b: "none" if b is None else f"{b.value} ({b.source})"
    lines = [f"{eq.pretty()}  t={args.colors or 'any'}  [{status.value}]",
             f"lower: {fmt(rep.lower)}", f"upper: {fmt(rep.upper)}"]
    if eq.shift > 0:
        lo, hi = trivial_bounds(eq.coeffs, eq.shift)
        lines.append(f"trivial bounds ({lo},{hi})")
    if rep.closed:
        lines.append(f"exact: r = {rep.lower.value}")
    lines.extend(notes)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_conjecture(args) -> int:
    rep = conjecture_check(args.coeffs, args.colors, args.shifts, args.cap, store=_store(args),
                           threads=args.threads, budget=args.budget)
    payload = {
        "coeffs": list(rep.coeffs),
        "colors": rep.num_colors,
        "cap": rep.cap,
        "verdict": rep.verdict,
        "excellent_length": rep.excellent_length,
        "excellence_matches": rep.excellence_matches,
        "rows": [vars(r) for r in rep.rows],
        "engine_version": __version__,
    }
    lines = [f"coeffs {','.join(map(str, rep.coeffs))}, t={rep.num_colors}: {rep.verdict}"]
    for r in rep.rows:
        lines.append(f"  shift {r.shift:>4}: conjectured {r.conjectured}, search {r.search_status} -> {r.verdict}")
    lines.append(f"  max excellent length {rep.excellent_length} (= R-1: {rep.excellence_matches})")
    _emit(args, payload, "\n".join(lines))
    return {"agree": EXIT_OK, "disagree": EXIT_REFUTED}.get(rep.verdict, EXIT_INCONCLUSIVE)


def cmd_reproduce(args) -> int:
    store = CertificateStore(args.store)  # None falls back to the default location
    report = reproduce_report(args.scope, store=store, force=args.force, threads=args.threads,
                              budget=args.budget)
    if args.csv:
        args.csv.write_text(report.to_csv())
    _emit(args, report.to_dict(), report.to_markdown())
    if not report.ok:
        return EXIT_REFUTED
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK


COMMANDS = {
    "search": cmd_search,
    "excellence": cmd_excellence,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "conjecture": cmd_conjecture,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, PreconditionError, OSError) as exc:
        print(f"radosearch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
