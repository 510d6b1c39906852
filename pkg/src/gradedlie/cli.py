"""Command-line entry point.

Machine output (documents, CSV, JSON-line reports) goes to stdout or --out; the human
summary goes to stderr so pipelines stay clean.  Exit codes: 0 all checks pass, 1 a
check failed, 2 bad input (schema, flags, rank out of range).
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import coordalg, lawcheck, liebuilder
from .extractor import (ExtractionError, FixtureKind, LiePresentation, bc_weight_check, check_presentation,
                        extract_with_report, fixture, isotypic_split, main_assumptions_check,
                        presentation_from_json, presentation_to_json, PRESENTATION_SCHEMA)
from .linalg import LinalgError
from .report import VerificationReport
from .serialize import SchemaError, dumps, loads, write_atomic
from .tensor_homs import MAX_N, reproduce_table, verify_hom_basis

REPORT_SCHEMA = "gradedlie/report/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def workers() -> int:
    raw = os.environ.get("GRADEDLIE_WORKERS", "1")
    try:
        w = int(raw)
    except ValueError:
        raise InputError(f"GRADEDLIE_WORKERS must be an integer, got {raw!r}")
    return max(1, w)


def check_n(n: int, low: int = 2) -> int:
    if not low <= n <= MAX_N:
        raise InputError(f"--n must lie in [{low}, {MAX_N}], got {n}")
    return n


class Output:
    """Collects JSON-line reports for stdout and summary lines for stderr."""

    def __init__(self, command: str):
        self.command = command
        self.ok = True

    def report(self, rep: VerificationReport, **context) -> bool:
        line = {"schema": REPORT_SCHEMA, "command": self.command, **context, "report": rep.to_dict()}
        sys.stdout.write(dumps(line))
        tag = " ".join(f"{k}={v}" for k, v in context.items())
        head = f"{rep.status.upper():4} {rep.law} (checked {rep.total_checked()})"
        summary(f"{head}  {tag}".rstrip())
        for f in rep.failures()[:3]:
            ff = f.first_failure.to_dict()
            summary(f"     {f.law}: witness={ff['witness']} lhs={ff['lhs']} rhs={ff['rhs']}")
        self.ok &= rep.passed
        return rep.passed

    @property
    def code(self) -> int:
        return EXIT_OK if self.ok else EXIT_FAIL


def summary(msg: str) -> None:
    print(msg, file=sys.stderr)


def read_doc(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}")
    return loads(text)


def write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        write_atomic(path, text)


def read_lie(path: str) -> LiePresentation:
    """A Lie presentation, or a built graded Lie algebra viewed as one."""
    doc = read_doc(path)
    if isinstance(doc, dict) and doc.get("schema") == liebuilder.LIE_SCHEMA:
        return liebuilder.presentation_of(liebuilder.from_json(doc))
    if isinstance(doc, dict) and doc.get("schema") == PRESENTATION_SCHEMA:
        return presentation_from_json(doc)
    raise SchemaError(f"expected {PRESENTATION_SCHEMA!r} or {liebuilder.LIE_SCHEMA!r}, "
                      f"got {doc.get('schema') if isinstance(doc, dict) else None!r}")


# ---------------------------------------------------------------- commands

def cmd_tensor_table(args) -> int:
    n = check_n(args.n)
    res = reproduce_table(n, workers())
    write_text(args.out, res.to_csv())
    rep = VerificationReport(f"TensorTable(n={n})")
    rep.checked_count = len(res.cells)
    for x, y, got, want in res.mismatches:
        rep.fail((x.symbol, y.symbol), dict(got), dict(want))
    for e in res.errata_applied:
        rep.notes.append(f"erratum {e['row'].symbol}⊗{e['col'].symbol}: {e['reason']}")
    summary(rep.lines()[0])
    for f in rep.failures():
        summary(f"     witness={f.first_failure.witness}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_hom_check(args) -> int:
    n = check_n(args.n, 4)
    out = Output("hom-check")
    out.report(verify_hom_basis(n), n=n)
    return out.code


def cmd_fixture(args) -> int:
    n = check_n(args.n, 4)
    write_text(args.out, dumps(presentation_to_json(fixture(args.kind, n))))
    return EXIT_OK


def _extract(lie: LiePresentation):
    split = isotypic_split(lie)
    data, probes = extract_with_report(lie, split)
    return split, data, probes


def cmd_extract(args) -> int:
    lie = read_lie(args.inp)
    try:
        _, data, probes = _extract(lie)
    except ExtractionError as exc:
        summary(f"FAIL extract: {exc}")
        return EXIT_FAIL
    summary(probes.lines()[0])
    for f in probes.failures()[:3]:
        summary(f"     {f.law}: witness={f.first_failure.to_dict()['witness']}")
    if not probes.passed:
        return EXIT_FAIL
    write_text(args.out, dumps(coordalg.to_json(data)))
    return EXIT_OK


def cmd_build(args) -> int:
    data = coordalg.from_json(read_doc(args.inp))
    try:
        lie = liebuilder.assemble(data)
    except liebuilder.BuildError as exc:
        summary(f"FAIL build: {exc}")
        return EXIT_FAIL
    write_text(args.out, dumps(liebuilder.to_json(lie)))
    summary(f"PASS build: dim {len(lie.basis)}")
    return EXIT_OK


def parse_laws(text: str):
    if text == "all":
        return "all"
    names = [s.strip() for s in text.split(",") if s.strip()]
    valid = {x.value for x in lawcheck.LawId}
    bad = [s for s in names if s not in valid]
    if bad or not names:
        raise InputError(f"unknown laws {bad}; choose 'all' or a comma list of {sorted(valid)}")
    return names


def cmd_verify_coord(args) -> int:
    laws = parse_laws(args.laws)
    data = coordalg.from_json(read_doc(args.inp))
    out = Output("verify-coord")
    out.report(lawcheck.check_all(data, laws=laws))
    return out.code


def cmd_jacobi(args) -> int:
    doc = read_doc(args.inp)
    out = Output("jacobi")
    if isinstance(doc, dict) and doc.get("schema") == liebuilder.LIE_SCHEMA:
        lie = liebuilder.from_json(doc)
        rep = liebuilder.check_jacobi(lie, args.mode, args.count, args.seed)
    elif isinstance(doc, dict) and doc.get("schema") == PRESENTATION_SCHEMA:
        from .structure import check_jacobi
        rep = check_jacobi(presentation_from_json(doc).struct, args.mode, args.count, args.seed)
    else:
        raise SchemaError(f"expected {PRESENTATION_SCHEMA!r} or {liebuilder.LIE_SCHEMA!r}")
    out.report(rep, mode=args.mode, seed=args.seed)
    return out.code


def cmd_bc_check(args) -> int:
    lie = read_lie(args.inp)
    out = Output("bc-check")
    dirs = ("ahat-to-bc", "bc-to-ahat") if args.direction == "both" else (args.direction,)
    for d in dirs:
        out.report(bc_weight_check(lie, d), direction=d)
    if args.main_assumptions:
        out.report(main_assumptions_check(lie, isotypic_split(lie)))
    return out.code


def cmd_full_suite(args) -> int:
    n = check_n(args.n, 4)
    out = Output("full-suite")
    t0 = time.perf_counter()
    res = reproduce_table(n, workers())
    rep = VerificationReport(f"TensorTable(n={n})", checked_count=len(res.cells))
    for x, y, got, want in res.mismatches:
        rep.fail((x.symbol, y.symbol), dict(got), dict(want))
    out.report(rep, step="tensor-table")
    out.report(verify_hom_basis(n), step="hom-check")
    for kind in FixtureKind:
        lie = fixture(kind, n)
        ctx = {"fixture": kind.value}
        if not out.report(check_presentation(lie), step="presentation", **ctx):
            continue
        split, data, probes = _extract(lie)
        if not out.report(probes, step="extract", **ctx):
            continue
        out.report(lawcheck.check_all(data), step="lawcheck", **ctx)
        try:
            built = liebuilder.assemble(data)
        except liebuilder.BuildError as exc:
            bad = VerificationReport("Build")
            bad.fail(("assemble",), str(exc), "a Lie algebra")
            out.report(bad, step="build", **ctx)
            continue
        out.report(liebuilder.round_trip_check(built, split), step="build", **ctx)
        out.report(liebuilder.check_jacobi(built, "full"), step="jacobi-full", **ctx)
        out.report(liebuilder.check_grading(built), step="grading", **ctx)
        out.report(bc_weight_check(lie, "ahat-to-bc"), step="bc-check", direction="ahat-to-bc", **ctx)
        if lie.bc_cartan:
            out.report(bc_weight_check(lie, "bc-to-ahat"), step="bc-check", direction="bc-to-ahat", **ctx)
        out.report(main_assumptions_check(lie, split), step="main-assumptions", **ctx)
    summary(f"{'PASS' if out.ok else 'FAIL'} full-suite n={n} in {time.perf_counter() - t0:.1f}s")
    return out.code


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedlie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tensor-table", help="truncated tensor product table as CSV")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_tensor_table)

    s = sub.add_parser("hom-check", help="equivariance and dimensions of the Hom-space bases")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_hom_check)

    s = sub.add_parser("fixture", help="emit a concrete Lie algebra presentation")
    s.add_argument("--kind", required=True, choices=[k.value for k in FixtureKind])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_fixture)

    s = sub.add_parser("extract", help="coordinate algebra of a presentation")
    s.add_argument("--in", dest="inp", default="-")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_extract)

    s = sub.add_parser("build", help="assemble a graded Lie algebra from coordinate data")
    s.add_argument("--in", dest="inp", default="-")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("verify-coord", help="check the coordinate-algebra laws")
    s.add_argument("--in", dest="inp", default="-")
    s.add_argument("--laws", default="all")
    s.set_defaults(fn=cmd_verify_coord)

    s = sub.add_parser("jacobi", help="Jacobi identity sweep")
    s.add_argument("--in", dest="inp", default="-")
    s.add_argument("--mode", choices=["full", "sampled"], default="full")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=2000, help="random triples in sampled mode")
    s.set_defaults(fn=cmd_jacobi)

    s = sub.add_parser("bc-check", help="BC_r weight containments")
    s.add_argument("--in", dest="inp", default="-")
    s.add_argument("--direction", choices=["ahat-to-bc", "bc-to-ahat", "both"], default="both")
    s.add_argument("--main-assumptions", action="store_true", help="also check the four vanishing brackets")
    s.set_defaults(fn=cmd_bc_check)

    s = sub.add_parser("full-suite", help="tables, Hom bases and every fixture end to end")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_full_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, SchemaError) as exc:
        summary(f"error: {exc}")
        return EXIT_INPUT
    except (ExtractionError, LinalgError) as exc:
        # the input parses but is not a graded Lie algebra of the expected shape
        summary(f"FAIL {args.command}: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
