"""Command-line front end.

    invfact run FILE            answer every query in a problem file
    invfact examples            run the bundled example suite against golden reports
    invfact snf FILE            Smith normal form of an integer matrix
    invfact classgroup FILE     class-group queries only (adds one if the file has none)
    invfact qf FILE             equivariant-fraction queries only

Exit codes: 0 success, 1 malformed input, 2 golden mismatch, 3 inconclusive
results under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional

from .errors import InvfactError, MalformedInput
from .fields import FieldDescriptor
from .intlinalg import IntMatrix, cokernel, smith_normal_form
from .problem import (
    CLASS_GROUP_OPS,
    QF_OPS,
    Query,
    Report,
    Settings,
    first_difference,
    parse_box,
    parse_problem,
    run,
)

EXAMPLES = ("hochster", "anisotropic", "segre", "determinantal")

EXIT_OK, EXIT_MALFORMED, EXIT_GOLDEN, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def data_dir() -> Path:
    return Path(str(resources.files("invfact") / "data"))


@dataclass
class SuiteEntry:
    name: str
    report: Optional[Report]
    mismatch: Optional[str]


def example_suite(golden_dir=None, fixture_dir=None, names=EXAMPLES) -> List[SuiteEntry]:
    """Run the bundled fixtures and compare each report with its golden JSON."""
    fixture_dir = Path(fixture_dir) if fixture_dir else data_dir()
    golden_dir = Path(golden_dir) if golden_dir else data_dir() / "golden"
    out = []
    for name in names:
        path = fixture_dir / f"{name}.problem"
        if not path.exists():
            raise MalformedInput(f"missing fixture {path}")
        report = run(parse_problem(path))
        gpath = golden_dir / f"{name}.json"
        if not gpath.exists():
            out.append(SuiteEntry(name, report, f"missing golden file {gpath}"))
            continue
        expected = json.loads(gpath.read_text())
        out.append(SuiteEntry(name, report, first_difference(expected, report.as_dict())))
    return out


def read_matrix(path) -> IntMatrix:
    rows = []
    for no, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise MalformedInput(f"{path}: line {no}: entries must be integers") from None
    if not rows:
        raise MalformedInput(f"{path}: empty matrix")
    return IntMatrix(rows)


def _settings(args) -> Settings:
    return Settings(
        degree_bound=args.degree_bound,
        box=parse_box(args.box) if args.box else None,
        field=FieldDescriptor.parse(args.field) if args.field else None,
    )


def _emit(report: Report, args):
    if args.json_out:
        Path(args.json_out).write_text(report.to_json(args.timings))
    sys.stdout.write(report.to_json(args.timings) if args.json else report.to_text(args.timings))


def cmd_run(args, ops=None, fallback: Optional[str] = None) -> int:
    settings = _settings(args)
    problem = parse_problem(args.file, settings)
    if fallback and not any(q.op in ops for q in problem.queries):
        problem.queries.append(Query(fallback, (), 0))
    report = run(problem, settings, ops)
    _emit(report, args)
    return report.exit_code(args.strict)


def cmd_examples(args) -> int:
    if args.write_golden:
        target = Path(args.write_golden)
        target.mkdir(parents=True, exist_ok=True)
        for name in EXAMPLES:
            report = run(parse_problem(data_dir() / f"{name}.problem"))
            (target / f"{name}.json").write_text(report.to_json())
        print(f"wrote {len(EXAMPLES)} golden reports to {target}")
        return EXIT_OK
    code = EXIT_OK
    for entry in example_suite(args.golden):
        if entry.mismatch:
            print(f"FAIL {entry.name}: {entry.mismatch}")
            code = EXIT_GOLDEN
        else:
            print(f"ok   {entry.name}")
        if entry.report is not None and entry.report.exit_code() == EXIT_MALFORMED and code == EXIT_OK:
            code = EXIT_MALFORMED
    return code


def cmd_snf(args) -> int:
    A = read_matrix(args.file)
    snf = smith_normal_form(A)
    if args.json:
        print(json.dumps({
            "U": snf.U.tolist(), "D": snf.D.tolist(), "V": snf.V.tolist(),
            "invariant_factors": list(snf.diagonal()), "cokernel": cokernel(A).as_dict(),
        }, indent=2))
        return EXIT_OK
    for name, M in (("U", snf.U), ("D", snf.D), ("V", snf.V)):
        print(f"{name} =")
        for row in M.tolist():
            print("  " + " ".join(f"{x:>4}" for x in row))
    print(f"cokernel = {cokernel(A)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="invfact", description="Class groups and factoriality of invariant rings.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file")
        p.add_argument("--field", help="override the ring's field: Q, Q:closed, Fp:<p>, Fp:<p>:closed, Qsqrt:<t>, Fpsqrt:<p>:<t>")
        p.add_argument("--degree-bound", type=int, default=4, help="degree bound for homogeneous-multiple searches")
        p.add_argument("--box", help="exponent box LO:HI for invariant truncation")
        p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
        p.add_argument("--json-out", metavar="PATH", help="also write the JSON report to PATH")
        p.add_argument("--timings", action="store_true", help="include wall time per query")
        p.add_argument("--strict", action="store_true", help="exit 3 when a query is inconclusive")

    for name, help_ in (("run", "answer every query"), ("classgroup", "class-group queries"), ("qf", "Q_F membership queries")):
        common(sub.add_parser(name, help=help_))
    ex = sub.add_parser("examples", help="run the bundled examples against golden reports")
    ex.add_argument("--golden", metavar="DIR", help="directory holding <name>.json golden reports")
    ex.add_argument("--write-golden", metavar="DIR", help="write fresh golden reports instead of comparing")
    snf = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    snf.add_argument("file")
    snf.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "classgroup":
            return cmd_run(args, CLASS_GROUP_OPS, "class_group")
        if args.command == "qf":
            return cmd_run(args, QF_OPS)
        if args.command == "examples":
            return cmd_examples(args)
        return cmd_snf(args)
    except (InvfactError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
