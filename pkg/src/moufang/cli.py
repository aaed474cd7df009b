"""Command-line front door: ``derive``, ``check`` and ``algebra``.

Exit codes: 0 pass, 1 identity failure, 2 convention/calibration failure,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from moufang import malcev as mc
from moufang.loopgeom import CalibrationError
from moufang.octonion import derive_structure_constants, format_table
from moufang.sampling import SampleConfig, sample_vectors
from moufang.scalars import EXACT, MODES, format_scalar
from moufang.suites import SUITES, Record, SuiteReport, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_CALIBRATION, EXIT_INPUT = 0, 1, 2, 3


def cmd_derive(output: str | None) -> int:
    C = derive_structure_constants()
    comment = ["octonion multiplication table, row * column (e4 is the doubling unit):"] + format_table()
    text = C.to_json(comment=comment)
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)
        print(f"wrote {len(C.entries())} structure constants to {output}", file=sys.stderr)
    return EXIT_PASS


def load_constants(path: str) -> mc.StructureConstants:
    return mc.StructureConstants.from_json(Path(path).read_text())


def _emit(report: SuiteReport, report_path: str | None):
    if report_path:
        Path(report_path).write_text(report.to_jsonl())
    else:
        sys.stdout.write(report.to_jsonl())
    print(report.human(), file=sys.stderr)


def cmd_check(suite: str, points: int, seed: int, mode: str, input_path: str | None = None,
              report_path: str | None = None, per_point: int = 1) -> int:
    C = load_constants(input_path) if input_path else None
    report = run_suite(suite, points, seed=seed, mode=mode, C=C, per_point=per_point)
    _emit(report, report_path)
    return EXIT_PASS if report.passed else EXIT_FAIL


ALGEBRA_CHECKS = ("maltsev", "sy", "jacobi", "rep")


def algebra_records(C: mc.StructureConstants, checks, seed: int = 0, samples: int = 20, label: str = "algebra"):
    """Exhaustive basis scans of algebra-level identities as report records."""
    records = []

    def rec(identity, found, info=False):
        if found is None:
            return Record(label, identity, None, "0", "info" if info else "pass")
        where, val = found[:-1], found[-1]
        defect = mc.is_zero(val) and 0 or max(abs(c) for c in _flat(val))
        witness = {"basis": [list(w) if isinstance(w, tuple) else w for w in where]}
        return Record(label, identity, None, format_scalar(defect), "info" if info else "fail", None if info else witness)

    for check in checks:
        if check == "maltsev":
            records.append(rec("maltsev", mc.maltsev_scan(C, polarized=True)))
        elif check == "sy":
            records.append(rec("sy", mc.sagle_yamaguti_scan(C)))
        elif check == "jacobi":
            records.append(rec("jacobi", mc.jacobi_scan(C), info=True))
        elif check == "rep":
            cfg = SampleConfig(seed=seed)
            vs = {k: sample_vectors(samples, cfg, "rep-" + k, C.dim) for k in "xyzw"}
            table = mc.ternary_table(C)
            for idx in range(samples):
                val = mc.rep_commutator_defect(C, *(vs[k][idx] for k in "xyzw"), Y=table)
                d = max((abs(c) for c in _flat(val)), default=0)
                wit = {k: [format_scalar(c) for c in vs[k][idx]] for k in "xyzw"} if d else None
                records.append(Record(label, "rep", idx, format_scalar(d), "fail" if d else "pass", wit))
        else:
            raise ValueError(f"unknown algebra check {check!r}")
    return records


def _flat(val):
    for v in val:
        if isinstance(v, tuple):
            yield from _flat(v)
        else:
            yield v


def perturbation_contingency(C: mc.StructureConstants, count: int, seed: int = 0) -> dict:
    """Counts of (Mal'tsev fails, Sagle-Yamaguti fails) over seeded one-entry perturbations."""
    rng = random.Random(f"{seed}:perturb")
    table = {"both": 0, "maltsev_only": 0, "sy_only": 0, "neither": 0}
    for _ in range(count):
        P, _change = mc.perturb(C, rng)
        m = mc.maltsev_scan(P, polarized=True) is not None
        s = mc.sagle_yamaguti_scan(P) is not None
        key = "both" if m and s else "maltsev_only" if m else "sy_only" if s else "neither"
        table[key] += 1
    return table


def cmd_algebra(input_path: str, checks, seed: int = 0, perturb: int = 0, report_path: str | None = None) -> int:
    start = time.perf_counter()
    C = load_constants(input_path)
    records = algebra_records(C, checks, seed=seed)
    report = SuiteReport("algebra", C.mode, seed, len(records), records, 0, time.perf_counter() - start)
    _emit(report, report_path)
    if perturb:
        table = perturbation_contingency(C, perturb, seed)
        print("perturbation contingency (maltsev fails, sy fails): " + json.dumps(table, sort_keys=True),
              file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moufang", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    d = sub.add_parser("derive", help="write the octonion-loop structure constants as JSON")
    d.add_argument("--output", "-o", default=None, help="output path (default: stdout)")

    c = sub.add_parser("check", help="run identity suites at seeded sample points")
    c.add_argument("--suite", choices=SUITES + ("all",), default="all")
    c.add_argument("--points", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--mode", choices=MODES, default=EXACT)
    c.add_argument("--input", default=None, help="structure-constants JSON (default: derived)")
    c.add_argument("--report", default=None, help="write JSON-lines records here instead of stdout")
    c.add_argument("--per-point", type=int, default=1, help="argument tuples per point (reductivity, hidden)")

    a = sub.add_parser("algebra", help="exhaustive algebra-level scans of a constants file")
    a.add_argument("--input", required=True)
    a.add_argument("--checks", nargs="+", choices=ALGEBRA_CHECKS, default=list(ALGEBRA_CHECKS))
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--perturb", type=int, default=0, help="also tabulate N seeded perturbations")
    a.add_argument("--report", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "derive":
            return cmd_derive(args.output)
        if args.verb == "check":
            if args.points < 1:
                print("error: --points must be >= 1", file=sys.stderr)
                return EXIT_INPUT
            return cmd_check(args.suite, args.points, args.seed, args.mode, args.input, args.report, args.per_point)
        return cmd_algebra(args.input, args.checks, args.seed, args.perturb, args.report)
    except CalibrationError as exc:
        print(f"calibration error: {exc}", file=sys.stderr)
        return EXIT_CALIBRATION
    except mc.AlgebraFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
