"""Run every identity suite in exact and float mode and store the JSON-lines reports."""

import argparse
from pathlib import Path

from moufang.scalars import MODES
from moufang.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--per-point", type=int, default=1)
    ap.add_argument("--out", default="reports")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    verdicts = {}
    for mode in MODES:
        for suite in SUITES:
            report = run_suite(suite, args.points, seed=args.seed, mode=mode, per_point=args.per_point)
            (out / f"{suite}-{mode}-seed{args.seed}.jsonl").write_text(report.to_jsonl())
            verdicts[suite, mode] = report.verdicts()
            print(report.human())
    agree = all(verdicts[s, "exact"] == verdicts[s, "float"] for s in SUITES)
    print(f"exact/float verdicts identical: {agree}")


if __name__ == "__main__":
    main()
