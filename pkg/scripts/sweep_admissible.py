"""Verify every admissible (p, n, i) with q below a ceiling.

One CSV row per parameter set: case, number of distinct correlation values,
the verdict, and wall time.
"""

import argparse
import csv
import pathlib
import sys
import time
from dataclasses import dataclass

from niho13.parameters import admissible_triples
from niho13.report import VerifyConfig, verify


@dataclass
class SweepConfig:
    max_q: int = 20_000
    workers: int = 1
    extended: bool = False
    codes: bool = True
    out: str = "results/sweep.csv"


def run(cfg: SweepConfig) -> bool:
    all_ok = True
    with open(cfg.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "n", "i", "q", "d", "case", "distinct", "verdict", "seconds"])
        for ps in admissible_triples(cfg.max_q):
            t0 = time.perf_counter()
            report, ok, _ = verify(ps, VerifyConfig(workers=cfg.workers, codes=cfg.codes, extended=cfg.extended))
            secs = time.perf_counter() - t0
            all_ok &= ok
            row = [ps.p, ps.n, ps.i, ps.q, ps.d, ps.case.value, report["checks"]["distinct_values"]["count"],
                   report["verdict"], f"{secs:.2f}"]
            w.writerow(row)
            print(*row, sep="\t", flush=True)
    return all_ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--max-q", type=int, default=SweepConfig.max_q)
    ap.add_argument("--workers", type=int, default=SweepConfig.workers)
    ap.add_argument("--extended", action="store_true")
    ap.add_argument("--skip-codes", action="store_true")
    ap.add_argument("--out", default=SweepConfig.out)
    args = ap.parse_args()
    pathlib.Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    cfg = SweepConfig(max_q=args.max_q, workers=args.workers, extended=args.extended,
                      codes=not args.skip_codes, out=args.out)
    sys.exit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
