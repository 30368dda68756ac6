#!/usr/bin/env python3
"""Run the brute-force idealizer chain against the closed-form chain and time it.

    python3 scripts/oracle_sweep.py --n 3 4 5 --i-max 12 --margin 0
"""

import argparse
import time
from dataclasses import dataclass, field

from idealizer_lab.lie import RingContext
from idealizer_lab.oracle import OracleConfig, compare_chain


@dataclass
class SweepConfig:
    ranks: list = field(default_factory=lambda: [3, 4, 5])
    i_max: int = 12
    margin: int = 0
    pure: bool = True


def sweep(cfg: SweepConfig):
    for n in cfg.ranks:
        t0 = time.perf_counter()
        diffs = compare_chain(RingContext(n), cfg.i_max, OracleConfig(cfg.margin, cfg.pure))
        elapsed = time.perf_counter() - t0
        yield n, [d for d in diffs if not d.equal], elapsed


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--i-max", type=int, default=12)
    ap.add_argument("--margin", type=int, default=0)
    ap.add_argument("--pruned", action="store_true", help="pre-filter candidates by WD and degree")
    args = ap.parse_args(argv)
    cfg = SweepConfig(args.n, args.i_max, args.margin, not args.pruned)
    failed = False
    for n, bad, elapsed in sweep(cfg):
        status = "equal" if not bad else f"{len(bad)} levels differ (first i={bad[0].i})"
        print(f"n={n} levels -1..{cfg.i_max}: {status} [{elapsed:.2f}s]")
        failed |= bool(bad)
    return 2 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
