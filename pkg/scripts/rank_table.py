#!/usr/bin/env python3
"""Print layer sizes |L_i| next to c_{r_i - 1} for a range of ranks.

    python3 scripts/rank_table.py --n-min 3 --n-max 7 --periods 3
"""

import argparse
from dataclasses import dataclass

from idealizer_lab.grading import decompose, enumerate_layer, threshold
from idealizer_lab.lie import RingContext
from idealizer_lab.partitions import partition_counts


@dataclass
class TableConfig:
    n_min: int = 3
    n_max: int = 7
    periods: int = 3


def rows(cfg: TableConfig):
    counts = partition_counts(4 * cfg.n_max)
    for n in range(cfg.n_min, cfg.n_max + 1):
        ctx = RingContext(n)
        thr = threshold(n)
        for i in range(0, thr + 1 + cfg.periods * (n - 1)):
            r = decompose(n, i).r
            size = len(enumerate_layer(ctx, i))
            predicted = counts.c_at(r - 1) if i > thr else None
            yield n, i, r, size, predicted


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--periods", type=int, default=3)
    args = ap.parse_args(argv)
    cfg = TableConfig(args.n_min, args.n_max, args.periods)
    print(f"{'n':>3} {'i':>4} {'r':>3} {'|L_i|':>6} {'c_(r-1)':>8}")
    bad = 0
    for n, i, r, size, predicted in rows(cfg):
        mark = "" if predicted is None or predicted == size else "  <-- mismatch"
        bad += bool(mark)
        shown = "-" if predicted is None else str(predicted)
        print(f"{n:>3} {i:>4} {r:>3} {size:>6} {shown:>8}{mark}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
