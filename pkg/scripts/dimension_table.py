"""Tabulate the determinantal dimension counts for every n >= m >= t in a range.

    python scripts/dimension_table.py --max 8 --csv dims.csv
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from invfact import determinantal_dimensions

COLUMNS = ("m", "n", "t", "dim_S", "dim_SU", "orbit_dim", "quotient_dim", "height_PU", "r", "s")


@dataclass
class TableConfig:
    lo: int = 2
    hi: int = 8
    csv_path: str = ""


def rows(cfg: TableConfig):
    for t in range(cfg.lo, cfg.hi + 1):
        for m in range(t, cfg.hi + 1):
            for n in range(m, cfg.hi + 1):
                yield determinantal_dimensions(m, n, t).as_dict()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min", dest="lo", type=int, default=TableConfig.lo)
    ap.add_argument("--max", dest="hi", type=int, default=TableConfig.hi)
    ap.add_argument("--csv", dest="csv_path", default="")
    cfg = TableConfig(**vars(ap.parse_args(argv)))

    table = list(rows(cfg))
    mismatched = [r for r in table if r["r"] != r["s"]]
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=COLUMNS)
            w.writeheader()
            w.writerows(table)
    else:
        print(" ".join(f"{c:>12}" for c in COLUMNS))
        for r in table:
            print(" ".join(f"{r[c]:>12}" for c in COLUMNS))
    print(f"{len(table)} cases, r != s in {len(mismatched)}", file=sys.stderr)
    return 1 if mismatched else 0


if __name__ == "__main__":
    sys.exit(main())
