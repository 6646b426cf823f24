"""Break census for every preset with mu_p, cross-checked by classifying each line.

    python3 scripts/census_sweep.py --limit 5000
"""

import argparse
import time

from llab.errors import KummerHypothesisFails
from llab.kummer import count_by_break, mass_from_rows
from llab.presets import PRESETS, preset


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=5000, help="largest line count to classify exhaustively")
    args = ap.parse_args()
    print(f"{'field':<12} {'e':>2} {'f':>2} {'lines':>6} {'exhaustive':>10} {'mass':>10}  rows")
    for name in PRESETS:
        K = preset(name)
        start = time.perf_counter()
        try:
            census = count_by_break(K, K.p, limit=args.limit)
        except KummerHypothesisFails:
            continue
        mass = mass_from_rows(K.p, K.f, census.rows)
        elapsed = time.perf_counter() - start
        print(
            f"{name:<12} {K.e:>2} {K.f:>2} {census.total:>6} {str(census.exhaustive):>10} "
            f"{str(mass):>10}  {census.rows}  ({elapsed:.2f}s)"
        )


if __name__ == "__main__":
    main()
