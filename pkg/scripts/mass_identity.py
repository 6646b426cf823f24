"""Kummer contribution to the degree-l mass formula over a grid of (e1, f).

For l = 2 every ramified quadratic extension is Kummer and the sum is 2;
for odd l it is the fraction of the mass l carried by Kummer extensions.
"""

import argparse
from fractions import Fraction

from llab.exact_arith import rational_str
from llab.kummer import census_rows, mass_from_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l", type=int, default=2)
    ap.add_argument("--max", type=int, default=6, help="largest e1 and f")
    args = ap.parse_args()
    l = args.l
    header = "e1\\f " + " ".join(f"{f:>14}" for f in range(1, args.max + 1))
    print(header)
    for e1 in range(1, args.max + 1):
        e = e1 * (l - 1)
        values = [mass_from_rows(l, f, census_rows(l, e, f)) for f in range(1, args.max + 1)]
        print(f"{e1:>4} " + " ".join(f"{rational_str(v):>14}" for v in values))
        if l == 2:
            assert all(v == Fraction(2) for v in values)


if __name__ == "__main__":
    main()
