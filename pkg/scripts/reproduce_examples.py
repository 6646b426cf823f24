"""Replay the three worked examples and print their JSON reports."""

import json
import sys

from llab.cli import EXAMPLES


def main() -> int:
    ok = True
    for name, fn in EXAMPLES.items():
        report = fn()
        ok &= bool(report["match"])
        print(name, json.dumps(report, sort_keys=True))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
