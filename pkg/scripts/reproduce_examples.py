"""Run the bundled example problems and compare them with their golden reports.

    python scripts/reproduce_examples.py            # text reports + verdicts
    python scripts/reproduce_examples.py --json     # one JSON document per example
"""

import argparse
import json
import sys

from invfact.cli import EXAMPLES, example_suite


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", default=list(EXAMPLES), help=f"subset of {', '.join(EXAMPLES)}")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    bad = 0
    for entry in example_suite(names=args.names):
        if args.json:
            print(json.dumps({"name": entry.name, "report": entry.report.as_dict(), "mismatch": entry.mismatch}))
            continue
        print(f"== {entry.name}")
        print(entry.report.to_text())
        print("golden:", "ok" if entry.mismatch is None else f"MISMATCH {entry.mismatch}")
        print()
        bad += entry.mismatch is not None
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
