"""Run the acceptance checks C1..C10 and print one line each.

    python3 scripts/run_acceptance.py            # all
    python3 scripts/run_acceptance.py C1 C3 C5   # subset
    python3 scripts/run_acceptance.py --json out.json
"""

import argparse
import json
import sys

from marginal_resolvent.checks import CHECKS, run_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("keys", nargs="*", help="subset of " + " ".join(k for k, _, _ in CHECKS))
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    results = run_all(args.keys or None)
    for r in results:
        print(r.line(), flush=True)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_dict() for r in results], fh, indent=1)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
