#!/usr/bin/env python3
"""Hash the JSON report of repeated identical runs.

All hashes must agree; any drift means nondeterminism crept into
sampling, iteration order, or serialization.
"""

import argparse
import hashlib
import sys

from acmsolitons.config import builtin_config, builtin_names
from acmsolitons.suites import build_report, report_json, run_suites


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixture", default="kenmotsu3",
                        choices=builtin_names())
    parser.add_argument("--runs", type=int, default=3)
    args = parser.parse_args()

    digests = []
    for k in range(args.runs):
        config = builtin_config(args.fixture)
        text = report_json(build_report(config, run_suites(config)))
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        digests.append(digest)
        print(f"run {k + 1}: sha256 {digest}")
    if len(set(digests)) == 1:
        print(f"deterministic: {args.runs} identical reports "
              f"({len(text)} bytes)")
        return 0
    print("NONDETERMINISTIC: report bytes differ between runs")
    return 1


if __name__ == "__main__":
    sys.exit(main())
