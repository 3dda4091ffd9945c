#!/usr/bin/env python3
"""
Run the exhaustive verification at the standard sizes and save a summary.

Checks every triple with |X| <= 4 and |U| <= 4 (both the distributivity
equation and the join identity) and writes data/verification_results.json.
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import argparse
import json

from src.cli import configure_logging
from src.distributivity import DistributivityVerifier


def main():
    parser = argparse.ArgumentParser(description='Exhaustive distributivity verification')
    parser.add_argument('--max-x', type=int, default=4, help='largest |X| (default: 4)')
    parser.add_argument('--max-u', type=int, default=4, help='largest |U| (default: 4)')
    parser.add_argument('-j', '--jobs', type=int, default=4, help='worker processes (default: 4)')
    parser.add_argument('-o', '--output', default='data/verification_results.json',
                        help='summary file (default: data/verification_results.json)')
    args = parser.parse_args()

    configure_logging(verbose=True)

    print("=" * 70)
    print(f"EXHAUSTIVE VERIFICATION  |X| <= {args.max_x}, |U| <= {args.max_u}, jobs = {args.jobs}")
    print("=" * 70)

    verifier = DistributivityVerifier(jobs=args.jobs)
    summary = verifier.verify_all(args.max_x, args.max_u)

    for s in summary.strata:
        print(f"  {s.x_size}x{s.u_size}: {s.triples:>8,} triples, {s.failures} failure(s)")

    print(f"\nTriples checked: {summary.triples_checked:,}")
    print(f"Failures: {summary.failures}")
    print(f"Elapsed: {summary.elapsed:.2f}s")

    with open(args.output, 'w', encoding='utf-8') as f:
        json.dump(summary.to_dict(include_timing=True), f, indent=2)
    print(f"✓ Summary saved to {args.output}")

    return 0 if summary.failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
