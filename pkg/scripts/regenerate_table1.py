#!/usr/bin/env python3
"""Regenerate the lambda survey over the nilpotent catalog and print it.

Usage: python scripts/regenerate_table1.py [--format md|json|text]
"""
import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from g2forge.survey import build_table, sign_partition  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--format", choices=("md", "json", "text"),
                        default="md", dest="fmt")
    args = parser.parse_args()
    rows = build_table()
    if args.fmt == "json":
        print(json.dumps([{
            "algebra": r.algebra_name,
            "structure": r.structure_equations,
            "lambda": str(r.lambda_poly),
            "sign": r.sign_class,
        } for r in rows], indent=2))
    elif args.fmt == "md":
        print("| algebra | structure equations | lambda | sign |")
        print("|---|---|---|---|")
        for r in rows:
            print("| %s | `%s` | `%s` | %s |" % (
                r.algebra_name, r.structure_equations, r.lambda_poly,
                r.sign_class))
    else:
        width = max(len(str(r.lambda_poly)) for r in rows)
        for r in rows:
            print("%-4s  %-45s  %-*s  %s" % (
                r.algebra_name, r.structure_equations, width,
                r.lambda_poly, r.sign_class))
    counts = sign_partition(rows)
    print()
    print("sign partition:", dict(counts))
    return 0


if __name__ == "__main__":
    sys.exit(main())
