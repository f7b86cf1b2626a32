"""Run the eight acceptance criteria and print one verdict line per criterion.

    python3 scripts/run_acceptance.py [--corpus DIR] [--json results.json]

Without --corpus the bundled frozen corpus is used. A fresh corpus for another
seed can be drawn with scripts/make_corpus.py --seed N --out DIR.
"""
import argparse
import json
import sys

from desingkit.acceptance import load_corpus, run_all

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--corpus", help="directory with criterion*.json files")
parser.add_argument("--json", help="also write the results here")
args = parser.parse_args()

results = run_all(load_corpus(args.corpus))
for r in results:
    print(r.line(), flush=True)
if args.json:
    with open(args.json, "w") as fh:
        json.dump([r.to_json() for r in results], fh, indent=2)
sys.exit(0 if all(r.passed for r in results) else 1)
