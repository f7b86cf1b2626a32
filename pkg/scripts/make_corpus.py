"""Regenerate the frozen acceptance corpus under src/desingkit/corpus/."""
import argparse
from pathlib import Path

from desingkit.acceptance import CorpusConfig, build_corpus, write_corpus

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src" / "desingkit" / "corpus"))
args = parser.parse_args()

corpus = build_corpus(CorpusConfig(seed=args.seed))
write_corpus(corpus, args.out, args.seed)
for n, items in sorted(corpus.items()):
    print(f"criterion {n}: {len(items)} instances")
