#!/usr/bin/env python3
"""Generate a synthetic tagged corpus in slash format.

Example:
    python scripts/make_corpus.py --tokens 100000 --seed 3 -o wsj-like.tagged
"""

import argparse

from memtag.corpus import write_corpus
from memtag.synth import SynthConfig, synth_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tokens", type=int, default=100_000)
    ap.add_argument("--types", type=int, default=1_200)
    ap.add_argument("--seed", type=int, default=17)
    ap.add_argument("--zipf", type=float, default=1.25)
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args()

    corpus = synth_corpus(SynthConfig(
        n_tokens=args.tokens, n_types=args.types,
        zipf_exponent=args.zipf, seed=args.seed))
    write_corpus(corpus, args.output)
    print(f"{corpus.token_count} tokens / {len(corpus)} sentences "
          f"-> {args.output}")


if __name__ == "__main__":
    main()
