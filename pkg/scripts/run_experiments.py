#!/usr/bin/env python3
"""End-to-end experiment run on a synthetic corpus.

Reproduces the three headline comparisons at desk scale: the classifier
benchmark (accuracy / time / memory per algorithm), the known/unknown
accuracy breakdown of a full tagger, and a cross-validated learning curve.
Writes bench.tsv and curve.tsv next to the chosen output directory.
"""

import argparse
import os
import time

from memtag.corpus import split
from memtag.evaluation import (bench, bench_tsv, curve_tsv, evaluate,
                               learning_curve)
from memtag.synth import SynthConfig, synth_corpus
from memtag.taggen import train


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tokens", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--folds", type=int, default=10)
    ap.add_argument("--outdir", default=".")
    args = ap.parse_args()

    corpus = synth_corpus(SynthConfig(n_tokens=args.tokens, seed=args.seed))
    print(f"corpus: {corpus.token_count} tokens, {len(corpus)} sentences")

    print("\n== algorithm benchmark (known words, gold left context) ==")
    rows = bench(corpus, seed=args.seed)
    table = bench_tsv(rows)
    print(table)
    with open(os.path.join(args.outdir, "bench.tsv"), "w") as fh:
        fh.write(table + "\n")

    print("\n== full tagger on a held-out split ==")
    train_c, test_c = split(corpus, 0.1, seed=args.seed)
    t0 = time.perf_counter()
    model = train(train_c)
    print(f"trained in {time.perf_counter() - t0:.1f}s")
    print(model.summary())
    report = evaluate(model, test_c)
    print(report.table())
    print(f"{report.words_per_second:,.0f} words/s")

    print("\n== learning curve ==")
    step = corpus.token_count // 10
    sizes = [step * i for i in range(1, 11)]
    points = learning_curve(corpus, sizes, k=args.folds, seed=args.seed)
    table = curve_tsv(points)
    print(table)
    with open(os.path.join(args.outdir, "curve.tsv"), "w") as fh:
        fh.write(table + "\n")


if __name__ == "__main__":
    main()
