"""Accuracy measurement, cross-validation, learning curves, and benchmarks.

Accuracy is split between known and unknown words by the tagger's own
routing decision. The benchmark harness compares the tree classifier with
the brute-force reference classifiers on one shared train/test split, using
known-word queries built with gold left context, the setting that isolates
classifier quality from error propagation.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from statistics import mean, pstdev

from . import ib
from .casebase import Vector
from .corpus import Corpus, cv_folds, split
from .errors import ParameterError
from .igtree import build, prune, stats
from .interning import Interner
from .metrics import information_gains
from .taggen import (TaggerConfig, TaggerModel, build_lexicon,
                     extract_known_cases, is_number, train)

ALGORITHMS = ("ib1", "ib1ig", "igtree")


@dataclass
class EvalReport:
    known_total: int
    known_correct: int
    unknown_total: int
    unknown_correct: int
    wall_time_s: float
    model_bytes: int

    @property
    def total(self) -> int:
        return self.known_total + self.unknown_total

    @property
    def correct(self) -> int:
        return self.known_correct + self.unknown_correct

    @property
    def accuracy_total(self) -> float:
        return self.correct / self.total if self.total else 1.0

    @property
    def accuracy_known(self) -> float:
        return self.known_correct / self.known_total if self.known_total else 1.0

    @property
    def accuracy_unknown(self) -> float:
        return (self.unknown_correct / self.unknown_total
                if self.unknown_total else 1.0)

    @property
    def unknown_fraction(self) -> float:
        return self.unknown_total / self.total if self.total else 0.0

    @property
    def words_per_second(self) -> float:
        return self.total / max(self.wall_time_s, 1e-9)

    def table(self) -> str:
        rows = [
            ("Known", self.accuracy_known, 1.0 - self.unknown_fraction),
            ("Unknown", self.accuracy_unknown, self.unknown_fraction),
            ("Total", self.accuracy_total, 1.0),
        ]
        lines = [f"{'':<8}{'Accuracy':>10}{'Percentage':>12}"]
        for name, acc, share in rows:
            lines.append(f"{name:<8}{100.0 * acc:>10.1f}{100.0 * share:>12.1f}")
        return "\n".join(lines)

    def tsv(self) -> str:
        lines = ["category\taccuracy\tpercentage"]
        lines.append(f"known\t{self.accuracy_known:.6f}"
                     f"\t{1.0 - self.unknown_fraction:.6f}")
        lines.append(f"unknown\t{self.accuracy_unknown:.6f}"
                     f"\t{self.unknown_fraction:.6f}")
        lines.append(f"total\t{self.accuracy_total:.6f}\t1.000000")
        return "\n".join(lines)


def evaluate(model: TaggerModel, test: Corpus,
             gold_left_context: bool = False) -> EvalReport:
    """Tag `test` and score per token against the gold tags."""
    if not test.sentences:
        raise ParameterError("cannot evaluate on an empty corpus")
    text = model.interner.text
    kt = kc = ut = uc = 0
    wall = 0.0
    for sent in test.sentences:
        words = [tok.word for tok in sent]
        gold = [tok.tag for tok in sent]
        t0 = time.perf_counter()
        records = model.tag_records(words, gold if gold_left_context else None)
        wall += time.perf_counter() - t0
        for rec, gold_tag in zip(records, gold):
            hit = text(rec.prediction) == gold_tag
            if rec.route == "known":
                kt += 1
                kc += hit
            else:
                ut += 1
                uc += hit
    return EvalReport(kt, kc, ut, uc, wall, len(model.to_bytes()))


# -- cross-validation and learning curves ---------------------------------

@dataclass
class CVResult:
    mean: float
    stddev: float
    reports: list[EvalReport]


def _fold_eval(args) -> EvalReport:
    train_c, test_c, config, gold_left = args
    model = train(train_c, config)
    return evaluate(model, test_c, gold_left_context=gold_left)


def _metric(report: EvalReport, metric: str) -> float:
    if metric == "total":
        return report.accuracy_total
    if metric == "known":
        return report.accuracy_known
    if metric == "unknown":
        return report.accuracy_unknown
    raise ParameterError(f"unknown metric {metric!r}")


def cross_validate(corpus: Corpus, k: int = 10, seed: int = 0,
                   config: TaggerConfig = TaggerConfig(),
                   gold_left_context: bool = False, metric: str = "total",
                   jobs: int = 1) -> CVResult:
    """Train and evaluate once per fold; aggregate the chosen accuracy."""
    folds = cv_folds(corpus, k, seed)
    args = [(tr, te, config, gold_left_context) for tr, te in folds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_fold_eval, args))
    else:
        reports = [_fold_eval(a) for a in args]
    values = [_metric(r, metric) for r in reports]
    return CVResult(mean(values), pstdev(values), reports)


@dataclass
class LearningCurvePoint:
    train_size: int
    mean_accuracy: float
    stddev: float


def learning_curve(corpus: Corpus, sizes: list[int], k: int = 10,
                   seed: int = 0, config: TaggerConfig = TaggerConfig(),
                   gold_left_context: bool = False, metric: str = "total",
                   jobs: int = 1) -> list[LearningCurvePoint]:
    """One cross-validated accuracy per dataset size (in tokens).

    Each size takes the corpus's leading sentences up to that many tokens,
    so the full-corpus size reproduces a plain cross-validation run exactly.
    """
    if not sizes:
        raise ParameterError("need at least one size step")
    total = corpus.token_count
    points = []
    for size in sizes:
        if not 0 < size <= total:
            raise ParameterError(
                f"size {size} outside (0, {total}] for this corpus")
        sub: list = []
        tokens = 0
        for sent in corpus.sentences:
            if tokens >= size:
                break
            sub.append(sent)
            tokens += len(sent)
        result = cross_validate(Corpus(sub), k, seed, config,
                                gold_left_context, metric, jobs)
        points.append(LearningCurvePoint(tokens, result.mean, result.stddev))
    return points


def curve_tsv(points: list[LearningCurvePoint]) -> str:
    lines = ["size\tmean\tstddev"]
    for p in points:
        lines.append(f"{p.train_size}\t{p.mean_accuracy:.6f}\t{p.stddev:.6f}")
    return "\n".join(lines)


# -- algorithm comparison (tree vs. brute-force references) ----------------

def known_eval_queries(test: Corpus, lexicon, interner: Interner,
                       config: TaggerConfig) -> list[tuple[Vector, int]]:
    """(query, gold) pairs for every known-word test token, with gold left
    context. Unseen right neighbors take the unknown marker; unseen gold
    tags map to NO_SYMBOL and can simply never be predicted."""
    boundary = interner.boundary
    unk = interner.unknown_mark
    entries = lexicon.entries
    route_numbers = config.route_numbers_to_unknown
    queries = []
    for sent in test.sentences:
        n = len(sent)
        gold = [interner.id_of(tok.tag) for tok in sent]
        amb = []
        for tok in sent:
            entry = entries.get(tok.word)
            if entry is None or (route_numbers and is_number(tok.word)):
                amb.append(None)
            else:
                amb.append(entry.ambiguous_tag)
        for i in range(n):
            if amb[i] is None:
                continue
            if i + 1 == n:
                a = boundary
            else:
                a = amb[i + 1] if amb[i + 1] is not None else unk
            queries.append(((gold[i - 2] if i >= 2 else boundary,
                             gold[i - 1] if i >= 1 else boundary,
                             amb[i], a),
                            gold[i]))
    return queries


def _cached_accuracy(classify, queries: list[tuple[Vector, int]]) -> float:
    """Accuracy of a pure classifier over (query, gold) pairs, classifying
    each distinct query once."""
    counts = Counter(queries)
    preds: dict[Vector, int] = {}
    correct = 0
    total = 0
    for (query, gold), n in counts.items():
        pred = preds.get(query)
        if pred is None:
            pred = preds[query] = classify(query)
        total += n
        if pred == gold:
            correct += n
    return correct / total if total else 1.0


def compare_algorithms(train_c: Corpus, test_c: Corpus,
                       algos: tuple[str, ...] = ALGORITHMS,
                       config: TaggerConfig = TaggerConfig()) -> dict[str, float]:
    """Known-word accuracy of each algorithm on one shared split."""
    for algo in algos:
        if algo not in ALGORITHMS:
            raise ParameterError(f"unknown algorithm {algo!r}")
    interner = Interner()
    lexicon = build_lexicon(train_c, interner, config.threshold)
    base = extract_known_cases(train_c, lexicon, interner, config)
    weights = information_gains(base)
    tree = prune(build(base, weights))
    queries = known_eval_queries(test_c, lexicon, interner, config)
    out = {}
    for algo in algos:
        if algo == "ib1":
            out[algo] = _cached_accuracy(lambda q: ib.classify_ib1(base, q),
                                         queries)
        elif algo == "ib1ig":
            out[algo] = _cached_accuracy(
                lambda q: ib.classify_ib1ig(base, weights, q), queries)
        else:
            out[algo] = _cached_accuracy(tree.classify, queries)
    return out


def _compare_fold(args) -> dict[str, float]:
    train_c, test_c, algos, config = args
    return compare_algorithms(train_c, test_c, algos, config)


def compare_on_folds(corpus: Corpus, k: int = 10, seed: int = 0,
                     algos: tuple[str, ...] = ALGORITHMS,
                     config: TaggerConfig = TaggerConfig(),
                     jobs: int = 1) -> list[dict[str, float]]:
    """compare_algorithms on every cross-validation fold."""
    folds = cv_folds(corpus, k, seed)
    args = [(tr, te, algos, config) for tr, te in folds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_compare_fold, args))
    return [_compare_fold(a) for a in args]


@dataclass
class BenchRow:
    algo: str
    accuracy: float
    train_s: float
    words_per_s: float
    mem_bytes: int


def bench_tsv(rows: list[BenchRow]) -> str:
    lines = ["algo\taccuracy\ttrain_s\twords_per_s\tmem_bytes"]
    for r in rows:
        lines.append(f"{r.algo}\t{r.accuracy:.6f}\t{r.train_s:.3f}"
                     f"\t{r.words_per_s:.0f}\t{r.mem_bytes}")
    return "\n".join(lines)


def gains_tsv(weights) -> str:
    lines = ["feature_index\tgain"]
    for i, g in enumerate(weights):
        lines.append(f"{i}\t{g:.6f}")
    return "\n".join(lines)


def bench(corpus: Corpus, algos: tuple[str, ...] = ALGORITHMS,
          test_fraction: float = 0.1, seed: int = 0,
          config: TaggerConfig = TaggerConfig(),
          brute_sample: int = 100) -> list[BenchRow]:
    """Accuracy, train time, query throughput, and memory per algorithm on
    one split. Brute-force throughput is measured on a query sample after a
    warm-up pass; accuracy always uses the full query set."""
    for algo in algos:
        if algo not in ALGORITHMS:
            raise ParameterError(f"unknown algorithm {algo!r}")
    train_c, test_c = split(corpus, test_fraction, seed)
    rows = []
    for algo in algos:
        t0 = time.perf_counter()
        interner = Interner()
        lexicon = build_lexicon(train_c, interner, config.threshold)
        base = extract_known_cases(train_c, lexicon, interner, config)
        if algo == "ib1":
            classify = lambda q: ib.classify_ib1(base, q)
            mem = base.total_cases * (base.arity + 1) * 4
        elif algo == "ib1ig":
            weights = information_gains(base)
            classify = lambda q: ib.classify_ib1ig(base, weights, q)
            mem = base.total_cases * (base.arity + 1) * 4
        else:
            weights = information_gains(base)
            tree = prune(build(base, weights))
            classify = tree.classify
            mem = stats(tree).serialized_bytes
        train_s = time.perf_counter() - t0

        queries = known_eval_queries(test_c, lexicon, interner, config)
        accuracy = _cached_accuracy(classify, queries)

        sample = [q for q, _ in queries]
        if algo != "igtree":
            sample = sample[:brute_sample]
        for q in sample[:10]:  # warm-up, discarded
            classify(q)
        t0 = time.perf_counter()
        for q in sample:
            classify(q)
        elapsed = max(time.perf_counter() - t0, 1e-9)
        rows.append(BenchRow(algo, accuracy, train_s,
                             len(sample) / elapsed, mem))
    return rows
