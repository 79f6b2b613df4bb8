"""Acceptance suite: one test per shipped claim, each printing a PASS/FAIL
line (run with -s to watch them). The heavyweight corpora are shared
session fixtures; every tolerance is fixed here, not tuned at run time.
"""

import random
import time

import pytest

from conftest import PV_LEXICON, PV_SENTENCE
from memtag.casebase import CaseBase
from memtag.corpus import parse_corpus
from memtag.evaluation import compare_on_folds, evaluate, learning_curve
from memtag.ib import classify_ib1ig
from memtag.igtree import build, prune, stats
from memtag.interning import Interner
from memtag.metrics import (class_entropy, distance_overlap,
                            distance_weighted, information_gains)
from memtag.taggen import (TaggerConfig, TaggerModel, build_lexicon,
                           extract_known_cases, extract_unknown_cases,
                           lexicon_from_tag_counts, train)


def _report(num, name, fn):
    try:
        fn()
    except BaseException:
        print(f"ACCEPTANCE {num} {name}: FAIL")
        raise
    print(f"ACCEPTANCE {num} {name}: PASS")


@pytest.fixture(scope="module")
def model_100k(synth_100k):
    return train(synth_100k)


# -- 1. oracle equivalence -------------------------------------------------

def _random_case_base(seed):
    """Random symbolic base with duplicates and label noise. Zero-gain
    features would make the weighted distance-0 neighbor set non-singleton,
    so the caller filters on all-positive gains."""
    rng = random.Random(seed)
    while True:
        arity = rng.choice([4, 5, 6])
        values = [rng.randint(2, 6 if arity == 4 else 4) for _ in range(arity)]
        space = 1
        for v in values:
            space *= v
        if space <= 1400:
            break
    n_classes = rng.randint(2, 5)
    n_cases = rng.choice([60, 120, 300, 700, 1500, 3000, 5000])
    interner = Interner()
    classes = [interner.intern(f"C{i}") for i in range(n_classes)]
    for f in range(arity):
        for v in range(max(values)):
            interner.intern(f"v{f}_{v}")
    base = CaseBase(arity, interner)
    coef = [rng.randint(1, 7) for _ in range(arity)]
    for _ in range(n_cases):
        vec = tuple(interner.id_of(f"v{f}_{rng.randrange(values[f])}")
                    for f in range(arity))
        if rng.random() < 0.8:
            cls = classes[sum(c * v for c, v in zip(coef, vec)) % n_classes]
        else:
            cls = rng.choice(classes)
        base.add(vec, cls)
    return base, rng


def test_criterion_1_oracle_equivalence():
    def check():
        t0 = time.perf_counter()
        n_bases = 0
        seed = 0
        while n_bases < 20:
            base, rng = _random_case_base(seed)
            seed += 1
            weights = information_gains(base)
            if min(weights) <= 1e-9:
                continue
            n_bases += 1
            unpruned = build(base, weights)
            tree = prune(unpruned)
            for vec in base.patterns:
                assert tree.classify(vec) == classify_ib1ig(base, weights, vec)
            n_symbols = len(base.interner)
            for _ in range(10_000):
                q = tuple(rng.randrange(n_symbols + 2)
                          for _ in range(base.arity))
                assert unpruned.classify(q) == tree.classify(q)
        elapsed = time.perf_counter() - t0
        assert n_bases >= 20
        assert elapsed < 60.0, f"took {elapsed:.1f}s"

    _report(1, "oracle equivalence", check)


# -- 2. metric identities ----------------------------------------------------

def test_criterion_2_metric_identities():
    def check():
        rng = random.Random(0)
        for _ in range(100_000):
            arity = rng.randint(1, 6)
            x = tuple(rng.randrange(8) for _ in range(arity))
            y = tuple(rng.randrange(8) for _ in range(arity))
            assert distance_weighted(x, y, (1.0,) * arity) == distance_overlap(x, y)
        for ds in range(100):
            interner = Interner()
            classes = [interner.intern(f"C{i}")
                       for i in range(rng.randint(2, 5))]
            base = CaseBase(3, interner)
            const = interner.intern("const")
            for _ in range(rng.randint(2, 80)):
                cls = rng.choice(classes)
                # feature 0 constant, feature 1 mirrors the class exactly,
                # feature 2 random
                base.add((const,
                          interner.intern(f"mirror_{cls}"),
                          interner.intern(f"r{rng.randrange(4)}")),
                         cls)
            gains = information_gains(base)
            assert abs(gains[0]) <= 1e-9
            assert abs(gains[1] - class_entropy(base)) <= 1e-9

    _report(2, "metric identities", check)


# -- 3. case-representation transcription -----------------------------------

def test_criterion_3_table_transcription():
    def check():
        corpus = parse_corpus(PV_SENTENCE)
        interner = Interner()
        lexicon = lexicon_from_tag_counts(PV_LEXICON, interner)

        keep_numbers = TaggerConfig(route_numbers_to_unknown=False)
        known = extract_known_cases(corpus, lexicon, interner, keep_numbers)
        rows = [(interner.texts(v), interner.texts(d)) for v, d in known.items()]
        assert rows[:6] == [
            (("=", "=", "np", "np"), ("np",)),
            (("=", "np", "np", ","), ("np",)),
            (("np", "np", ",", "cd"), (",",)),
            (("np", ",", "cd", "nns"), ("cd",)),
            ((",", "cd", "nns", "jj-np"), ("nns",)),
            (("cd", "nns", "jj-np", ","), ("jj",)),
        ]

        unknown = extract_unknown_cases(corpus, lexicon, interner)
        urows = [(interner.texts(v), interner.texts(d))
                 for v, d in unknown.items()]
        assert urows[:5] == [
            (("P", "=", "np", "r", "r", "e"), ("np",)),
            (("V", "np", ",", "k", "e", "n"), ("np",)),
            (("6", ",", "nns", "=", "6", "1"), ("cd",)),
            (("y", "cd", "jj-np", "a", "r", "s"), ("nns",)),
            (("o", "nns", ",", "o", "l", "d"), ("jj",)),
        ]

    _report(3, "case representation transcription", check)


# -- 4. compression ----------------------------------------------------------

def test_criterion_4_compression(synth_100k):
    def check():
        t0 = time.perf_counter()
        interner = Interner()
        lexicon = build_lexicon(synth_100k, interner)
        base = extract_known_cases(synth_100k, lexicon, interner)
        assert base.total_cases >= 100_000
        tree = prune(build(base, information_gains(base)))
        st = stats(tree)
        elapsed = time.perf_counter() - t0
        ratio = st.serialized_bytes / st.expanded_bytes
        assert ratio <= 0.10, f"tree is {100 * ratio:.1f}% of expanded storage"
        assert elapsed < 120.0, f"took {elapsed:.1f}s"

    _report(4, "compression", check)


# -- 5. speed ----------------------------------------------------------------

def test_criterion_5_speed(synth_100k, model_100k):
    def check():
        interner = model_100k.interner
        config = model_100k.config
        lexicon = model_100k.lexicon
        base = extract_known_cases(synth_100k, lexicon, interner, config)
        assert base.total_cases >= 100_000
        weights = information_gains(base)
        tree = prune(build(base, weights))

        queries = list(base.patterns)
        rng = random.Random(0)
        rng.shuffle(queries)

        brute = queries[:40]
        for q in brute[:5]:
            classify_ib1ig(base, weights, q)
        t0 = time.perf_counter()
        for q in brute:
            classify_ib1ig(base, weights, q)
        brute_qps = len(brute) / (time.perf_counter() - t0)

        fast = (queries * (60_000 // len(queries) + 1))[:60_000]
        for q in fast[:100]:
            tree.classify(q)
        t0 = time.perf_counter()
        for q in fast:
            tree.classify(q)
        tree_qps = len(fast) / (time.perf_counter() - t0)

        ratio = tree_qps / brute_qps
        assert ratio >= 50.0, f"speedup only {ratio:.0f}x"

        report = evaluate(model_100k, synth_100k)
        assert report.words_per_second >= 10_000, (
            f"only {report.words_per_second:,.0f} words/s")

    _report(5, "speed", check)


# -- 6. accuracy parity -------------------------------------------------------

def test_criterion_6_accuracy_parity(synth_100k):
    def check():
        assert synth_100k.token_count >= 100_000
        per_fold = compare_on_folds(synth_100k, k=10, seed=0, jobs=2)
        assert len(per_fold) == 10
        for accs in per_fold:
            gap = abs(accs["igtree"] - accs["ib1ig"])
            assert gap <= 0.010 + 1e-12, f"fold gap {100 * gap:.2f}pp"
        mean_ig = sum(a["igtree"] for a in per_fold) / len(per_fold)
        mean_ib1 = sum(a["ib1"] for a in per_fold) / len(per_fold)
        assert mean_ig >= mean_ib1

    _report(6, "accuracy parity", check)


# -- 7. learning curve --------------------------------------------------------

def test_criterion_7_learning_curve(synth_300k):
    def check():
        assert synth_300k.token_count >= 300_000
        sizes = [30_000 + 27_000 * i for i in range(11)]
        points = learning_curve(synth_300k, sizes, k=10, seed=0, jobs=2)
        assert len(points) == 11
        deltas = [points[i + 1].mean_accuracy - points[i].mean_accuracy
                  for i in range(10)]
        non_decreasing = sum(d >= -1e-12 for d in deltas)
        assert non_decreasing >= 8, f"only {non_decreasing}/10 steps"
        assert points[-1].stddev <= points[0].stddev

    _report(7, "learning curve", check)


# -- 8. training-set consistency ----------------------------------------------

def _consistency(corpus, config=TaggerConfig()):
    model = train(corpus, config)
    interner = model.interner
    known = extract_known_cases(corpus, model.lexicon, interner, config)
    unknown = extract_unknown_cases(corpus, model.lexicon, interner, config)
    checked = failures = 0
    text = interner.text
    for sent in corpus.sentences:
        words = [t.word for t in sent]
        gold = [t.tag for t in sent]
        records = model.tag_records(words, gold_left=gold)
        for i, rec in enumerate(records):
            base = known if rec.route == "known" else unknown
            dist = base.patterns.get(rec.query)
            if dist is not None and len(dist) == 1:
                checked += 1
                if text(rec.prediction) != gold[i]:
                    failures += 1
    return checked, failures


def test_criterion_8_training_set_consistency(f1, synth_medium):
    def check():
        for corpus in (f1, synth_medium):
            checked, failures = _consistency(corpus)
            assert checked > 0
            assert failures == 0, f"{failures}/{checked} unambiguous misses"

    _report(8, "training-set consistency", check)


# -- 9. determinism -------------------------------------------------------------

def test_criterion_9_determinism(f1, synth_medium, tmp_path):
    def check():
        for corpus in (f1, synth_medium):
            blob1 = train(corpus).to_bytes()
            blob2 = train(corpus).to_bytes()
            assert blob1 == blob2
            path = tmp_path / "model.bin"
            with open(path, "wb") as fh:
                fh.write(blob1)
            loaded = TaggerModel.load(str(path))
            assert loaded.to_bytes() == blob1

    _report(9, "determinism", check)
