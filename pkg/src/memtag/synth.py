"""Synthetic tagged-corpus generator for benchmarks and scaling tests.

Sentences come from a first-order tag chain with concentrated transitions,
so the left context genuinely disambiguates; word types carry Zipfian
frequencies. Ambiguity is concentrated in the high-frequency types (as in
real corpora). Open-class tags have characteristic but partially shared
suffixes, and some types are bare stems, so word form carries useful yet
imperfect signal for unseen words. A small share of tokens are digit
strings tagged CD.
"""

from __future__ import annotations

import random
from bisect import bisect
from dataclasses import dataclass
from itertools import accumulate

from .corpus import Corpus, Sentence, Token

OPEN_TAG_POOL = ("NN", "VB", "JJ", "RB", "NNS", "VBD", "VBZ", "VBG",
                 "NNP", "VBN", "JJR", "RBR", "NNPS", "JJS")
CLOSED_TAG_POOL = ("DT", "IN", "CC", "MD", "TO", "PDT")
SUFFIX_POOL = ("s", "ed", "ing", "ly", "ion", "er", "est", "al",
               "ous", "ment", "ness", "ity", "ate", "ish")


@dataclass(frozen=True)
class SynthConfig:
    n_tokens: int = 100_000
    n_types: int = 1_200
    n_open_tags: int = 7
    n_closed_tags: int = 3
    zipf_exponent: float = 1.25
    ambiguous_head_fraction: float = 0.10
    ambiguous_prob: float = 0.65
    suffix_prob: float = 0.7
    number_prob: float = 0.01
    min_len: int = 4
    max_len: int = 22
    seed: int = 17


class _Sampler:
    """Cumulative-weight sampler over a fixed item list."""

    __slots__ = ("items", "cum", "total")

    def __init__(self, items: list, weights: list[float]):
        self.items = items
        self.cum = list(accumulate(weights))
        self.total = self.cum[-1]

    def draw(self, rng: random.Random):
        return self.items[bisect(self.cum, rng.random() * self.total)]


def synth_corpus(config: SynthConfig = SynthConfig()) -> Corpus:
    rng = random.Random(config.seed)
    open_tags = list(OPEN_TAG_POOL[:config.n_open_tags])
    closed_tags = list(CLOSED_TAG_POOL[:config.n_closed_tags])
    chain_tags = open_tags + closed_tags + ["CD"]

    # 2-3 suffixes per open tag, drawn with replacement across tags so that
    # some suffixes stay ambiguous between tags.
    suffixes = {tag: [rng.choice(SUFFIX_POOL) for _ in range(rng.randint(2, 3))]
                for tag in open_tags}

    # Word types: Zipf weight by rank; head types may be tag-ambiguous.
    head = max(1, int(config.n_types * config.ambiguous_head_fraction))
    forms: set[str] = set()
    type_tags: list[tuple[str, ...]] = []
    type_forms: list[str] = []
    for i in range(config.n_types):
        primary = rng.choice(open_tags if i >= head or rng.random() < 0.5
                             else closed_tags)
        tags = (primary,)
        if i < head and rng.random() < config.ambiguous_prob:
            other = rng.choice([t for t in open_tags + closed_tags
                                if t != primary])
            tags = (primary, other)
        while True:
            stem = "".join(rng.choice("abcdefghijklmnopqrstuvwxyz")
                           for _ in range(rng.randint(2, 6)))
            form = stem
            if primary in suffixes and rng.random() < config.suffix_prob:
                form += rng.choice(suffixes[primary])
            if form not in forms:
                break
        forms.add(form)
        type_tags.append(tags)
        type_forms.append(form)

    # Per-tag emission samplers over the types that can bear the tag.
    by_tag: dict[str, tuple[list[int], list[float]]] = {t: ([], []) for t in chain_tags}
    for i, tags in enumerate(type_tags):
        w = 1.0 / (i + 1) ** config.zipf_exponent
        for tag in tags:
            by_tag[tag][0].append(i)
            by_tag[tag][1].append(w)
    emitters = {}
    for tag, (idxs, ws) in by_tag.items():
        if idxs:
            emitters[tag] = _Sampler(idxs, ws)

    # Concentrated transitions: few successors with skewed weights, so the
    # previous tag is strongly predictive. CD gets a small flat share.
    transitions = {}
    for tag in chain_tags:
        succ = rng.sample(chain_tags, rng.randint(2, 4))
        weights = [2.0 ** -j + 0.02 for j in range(len(succ))]
        if "CD" not in succ:
            succ.append("CD")
            weights.append(0.03)
        transitions[tag] = _Sampler(succ, weights)
    start = _Sampler(chain_tags, [rng.random() + 0.2 for _ in chain_tags])

    sentences: list[Sentence] = []
    total = 0
    while total < config.n_tokens:
        length = rng.randint(config.min_len, config.max_len)
        sent: Sentence = []
        tag = start.draw(rng)
        for _ in range(length):
            if tag == "CD" or rng.random() < config.number_prob:
                sent.append(Token(_number_form(rng), "CD"))
            else:
                idx = emitters[tag].draw(rng)
                sent.append(Token(type_forms[idx], tag))
            tag = transitions[tag].draw(rng)
        sent.append(Token(".", "."))
        sentences.append(sent)
        total += len(sent)
    return Corpus(sentences)


def _number_form(rng: random.Random) -> str:
    n = rng.randint(1, 99999)
    if n >= 1000 and rng.random() < 0.3:
        return f"{n:,}"
    if rng.random() < 0.15:
        return f"{n}.{rng.randint(0, 99)}"
    return str(n)
