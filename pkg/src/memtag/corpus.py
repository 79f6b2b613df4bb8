"""Tagged-corpus reading, writing, and train/test partitioning.

Corpus format: one sentence per line, tokens separated by single spaces, word
and tag joined by the last "/" in the token. The last-slash rule makes tokens
with embedded slashes unambiguous: "1/2/CD" is the word "1/2" tagged "CD".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .errors import CorpusParseError, EmptyCorpusError, ParameterError


class Token(NamedTuple):
    word: str
    tag: str


Sentence = list[Token]


@dataclass
class Corpus:
    sentences: list[Sentence] = field(default_factory=list)

    @property
    def tagset(self) -> set[str]:
        return {tok.tag for sent in self.sentences for tok in sent}

    @property
    def token_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    def tokens(self) -> Iterator[Token]:
        for sent in self.sentences:
            yield from sent

    def __len__(self) -> int:
        return len(self.sentences)


def parse_corpus(text: str, fmt: str = "slash") -> Corpus:
    """Parse a tagged corpus from a string.

    Only the "slash" format exists today; the parameter is the hook for
    future formats. Blank lines are skipped; a token without a separator or
    with an empty word/tag half is an error reported with its line number.
    """
    if fmt != "slash":
        raise ParameterError(f"unknown corpus format: {fmt!r}")
    sentences: list[Sentence] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        sent: Sentence = []
        for item in line.split():
            word, sep, tag = item.rpartition("/")
            if not sep:
                raise CorpusParseError(
                    f"token {item!r} has no word/tag separator", line_no)
            if not word or not tag:
                raise CorpusParseError(
                    f"token {item!r} has an empty word or tag", line_no)
            sent.append(Token(word, tag))
        sentences.append(sent)
    if not sentences:
        raise EmptyCorpusError("corpus contains no sentences")
    return Corpus(sentences)


def read_corpus(path: str, fmt: str = "slash") -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh.read(), fmt)


def format_corpus(corpus: Corpus) -> str:
    lines = []
    for sent in corpus.sentences:
        lines.append(" ".join(f"{tok.word}/{tok.tag}" for tok in sent))
    return "\n".join(lines) + "\n"


def write_corpus(corpus: Corpus, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_corpus(corpus))


def split(corpus: Corpus, test_fraction: float, seed: int = 0) -> tuple[Corpus, Corpus]:
    """Random sentence-level split into (train, test).

    Splitting never cuts a sentence in half because tagging context crosses
    token boundaries within a sentence. Deterministic for a fixed seed.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ParameterError(f"test_fraction must be in (0,1), got {test_fraction}")
    n = len(corpus)
    if n < 2:
        raise ParameterError("need at least 2 sentences to split")
    n_test = min(max(int(round(n * test_fraction)), 1), n - 1)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    test_idx = set(order[:n_test])
    train = Corpus([corpus.sentences[i] for i in range(n) if i not in test_idx])
    test = Corpus([corpus.sentences[i] for i in range(n) if i in test_idx])
    return train, test


def cv_folds(corpus: Corpus, k: int, seed: int = 0) -> list[tuple[Corpus, Corpus]]:
    """k cross-validation pairs; the k test folds partition the sentences."""
    n = len(corpus)
    if k < 2:
        raise ParameterError(f"fold count must be >= 2, got {k}")
    if n < k:
        raise ParameterError(f"corpus has {n} sentences, fewer than {k} folds")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    folds = []
    for i in range(k):
        test_idx = set(order[i::k])
        train = Corpus([corpus.sentences[j] for j in range(n) if j not in test_idx])
        test = Corpus([corpus.sentences[j] for j in range(n) if j in test_idx])
        folds.append((train, test))
    return folds
