"""The tagger generator.

From a tagged corpus, three structures are extracted: a lexicon mapping each
word to its tag frequencies and one (possibly ambiguous) lexicon tag, a
known-word case base, and an unknown-word case base. Each case base is
weighted by information gain and compressed into a trie; the result plus the
shared interner is the tagger model.

Case layouts
    known   (d-2, d-1, f, a+1) -> t   two disambiguated left tags, the focus
                                      word's lexicon tag, the right
                                      neighbor's lexicon tag
    unknown (p, d-1, a+1, s3, s2, s1) -> t   first letter, one disambiguated
                                      left tag, the right neighbor's lexicon
                                      tag, and the last three letters

During tagging the d slots come from the tagger's own earlier output (or
from gold tags when replaying with gold left context), never from the
lexicon. Windows never cross sentence boundaries; missing slots hold "=".
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass, field

from .casebase import CaseBase, majority_class
from .corpus import Corpus
from .errors import ModelFormatError, ParameterError, StructureError
from .igtree import IGTree, build, prune, stats, tree_from_bytes, tree_to_bytes
from .interning import NO_SYMBOL, Interner
from .metrics import FeatureWeights, information_gains

KNOWN_ARITY = 4
UNKNOWN_ARITY = 6

KNOWN_SLOTS = ("d-2", "d-1", "f", "a+1")
UNKNOWN_SLOTS = ("p", "d-1", "a+1", "s-3", "s-2", "s-1")

MAGIC = b"MBT1"
FORMAT_VERSION = 1

# Digits with optional sign, optional 3-digit grouping commas, optional
# decimal fraction: "61", "12,345.6", "-29".
_NUMBER_RE = re.compile(r"[+-]?\d+(?:,\d{3})*(?:\.\d+)?")

# Function-word style tags never enter the unknown-word case base: an unseen
# word is almost never a function word, and function-word cases would crowd
# out the open-class ones. CD stays open so that numerals can be resolved
# through the unknown-word route.
DEFAULT_CLOSED_CLASS_TAGS = frozenset({
    "DT", "PDT", "WDT", "IN", "CC", "TO", "MD", "PRP", "PRP$",
    "WP", "WP$", "POS", "RP", "EX", "UH", "SYM",
})


def is_number(word: str) -> bool:
    return _NUMBER_RE.fullmatch(word) is not None


@dataclass(frozen=True)
class TaggerConfig:
    """Knobs of the generator; everything else is learned from the corpus."""

    threshold: float = 0.10
    closed_class_tags: frozenset[str] | None = None
    route_numbers_to_unknown: bool = True

    def is_open_class(self, tag: str) -> bool:
        if self.closed_class_tags is not None:
            return tag not in self.closed_class_tags
        if not any(ch.isalpha() for ch in tag):
            return False
        return tag.upper() not in DEFAULT_CLOSED_CLASS_TAGS


@dataclass
class LexicalEntry:
    word: str
    tag_counts: dict[int, int]
    surviving_tags: tuple[int, ...]
    ambiguous_tag: int

    @property
    def total(self) -> int:
        return sum(self.tag_counts.values())

    @property
    def is_ambiguous(self) -> bool:
        return len(self.surviving_tags) > 1


@dataclass
class Lexicon:
    entries: dict[str, LexicalEntry] = field(default_factory=dict)
    total_tokens: int = 0

    @property
    def type_count(self) -> int:
        return len(self.entries)

    @property
    def ambiguous_type_count(self) -> int:
        return sum(1 for e in self.entries.values() if e.is_ambiguous)

    @property
    def ambiguous_type_fraction(self) -> float:
        return self.ambiguous_type_count / self.type_count if self.entries else 0.0

    @property
    def ambiguous_token_fraction(self) -> float:
        if not self.total_tokens:
            return 0.0
        amb = sum(e.total for e in self.entries.values() if e.is_ambiguous)
        return amb / self.total_tokens

    def ambiguous_tagset(self) -> set[int]:
        """All lexicon tags plus every base tag seen in training."""
        tags: set[int] = set()
        for entry in self.entries.values():
            tags.update(entry.tag_counts)
            tags.add(entry.ambiguous_tag)
        return tags


def _make_entry(word: str, counts: dict[int, int], interner: Interner,
                threshold: float) -> LexicalEntry:
    total = sum(counts.values())
    keep = [t for t, n in counts.items() if n / total >= threshold]
    top = majority_class(counts, interner)
    if top not in keep:
        # Threshold filtering must never empty an entry.
        keep.append(top)
    keep.sort(key=lambda t: (-counts[t], interner.text(t)))
    amb = interner.intern("-".join(interner.text(t) for t in keep))
    return LexicalEntry(word, counts, tuple(keep), amb)


def build_lexicon(corpus: Corpus, interner: Interner,
                  threshold: float = 0.10) -> Lexicon:
    """Count tags per word type, drop categories below `threshold` of the
    word's tokens (the most frequent one always survives), and synthesize
    one lexicon tag per type by joining the survivors with "-" in
    descending-frequency order."""
    if not corpus.sentences:
        raise ParameterError("cannot build a lexicon from an empty corpus")
    counts: dict[str, dict[int, int]] = {}
    total = 0
    for sent in corpus.sentences:
        for word, tag in sent:
            tid = interner.intern(tag)
            by_tag = counts.get(word)
            if by_tag is None:
                counts[word] = {tid: 1}
            else:
                by_tag[tid] = by_tag.get(tid, 0) + 1
            total += 1
    lexicon = Lexicon(total_tokens=total)
    for word, by_tag in counts.items():
        interner.intern(word)
        lexicon.entries[word] = _make_entry(word, by_tag, interner, threshold)
    return lexicon


def lexicon_from_tag_counts(
        word_tag_counts: dict[str, dict[str, int]], interner: Interner,
        threshold: float = 0.10) -> Lexicon:
    """Build a lexicon from explicit per-word tag counts instead of a corpus
    (for hand-built fixtures and external lexical resources)."""
    lexicon = Lexicon()
    for word, by_tag in word_tag_counts.items():
        counts = {interner.intern(t): n for t, n in by_tag.items()}
        interner.intern(word)
        lexicon.entries[word] = _make_entry(word, counts, interner, threshold)
        lexicon.total_tokens += sum(by_tag.values())
    return lexicon


def extract_known_cases(corpus: Corpus, lexicon: Lexicon, interner: Interner,
                        config: TaggerConfig = TaggerConfig()) -> CaseBase:
    """One (d-2, d-1, f, a+1) -> gold case per training token.

    The d slots take the gold tags of the left neighbors (training stands in
    for earlier tagger decisions), f and a+1 the lexicon tags. Tokens that
    would be routed to the unknown-word base at tagging time (numbers, when
    that routing is on) contribute no case. Every corpus word must be in the
    lexicon.
    """
    base = CaseBase(KNOWN_ARITY, interner)
    boundary = interner.boundary
    entries = lexicon.entries
    skip_numbers = config.route_numbers_to_unknown
    for sent in corpus.sentences:
        n = len(sent)
        gold = [interner.intern(tok.tag) for tok in sent]
        try:
            amb = [entries[tok.word].ambiguous_tag for tok in sent]
        except KeyError as exc:
            raise StructureError(f"word {exc.args[0]!r} not in lexicon") from exc
        for i in range(n):
            if skip_numbers and is_number(sent[i].word):
                continue
            base.add((gold[i - 2] if i >= 2 else boundary,
                      gold[i - 1] if i >= 1 else boundary,
                      amb[i],
                      amb[i + 1] if i + 1 < n else boundary),
                     gold[i])
    return base


def _letter_slots(word: str, interner: Interner, strict: bool) -> tuple[int, int, int, int]:
    """(first, 3rd-last, 2nd-last, last) letter symbols, "=" where the word
    is too short. In strict mode new letters are interned; otherwise unseen
    letters map to NO_SYMBOL."""
    look = interner.intern if strict else interner.id_of
    boundary = interner.boundary
    first = look(word[0])
    s3 = look(word[-3]) if len(word) >= 3 else boundary
    s2 = look(word[-2]) if len(word) >= 2 else boundary
    s1 = look(word[-1])
    return first, s3, s2, s1


def extract_unknown_cases(corpus: Corpus, lexicon: Lexicon, interner: Interner,
                          config: TaggerConfig = TaggerConfig()) -> CaseBase:
    """One (p, d-1, a+1, s3, s2, s1) -> gold case per open-class training
    token. Letters come from the raw form, case-sensitive: the first letter
    carries prefix and capitalization information."""
    base = CaseBase(UNKNOWN_ARITY, interner)
    boundary = interner.boundary
    entries = lexicon.entries
    for sent in corpus.sentences:
        n = len(sent)
        gold = [interner.intern(tok.tag) for tok in sent]
        try:
            amb = [entries[tok.word].ambiguous_tag for tok in sent]
        except KeyError as exc:
            raise StructureError(f"word {exc.args[0]!r} not in lexicon") from exc
        for i in range(n):
            if not config.is_open_class(sent[i].tag):
                continue
            first, s3, s2, s1 = _letter_slots(sent[i].word, interner, strict=True)
            base.add((first,
                      gold[i - 1] if i >= 1 else boundary,
                      amb[i + 1] if i + 1 < n else boundary,
                      s3, s2, s1),
                     gold[i])
    return base


@dataclass
class TokenRecord:
    """What the tagger did for one token: the route it took, the query it
    built, and the class it produced."""

    word: str
    route: str  # "known" | "unknown"
    query: tuple[int, ...]
    prediction: int


@dataclass
class ExplanationStep:
    slot: str
    value: str
    matched: bool
    default: str


@dataclass
class Explanation:
    word: str
    route: str
    prediction: str
    steps: list[ExplanationStep]


class TaggerModel:
    """Lexicon + two tries + weights + config, sharing one interner.

    Immutable after training or loading, so one model can serve concurrent
    tagging calls; the sequential dependency is within a sentence only.
    """

    __slots__ = ("interner", "lexicon", "config", "known_weights",
                 "unknown_weights", "known_tree", "unknown_tree",
                 "fallback_tag")

    def __init__(self, interner: Interner, lexicon: Lexicon,
                 config: TaggerConfig, known_weights: FeatureWeights,
                 unknown_weights: FeatureWeights, known_tree: IGTree | None,
                 unknown_tree: IGTree | None, fallback_tag: int):
        self.interner = interner
        self.lexicon = lexicon
        self.config = config
        self.known_weights = known_weights
        self.unknown_weights = unknown_weights
        self.known_tree = known_tree
        self.unknown_tree = unknown_tree
        self.fallback_tag = fallback_tag

    # -- tagging ---------------------------------------------------------

    def tag_records(self, words: list[str],
                    gold_left: list[str] | None = None) -> list[TokenRecord]:
        """Tag one sentence left to right, keeping per-token records.

        With `gold_left`, the d slots are filled from those tags instead of
        the tagger's own output, isolating the classifiers from error
        propagation.
        """
        if not words:
            raise ParameterError("cannot tag an empty sentence")
        if gold_left is not None and len(gold_left) != len(words):
            raise ParameterError("gold_left length differs from sentence length")
        interner = self.interner
        config = self.config
        entries = self.lexicon.entries
        boundary = interner.boundary
        unk_mark = interner.unknown_mark
        route_numbers = config.route_numbers_to_unknown
        n = len(words)

        focus = []  # lexicon tag id or None when routed unknown
        for w in words:
            entry = entries.get(w)
            if entry is None or (route_numbers and is_number(w)):
                focus.append(None)
            else:
                focus.append(entry.ambiguous_tag)

        if gold_left is not None:
            left = [interner.id_of(t) for t in gold_left]
        else:
            left = [NO_SYMBOL] * n  # filled with our own output as we go

        records = []
        for i, w in enumerate(words):
            d1 = left[i - 1] if i >= 1 else boundary
            a = boundary if i + 1 == n else (
                focus[i + 1] if focus[i + 1] is not None else unk_mark)
            if focus[i] is not None:
                d2 = left[i - 2] if i >= 2 else boundary
                query = (d2, d1, focus[i], a)
                tree = self.known_tree
                route = "known"
            else:
                first, s3, s2, s1 = _letter_slots(w, interner, strict=False)
                query = (first, d1, a, s3, s2, s1)
                tree = self.unknown_tree
                route = "unknown"
            pred = tree.classify(query) if tree is not None else self.fallback_tag
            if gold_left is None:
                left[i] = pred
            records.append(TokenRecord(w, route, query, pred))
        return records

    def tag(self, words: list[str]) -> list[str]:
        """Tag texts for one sentence; output length equals input length."""
        text = self.interner.text
        return [text(r.prediction) for r in self.tag_records(words)]

    def explain(self, words: list[str], position: int) -> Explanation:
        """The trie path behind one tagging decision: per tested feature the
        query value, whether an arc matched, and the default at that node."""
        records = self.tag_records(words)
        if not 0 <= position < len(records):
            raise ParameterError(f"position {position} out of range")
        rec = records[position]
        tree = self.known_tree if rec.route == "known" else self.unknown_tree
        slots = KNOWN_SLOTS if rec.route == "known" else UNKNOWN_SLOTS
        text = self.interner.text
        steps = []
        if tree is not None:
            _, raw = tree.trace(rec.query)
            for feat, value, matched, default in raw:
                value_text = text(value) if value != NO_SYMBOL else "?"
                steps.append(ExplanationStep(slots[feat], value_text, matched,
                                             text(default)))
        return Explanation(rec.word, rec.route, text(rec.prediction), steps)

    # -- reporting -------------------------------------------------------

    def summary(self) -> str:
        lex = self.lexicon
        lines = [
            f"lexicon: {lex.type_count} word types, "
            f"{lex.ambiguous_type_count} "
            f"({100.0 * lex.ambiguous_type_fraction:.1f}%) ambiguous",
            f"ambiguous tokens: {100.0 * lex.ambiguous_token_fraction:.1f}%",
        ]
        for name, tree in (("known", self.known_tree),
                           ("unknown", self.unknown_tree)):
            if tree is None:
                lines.append(f"{name} tree: empty")
                continue
            st = stats(tree)
            lines.append(
                f"{name} tree: {st.nodes} nodes, {st.leaves} leaves, "
                f"depth {st.max_depth}, {st.serialized_bytes} bytes "
                f"({100.0 * st.compression_ratio:.1f}% of expanded)")
        return "\n".join(lines)

    # -- serialization ---------------------------------------------------

    def to_bytes(self) -> bytes:
        """Single binary image: magic, version, then the interner, lexicon,
        weights, tree, and config sections, all integers little-endian."""
        out = bytearray()
        out += MAGIC
        out += struct.pack("<H", FORMAT_VERSION)
        _w_interner(out, self.interner)
        _w_lexicon(out, self.lexicon, self.interner)
        _w_weights(out, self.known_weights)
        _w_weights(out, self.unknown_weights)
        _w_tree(out, self.known_tree)
        _w_tree(out, self.unknown_tree)
        _w_config(out, self.config, self.fallback_tag)
        return bytes(out)

    def save(self, path: str) -> None:
        data = self.to_bytes()
        with open(path, "wb") as fh:
            fh.write(data)

    @classmethod
    def from_bytes(cls, buf: bytes) -> "TaggerModel":
        if buf[:4] != MAGIC:
            raise ModelFormatError("bad magic bytes: not a tagger model file")
        (version,) = struct.unpack_from("<H", buf, 4)
        if version != FORMAT_VERSION:
            raise ModelFormatError(
                f"unsupported model version {version} (expected {FORMAT_VERSION})")
        try:
            off = 6
            interner, off = _r_interner(buf, off)
            lexicon, off = _r_lexicon(buf, off, interner)
            known_w, off = _r_weights(buf, off)
            unknown_w, off = _r_weights(buf, off)
            known_tree, off = _r_tree(buf, off)
            unknown_tree, off = _r_tree(buf, off)
            config, fallback, off = _r_config(buf, off)
        except (struct.error, IndexError, UnicodeDecodeError) as exc:
            raise ModelFormatError(f"corrupt model file: {exc}") from exc
        if off != len(buf):
            raise ModelFormatError(f"{len(buf) - off} trailing bytes")
        return cls(interner, lexicon, config, known_w, unknown_w,
                   known_tree, unknown_tree, fallback)

    @classmethod
    def load(cls, path: str) -> "TaggerModel":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())


def train(corpus: Corpus, config: TaggerConfig = TaggerConfig()) -> TaggerModel:
    """Generate a complete tagger model from a tagged corpus."""
    if not corpus.sentences:
        raise ParameterError("cannot train on an empty corpus")
    interner = Interner()
    lexicon = build_lexicon(corpus, interner, config.threshold)
    known = extract_known_cases(corpus, lexicon, interner, config)
    unknown = extract_unknown_cases(corpus, lexicon, interner, config)

    known_weights = information_gains(known) if known else (0.0,) * KNOWN_ARITY
    unknown_weights = (information_gains(unknown) if unknown
                       else (0.0,) * UNKNOWN_ARITY)
    known_tree = prune(build(known, known_weights)) if known else None
    unknown_tree = prune(build(unknown, unknown_weights)) if unknown else None

    gold_counts: dict[int, int] = {}
    for sent in corpus.sentences:
        for tok in sent:
            tid = interner.intern(tok.tag)
            gold_counts[tid] = gold_counts.get(tid, 0) + 1
    fallback = majority_class(gold_counts, interner)

    return TaggerModel(interner, lexicon, config, known_weights,
                       unknown_weights, known_tree, unknown_tree, fallback)


# -- binary section helpers (all integers little-endian) ------------------

_U32 = struct.Struct("<I")


def _w_u32(out: bytearray, value: int) -> None:
    out += _U32.pack(value)


def _r_u32(buf: bytes, off: int) -> tuple[int, int]:
    return _U32.unpack_from(buf, off)[0], off + 4


def _w_str(out: bytearray, text: str) -> None:
    data = text.encode("utf-8")
    _w_u32(out, len(data))
    out += data


def _r_str(buf: bytes, off: int) -> tuple[str, int]:
    n, off = _r_u32(buf, off)
    end = off + n
    if end > len(buf):
        raise ModelFormatError("truncated string")
    return buf[off:end].decode("utf-8"), end


def _w_interner(out: bytearray, interner: Interner) -> None:
    _w_u32(out, len(interner))
    for text in interner:
        _w_str(out, text)


def _r_interner(buf: bytes, off: int) -> tuple[Interner, int]:
    n, off = _r_u32(buf, off)
    texts = []
    for _ in range(n):
        t, off = _r_str(buf, off)
        texts.append(t)
    interner = Interner()
    for t in texts:
        interner.intern(t)
    if len(interner) != n:
        raise ModelFormatError("interner table is not bijective")
    return interner, off


def _w_config(out: bytearray, config: TaggerConfig, fallback_tag: int) -> None:
    out += struct.pack("<d", config.threshold)
    out.append(1 if config.route_numbers_to_unknown else 0)
    _w_u32(out, fallback_tag)
    if config.closed_class_tags is None:
        out.append(0)
    else:
        out.append(1)
        tags = sorted(config.closed_class_tags)
        _w_u32(out, len(tags))
        for t in tags:
            _w_str(out, t)


def _r_config(buf: bytes, off: int) -> tuple[TaggerConfig, int, int]:
    (threshold,) = struct.unpack_from("<d", buf, off)
    off += 8
    route_numbers = buf[off] == 1
    off += 1
    fallback_tag, off = _r_u32(buf, off)
    has_closed = buf[off] == 1
    off += 1
    closed = None
    if has_closed:
        n, off = _r_u32(buf, off)
        tags = []
        for _ in range(n):
            t, off = _r_str(buf, off)
            tags.append(t)
        closed = frozenset(tags)
    return TaggerConfig(threshold, closed, route_numbers), fallback_tag, off


def _w_lexicon(out: bytearray, lexicon: Lexicon, interner: Interner) -> None:
    _w_u32(out, len(lexicon.entries))
    for word, entry in lexicon.entries.items():
        _w_u32(out, interner.id_of(word))
        _w_u32(out, entry.ambiguous_tag)
        _w_u32(out, len(entry.surviving_tags))
        for tag in entry.surviving_tags:
            _w_u32(out, tag)
        _w_u32(out, len(entry.tag_counts))
        for tag, count in entry.tag_counts.items():
            _w_u32(out, tag)
            _w_u32(out, count)


def _r_lexicon(buf: bytes, off: int, interner: Interner) -> tuple[Lexicon, int]:
    n_entries, off = _r_u32(buf, off)
    lexicon = Lexicon()
    for _ in range(n_entries):
        word_id, off = _r_u32(buf, off)
        amb, off = _r_u32(buf, off)
        n_surv, off = _r_u32(buf, off)
        surviving = []
        for _ in range(n_surv):
            tag, off = _r_u32(buf, off)
            surviving.append(tag)
        n_tags, off = _r_u32(buf, off)
        counts: dict[int, int] = {}
        for _ in range(n_tags):
            tag, off = _r_u32(buf, off)
            count, off = _r_u32(buf, off)
            counts[tag] = count
        word = interner.text(word_id)
        lexicon.entries[word] = LexicalEntry(word, counts, tuple(surviving), amb)
        lexicon.total_tokens += sum(counts.values())
    return lexicon, off


def _w_weights(out: bytearray, weights: FeatureWeights) -> None:
    _w_u32(out, len(weights))
    out += struct.pack(f"<{len(weights)}d", *weights)


def _r_weights(buf: bytes, off: int) -> tuple[FeatureWeights, int]:
    n, off = _r_u32(buf, off)
    weights = struct.unpack_from(f"<{n}d", buf, off)
    return tuple(weights), off + 8 * n


def _w_tree(out: bytearray, tree: IGTree | None) -> None:
    if tree is None:
        out.append(0)
        return
    out.append(1)
    out += tree_to_bytes(tree)


def _r_tree(buf: bytes, off: int) -> tuple[IGTree | None, int]:
    present = buf[off]
    off += 1
    if present == 0:
        return None, off
    return tree_from_bytes(buf, off)
