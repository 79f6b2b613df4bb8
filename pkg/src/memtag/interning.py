"""String interning: every tag, feature value, and word form becomes a small int.

One interner is shared per tagger model, so feature comparison everywhere else
is plain integer equality. Id 0 is always the sentence-boundary marker and id 1
the marker for an unknown right neighbor; both exist in every interner.
"""

from __future__ import annotations

from typing import Iterable

BOUNDARY = "="
UNKNOWN_MARK = "UNK-A"

# Sentinel id for text the interner has never seen. Never stored in any
# structure, so it can never match an arc or a pattern slot.
NO_SYMBOL = -1


class Interner:
    """Bijective text <-> id map. Ids are dense and assigned in intern order."""

    __slots__ = ("_ids", "_texts")

    def __init__(self, texts: Iterable[str] = ()):
        self._ids: dict[str, int] = {}
        self._texts: list[str] = []
        self.intern(BOUNDARY)
        self.intern(UNKNOWN_MARK)
        for t in texts:
            self.intern(t)

    def intern(self, text: str) -> int:
        sid = self._ids.get(text)
        if sid is None:
            sid = len(self._texts)
            self._ids[text] = sid
            self._texts.append(text)
        return sid

    def id_of(self, text: str) -> int:
        """Id for `text`, or NO_SYMBOL if it was never interned."""
        return self._ids.get(text, NO_SYMBOL)

    def text(self, sid: int) -> str:
        return self._texts[sid]

    def texts(self, sids: Iterable[int]) -> tuple[str, ...]:
        ts = self._texts
        return tuple(ts[s] for s in sids)

    def __len__(self) -> int:
        return len(self._texts)

    def __iter__(self):
        return iter(self._texts)

    @property
    def boundary(self) -> int:
        return 0

    @property
    def unknown_mark(self) -> int:
        return 1
