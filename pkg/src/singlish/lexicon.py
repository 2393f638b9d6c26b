"""Prefix-tree lexicon: romanized keys mapping to ranked Sinhala candidates.

One key may carry several candidate words; that collision set is the
ambiguity the disambiguator resolves.  Candidate lists stay sorted by
frequency (descending) with lexicographic tie-breaks so every ranking
downstream is a total order.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .errors import MalformedLexicon

VOWEL_LETTERS = frozenset("aeiou")


def _rank_candidates(freqs: dict) -> tuple:
    return tuple(
        (surface, freq)
        for surface, freq in sorted(freqs.items(), key=lambda it: (-it[1], it[0]))
    )


@dataclass(frozen=True)
class LexiconEntry:
    key: str
    candidates: tuple  # ((surface, frequency), ...) frequency-descending

    def __post_init__(self):
        if not self.candidates:
            raise ValueError(f"entry {self.key!r} has no candidates")

    @property
    def top(self) -> str:
        return self.candidates[0][0]

    @property
    def frequency(self) -> int:
        """Total observed mass of the key across its candidates."""
        return sum(freq for _, freq in self.candidates)

    def merged_with(self, other: "LexiconEntry") -> "LexiconEntry":
        freqs: dict = {}
        for surface, freq in self.candidates + other.candidates:
            freqs[surface] = freqs.get(surface, 0) + freq
        return LexiconEntry(self.key, _rank_candidates(freqs))


class _Node:
    __slots__ = ("children", "entry")

    def __init__(self):
        self.children: dict = {}
        self.entry: Optional[LexiconEntry] = None


class Trie:
    """Character trie over romanized keys (letters plus apostrophe)."""

    def __init__(self):
        self.root = _Node()
        self._size = 0

    @property
    def size(self) -> int:
        return self._size

    def insert(self, entry: LexiconEntry) -> None:
        node = self.root
        for ch in entry.key:
            node = node.children.setdefault(ch, _Node())
        if node.entry is None:
            node.entry = entry
            self._size += 1
        else:
            node.entry = node.entry.merged_with(entry)

    def lookup(self, key: str) -> Optional[LexiconEntry]:
        node = self.root
        for ch in key:
            node = node.children.get(ch)
            if node is None:
                return None
        return node.entry

    def _walk(self, node: _Node) -> Iterator[LexiconEntry]:
        if node.entry is not None:
            yield node.entry
        for ch in sorted(node.children):
            yield from self._walk(node.children[ch])

    def entries(self, prefix: str = "") -> Iterator[LexiconEntry]:
        node = self.root
        for ch in prefix:
            node = node.children.get(ch)
            if node is None:
                return
        yield from self._walk(node)

    def suggest(self, prefix: str, k: int) -> list[tuple[str, str, int]]:
        """Top completions of ``prefix``: (key, best candidate, frequency),
        ranked by frequency then key length then key; empty prefix ranks the
        whole lexicon."""
        if k < 1:
            raise ValueError("k must be >= 1")
        pool = list(self.entries(prefix))
        pool.sort(key=lambda e: (-e.frequency, len(e.key), e.key))
        return [(e.key, e.top, e.frequency) for e in pool[:k]]


def insert(trie: Trie, entry: LexiconEntry) -> Trie:
    trie.insert(entry)
    return trie


def lookup(trie: Trie, key: str) -> Optional[LexiconEntry]:
    return trie.lookup(key)


def suggest(trie: Trie, prefix: str, k: int) -> list[tuple[str, str, int]]:
    return trie.suggest(prefix, k)


def _skeletonize(key: str) -> str:
    return "".join(ch for ch in key if ch not in VOWEL_LETTERS)


class Lexicon:
    """The trie plus file IO and the consonant-skeleton side index."""

    def __init__(self):
        self.trie = Trie()
        self._skeletons: Optional[dict] = None

    def __len__(self) -> int:
        return self.trie.size

    def add(self, key: str, surface: str, frequency: int = 1) -> None:
        if not key:
            raise ValueError("empty lexicon key")
        self.trie.insert(LexiconEntry(key, ((surface, frequency),)))
        self._skeletons = None

    def lookup(self, key: str) -> Optional[LexiconEntry]:
        return self.trie.lookup(key)

    def suggest(self, prefix: str, k: int) -> list[tuple[str, str, int]]:
        return self.trie.suggest(prefix, k)

    def keys(self) -> Iterator[str]:
        for entry in self.trie.entries():
            yield entry.key

    def entry_frequency(self, key: str) -> int:
        entry = self.trie.lookup(key)
        return entry.frequency if entry else 0

    def keys_with_skeleton(self, skeleton: str) -> list[str]:
        if self._skeletons is None:
            index: dict = {}
            for key in self.keys():
                index.setdefault(_skeletonize(key), []).append(key)
            self._skeletons = index
        return self._skeletons.get(skeleton, [])

    # --- file IO ---------------------------------------------------------

    @classmethod
    def load_tsv(cls, path) -> "Lexicon":
        path = Path(path)
        lex = cls()
        with open(path, encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                cols = line.split("\t")
                if len(cols) != 3:
                    raise MalformedLexicon(
                        str(path), line_no, f"expected 3 fields, got {len(cols)}"
                    )
                key, surface, freq_text = cols
                try:
                    freq = int(freq_text)
                except ValueError:
                    raise MalformedLexicon(
                        str(path), line_no, f"frequency is not an integer: {freq_text!r}"
                    ) from None
                if freq < 0:
                    raise MalformedLexicon(str(path), line_no, "negative frequency")
                lex.add(key, surface, freq)
        return lex

    def save_tsv(self, path) -> None:
        lines = []
        for entry in self.trie.entries():
            for surface, freq in entry.candidates:
                lines.append(f"{entry.key}\t{surface}\t{freq}\n")
        with open(path, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
