"""Reduce transcribed words to abstract symbol series.

A transcriber may write the same phoneme many different ways depending on
how much phonetic detail they chose to record. The symbol class table
collapses that variation: each grapheme cluster (base character plus any
length/pitch/glottalization marks that belong to it) maps to one abstract
class symbol, and a whole word reduces to the string of class symbols of
its clusters — its *symbol series*. Two spellings of the same word then
compare equal (or nearly equal) at the series level even when their raw
characters differ wildly.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field


class SymbolTableError(ValueError):
    """Raised for malformed or inconsistent symbol class tables."""


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class SymbolSeries:
    """A word reduced to class symbols, one per matched grapheme cluster."""

    symbols: str
    source_word: str

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class NotReducible:
    """Marker value: the word has a position no cluster in the table matches.

    This is a value, not an error — an unreducible word is evidence of
    foreign material (or a transcription error) and feeds the foreign
    branch of token classification.
    """

    source_word: str
    position: int


@dataclass(frozen=True)
class SymbolClassTable:
    """Immutable cluster-to-class mapping with greedy longest-first matching."""

    entries: tuple[tuple[str, str], ...]
    version: str = "unversioned"
    source_text: str | None = field(default=None, compare=False)

    def __post_init__(self):
        by_len: dict[int, dict[str, str]] = {}
        for cluster, klass in self.entries:
            by_len.setdefault(len(cluster), {})[cluster] = klass
        # Longest cluster is tried first at every position.
        lengths = sorted(by_len, reverse=True)
        object.__setattr__(self, "_by_len", tuple((n, by_len[n]) for n in lengths))
        object.__setattr__(self, "_alphabet", frozenset(k for _, k in self.entries))

    @property
    def alphabet(self) -> frozenset[str]:
        """All class symbols this table can emit."""
        return self._alphabet

    def class_of(self, cluster: str) -> str | None:
        for _, mapping in self._by_len:
            if cluster in mapping:
                return mapping[cluster]
        return None

    def segment(self, word: str) -> list[str] | NotReducible:
        """Split an NFC-normalized word into clusters, longest match first.

        Joining the returned clusters reproduces the input exactly.
        """
        word = _nfc(word)
        clusters: list[str] = []
        pos = 0
        n = len(word)
        while pos < n:
            for length, mapping in self._by_len:
                piece = word[pos : pos + length]
                if len(piece) == length and piece in mapping:
                    clusters.append(piece)
                    pos += length
                    break
            else:
                return NotReducible(source_word=word, position=pos)
        return clusters

    def reduce(self, word: str) -> SymbolSeries | NotReducible:
        clusters = self.segment(word)
        if isinstance(clusters, NotReducible):
            return clusters
        lookup = self.class_of
        return SymbolSeries(
            symbols="".join(lookup(c) for c in clusters),
            source_word=_nfc(word),
        )


def symbol_series(word: str, table: SymbolClassTable) -> SymbolSeries | NotReducible:
    """Reduce ``word`` to its symbol series under ``table``.

    The word is NFC-normalized, then segmented greedily left to right,
    always preferring the longest cluster that matches at the current
    position. Returns :class:`NotReducible` if any position matches no
    cluster.
    """
    if not word:
        raise ValueError("cannot reduce an empty word")
    return table.reduce(word)


def parse_table(document: str, *, source: str = "<table>") -> SymbolClassTable:
    """Parse a symbol class table from its text form.

    Format: one ``cluster<TAB>class`` mapping per line; ``#`` starts a
    comment line; blank lines are ignored. A comment of the form
    ``# version: X`` sets the table version.
    """
    entries: list[tuple[str, str]] = []
    seen: dict[str, int] = {}
    version = "unversioned"
    for lineno, line in enumerate(document.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            comment = stripped.lstrip("#").strip()
            if comment.lower().startswith("version:"):
                version = comment.split(":", 1)[1].strip()
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise SymbolTableError(
                f"{source}:{lineno}: expected cluster<TAB>class, got {line!r}"
            )
        cluster, klass = _nfc(parts[0]), _nfc(parts[1])
        if not cluster or not klass:
            raise SymbolTableError(f"{source}:{lineno}: empty cluster or class")
        if len(klass) != 1:
            raise SymbolTableError(
                f"{source}:{lineno}: class symbol must be a single symbol, got {klass!r}"
            )
        if cluster in seen:
            raise SymbolTableError(
                f"{source}:{lineno}: duplicate cluster {cluster!r} "
                f"(first mapped on line {seen[cluster]})"
            )
        seen[cluster] = lineno
        entries.append((cluster, klass))
    if not entries:
        raise SymbolTableError(f"{source}: table defines no clusters")
    return SymbolClassTable(entries=tuple(entries), version=version, source_text=document)


def load_table(path) -> SymbolClassTable:
    with open(path, "r", encoding="utf-8") as f:
        return parse_table(f.read(), source=str(path))


def write_table(table: SymbolClassTable) -> str:
    """Render a table back to text. Bit-exact for tables parsed from text."""
    if table.source_text is not None:
        return table.source_text
    lines = [f"# version: {table.version}"]
    lines.extend(f"{cluster}\t{klass}" for cluster, klass in table.entries)
    return "\n".join(lines) + "\n"
