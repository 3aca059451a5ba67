"""Target-form dictionary: lemmas with glosses, POS tags and surface variants.

Content words carry only their base lexical form; function words (pronouns,
determiners, conjunctions, adposition-like elements) may list full paradigms
as explicit variants. Every variant is pre-reduced to its symbol series at
load time and indexed two ways: exactly by series, and by the first class
symbol of the series (the candidate bucket the fuzzy matcher searches).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .symbols import NotReducible, SymbolClassTable, SymbolSeries, symbol_series


class LexiconError(ValueError):
    """Raised for malformed lexicon files."""


class PosTag(enum.Enum):
    CC = "CC"  # conjunction
    CD = "CD"  # cardinal number
    DT = "DT"  # determiner
    FW = "FW"  # foreign word
    JJ = "JJ"  # adjective
    NN = "NN"  # common noun
    NP = "NP"  # proper noun
    ON = "ON"  # onomatopoeia
    PN = "PN"  # pronoun
    PP = "PP"  # adposition-like element
    PU = "PU"  # punctuation
    RB = "RB"  # adverb / particle
    UH = "UH"  # interjection
    UN = "UN"  # unknown
    VB = "VB"  # verb

    def __str__(self) -> str:
        return self.value


#: Tags whose entries may carry paradigm variants beyond the base form.
FUNCTION_WORD_TAGS = frozenset({PosTag.PN, PosTag.DT, PosTag.CC, PosTag.PP})

#: Content-word tags restricted to exactly the base form (unless the entry is
#: an origin-marked grammaticalization source).
SINGLE_FORM_TAGS = frozenset({PosTag.NN, PosTag.VB, PosTag.JJ, PosTag.RB})


def parse_pos(text: str) -> PosTag:
    try:
        return PosTag[text.strip()]
    except KeyError:
        raise LexiconError(f"unknown POS tag {text.strip()!r}") from None


@dataclass(frozen=True)
class LexiconEntry:
    """One normalized lemma with its gloss, tag and allowed surface variants."""

    lemma: str
    gloss: str
    pos: PosTag
    variant_forms: tuple[str, ...]
    series_by_variant: tuple[tuple[str, str], ...]  # (variant, series symbols)
    origin: bool = False  # marked grammaticalization source (POS conflict winner)

    def sort_key(self) -> tuple:
        return (self.lemma, self.pos.value, self.gloss)


class Lexicon:
    """Immutable collection of entries with series-based indexes."""

    def __init__(self, entries: list[LexiconEntry]):
        self._entries = tuple(entries)
        exact: dict[str, list[LexiconEntry]] = {}
        buckets: dict[str, list[tuple[LexiconEntry, str, str]]] = {}
        by_lemma: dict[str, list[LexiconEntry]] = {}
        for entry in self._entries:
            by_lemma.setdefault(entry.lemma, []).append(entry)
            for variant, series in entry.series_by_variant:
                exact.setdefault(series, []).append(entry)
                buckets.setdefault(series[0], []).append((entry, variant, series))
        for series_key, hits in exact.items():
            # An entry may index the same series via several variants; keep one.
            unique = {id(e): e for e in hits}
            exact[series_key] = sorted(unique.values(), key=LexiconEntry.sort_key)
        for klass, triples in buckets.items():
            triples.sort(key=lambda t: (t[0].lemma, t[0].pos.value, t[1]))
        self._exact = exact
        self._buckets = buckets
        self._by_lemma = {
            lemma: sorted(hits, key=LexiconEntry.sort_key)
            for lemma, hits in by_lemma.items()
        }

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    @property
    def entries(self) -> tuple[LexiconEntry, ...]:
        return self._entries

    def exact_lookup(self, series: SymbolSeries | str) -> list[LexiconEntry]:
        """All entries with a variant whose series equals ``series``.

        Result order is deterministic (lemma lexicographic); empty list when
        nothing matches.
        """
        key = series.symbols if isinstance(series, SymbolSeries) else series
        return list(self._exact.get(key, ()))

    def candidates_by_first_class(self, class_symbol: str, alphabet=None) -> list[LexiconEntry]:
        """Entries having at least one variant whose series starts with
        ``class_symbol``, without duplicates."""
        if alphabet is not None and class_symbol not in alphabet:
            raise ValueError(f"class symbol {class_symbol!r} not in declared alphabet")
        seen: set[int] = set()
        out: list[LexiconEntry] = []
        for entry, _variant, _series in self._buckets.get(class_symbol, ()):
            if id(entry) not in seen:
                seen.add(id(entry))
                out.append(entry)
        return out

    def variants_by_first_class(self, class_symbol: str) -> list[tuple[LexiconEntry, str, str]]:
        """(entry, variant, series) triples whose series starts with ``class_symbol``."""
        return list(self._buckets.get(class_symbol, ()))

    def entries_for_lemma(self, lemma: str) -> list[LexiconEntry]:
        return list(self._by_lemma.get(lemma, ()))


def parse_lexicon(document: str, table: SymbolClassTable, *, source: str = "<lexicon>") -> Lexicon:
    """Parse a lexicon file and pre-index every variant's symbol series.

    Format, one entry per line::

        lemma<TAB>gloss<TAB>pos[<TAB>variant1,variant2,...[<TAB>origin]]

    The variant field may be empty or omitted (defaults to the lemma alone);
    the lemma is always included among the variants. The final field, when
    present, must be the literal word ``origin`` and marks the entry as the
    originating class of a grammaticalized homograph pair.
    """
    entries: list[LexiconEntry] = []
    seen_keys: dict[tuple[str, str], int] = {}
    for lineno, line in enumerate(document.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 3 or len(parts) > 5:
            raise LexiconError(
                f"{source}:{lineno}: expected 3-5 tab-separated fields, got {len(parts)}"
            )
        lemma, gloss, pos_text = parts[0].strip(), parts[1], parts[2]
        if not lemma:
            raise LexiconError(f"{source}:{lineno}: empty lemma")
        try:
            pos = parse_pos(pos_text)
        except LexiconError as exc:
            raise LexiconError(f"{source}:{lineno}: {exc}") from None
        origin = False
        if len(parts) == 5:
            flag = parts[4].strip()
            if flag not in ("", "origin"):
                raise LexiconError(
                    f"{source}:{lineno}: fifth field must be 'origin' or empty, got {flag!r}"
                )
            origin = flag == "origin"
        variants: list[str] = [lemma]
        if len(parts) >= 4 and parts[3].strip():
            for form in parts[3].split(","):
                form = form.strip()
                if form and form not in variants:
                    variants.append(form)
        if pos in SINGLE_FORM_TAGS and not origin and len(variants) > 1:
            raise LexiconError(
                f"{source}:{lineno}: content-word entry {lemma!r} ({pos}) "
                f"must carry exactly its base form, got {len(variants)} variants"
            )
        key = (lemma, pos.value)
        if key in seen_keys:
            raise LexiconError(
                f"{source}:{lineno}: duplicate entry for lemma {lemma!r} with tag {pos} "
                f"(first defined on line {seen_keys[key]})"
            )
        seen_keys[key] = lineno
        series_by_variant = []
        for variant in variants:
            series = symbol_series(variant, table)
            if isinstance(series, NotReducible):
                raise LexiconError(
                    f"{source}:{lineno}: variant {variant!r} of {lemma!r} is not "
                    f"reducible by the symbol table (stuck at position {series.position})"
                )
            series_by_variant.append((variant, series.symbols))
        entries.append(
            LexiconEntry(
                lemma=lemma,
                gloss=gloss,
                pos=pos,
                variant_forms=tuple(variants),
                series_by_variant=tuple(series_by_variant),
                origin=origin,
            )
        )
    if not entries:
        raise LexiconError(f"{source}: lexicon defines no entries")
    return Lexicon(entries)


def load_lexicon(path, table: SymbolClassTable) -> Lexicon:
    with open(path, "r", encoding="utf-8") as f:
        return parse_lexicon(f.read(), table, source=str(path))


def serialize_lexicon(lexicon: Lexicon) -> str:
    """Canonical text form; byte-identical for identical inputs."""
    lines = []
    for e in lexicon.entries:
        fields = [e.lemma, e.gloss, e.pos.value, ",".join(e.variant_forms)]
        if e.origin:
            fields.append("origin")
        lines.append("\t".join(fields))
    return "\n".join(lines) + "\n"
