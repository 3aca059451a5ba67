"""Classify and normalize transcript tokens against the lexicon.

Every token ends up in exactly one of four outcomes:

* ``PUNCT``   — the token is made of punctuation marks only;
* ``FOREIGN`` — the token cannot be reduced to a symbol series (or matches
  a user-supplied foreign-material pattern), so it is not a possible word
  of the target language;
* ``MATCHED`` — a lexicon variant was found, either exactly (equal symbol
  series) or as the candidate with minimum Levenshtein distance among all
  variants sharing the token's first class symbol;
* ``UNKNOWN`` — no candidate shares the token's first class symbol.

When the best fuzzy match scores at or below the threshold, one final
suffix is stripped from the token's series (inflection that the base-form
lexicon cannot represent) and the search runs once more; the stemmed match
wins only if its raw distance is strictly smaller.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass

from .lexicon import Lexicon, LexiconEntry
from .symbols import NotReducible, SymbolClassTable, symbol_series

DEFAULT_THRESHOLD = 0.7


def levenshtein(a, b) -> int:
    """Minimum number of single-symbol insertions, deletions and
    substitutions transforming sequence ``a`` into sequence ``b``."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, sym_a in enumerate(a, 1):
        cur = [i]
        append = cur.append
        for j, sym_b in enumerate(b, 1):
            append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (sym_a != sym_b)))
        prev = cur
    return prev[-1]


def convert_score(distance: int, query_len: int, candidate_len: int) -> float:
    """Turn a raw distance into a similarity in [0, 1].

    1.0 means identical series; 0.0 means the distance equals the longer
    of the two lengths (nothing matched).
    """
    if distance < 0 or query_len < 0 or candidate_len < 0:
        raise ValueError("distance and lengths must be non-negative")
    longest = max(query_len, candidate_len)
    if longest == 0:
        raise ValueError("cannot score two empty series")
    return 1.0 - distance / longest


@dataclass(frozen=True)
class SuffixPolicy:
    """How to strip a final suffix from a symbol series for the fallback search.

    ``suffixes`` are explicit series suffixes tried in order; when none
    applies and ``strip_any_final`` is set, exactly one trailing class
    symbol is removed. ``max_strip`` bounds how many times the fallback may
    strip (default once). Stripping never empties the series — the first
    class symbol anchors the candidate search.
    """

    suffixes: tuple[str, ...] = ()
    strip_any_final: bool = True
    max_strip: int = 1

    def strip(self, series: str) -> str | None:
        for suffix in self.suffixes:
            if suffix and len(series) > len(suffix) and series.endswith(suffix):
                return series[: -len(suffix)]
        if self.strip_any_final and len(series) > 1:
            return series[:-1]
        return None

    def stems(self, series: str) -> list[str]:
        """Successively stripped stems, at most ``max_strip`` of them."""
        out: list[str] = []
        stem = series
        for _ in range(self.max_strip):
            stripped = self.strip(stem)
            if stripped is None:
                break
            out.append(stripped)
            stem = stripped
        return out

    @classmethod
    def parse(cls, text: str) -> "SuffixPolicy":
        """Parse a CLI policy spec: comma-separated series suffixes, where
        ``*`` means 'strip one trailing symbol' and ``depth=N`` sets how
        many strips the fallback may chain."""
        suffixes = []
        strip_any = False
        max_strip = 1
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            if item == "*":
                strip_any = True
            elif item.startswith("depth="):
                max_strip = int(item.split("=", 1)[1])
                if max_strip < 1:
                    raise ValueError(f"suffix policy depth must be >= 1, got {max_strip}")
            else:
                suffixes.append(item)
        if not suffixes and not strip_any:
            strip_any = True
        return cls(suffixes=tuple(suffixes), strip_any_final=strip_any, max_strip=max_strip)


DEFAULT_SUFFIX_POLICY = SuffixPolicy()


@dataclass(frozen=True)
class TranscriptToken:
    """One logical word of the raw transcription.

    ``raw`` is the full word as matched (joined across any ``&``
    continuation); ``joined_from`` keeps the original fragments so aligned
    output can reproduce the source line structure. ``split_marker`` marks
    a token that was split off at a missing word boundary and must render
    with a trailing ``#``.
    """

    raw: str
    position: int
    joined_from: tuple[str, ...] | None = None
    split_marker: bool = False


class OutcomeKind(enum.Enum):
    PUNCT = "punct"
    FOREIGN = "foreign"
    MATCHED = "matched"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class NormalizationOutcome:
    kind: OutcomeKind
    entry: LexiconEntry | None = None
    variant: str | None = None
    match_score: float | None = None
    distance: int | None = None
    used_fallback: bool = False

    def __post_init__(self):
        if (self.kind is OutcomeKind.MATCHED) != (self.match_score is not None):
            raise ValueError("match_score present exactly when kind is MATCHED")
        if (self.kind is OutcomeKind.MATCHED) != (self.entry is not None):
            raise ValueError("entry present exactly when kind is MATCHED")


def is_punctuation(raw: str) -> bool:
    return bool(raw) and all(
        unicodedata.category(ch).startswith("P") for ch in raw
    )


@dataclass(frozen=True)
class Candidate:
    entry: LexiconEntry
    variant: str
    series: str
    distance: int
    score: float


def _search(lexicon: Lexicon, query: str) -> Candidate | None:
    """Best candidate for ``query`` among variants sharing its first class.

    Ties break deterministically: shorter candidate series first, then
    lemma, variant and tag lexicographically.
    """
    best: Candidate | None = None
    best_key = None
    for entry, variant, series in lexicon.variants_by_first_class(query[0]):
        dist = levenshtein(series, query)
        key = (dist, len(series), entry.lemma, variant, entry.pos.value)
        if best_key is None or key < best_key:
            best_key = key
            best = Candidate(
                entry=entry,
                variant=variant,
                series=series,
                distance=dist,
                score=convert_score(dist, len(query), len(series)),
            )
    return best


def rank_candidates(
    token: TranscriptToken,
    lexicon: Lexicon,
    table: SymbolClassTable,
    k: int = 5,
) -> list[Candidate]:
    """Top-k candidates for a token, in the normalizer's selection order.

    Punctuation and unreducible tokens have no candidates.
    """
    if is_punctuation(token.raw):
        return []
    series = symbol_series(token.raw, table)
    if isinstance(series, NotReducible):
        return []
    query = series.symbols
    ranked = []
    for entry, variant, vseries in lexicon.variants_by_first_class(query[0]):
        dist = levenshtein(vseries, query)
        ranked.append(
            Candidate(entry, variant, vseries, dist, convert_score(dist, len(query), len(vseries)))
        )
    ranked.sort(key=lambda c: (c.distance, len(c.series), c.entry.lemma, c.variant, c.entry.pos.value))
    return ranked[:k]


def normalize_token(
    token: TranscriptToken,
    lexicon: Lexicon,
    table: SymbolClassTable,
    suffix_policy: SuffixPolicy = DEFAULT_SUFFIX_POLICY,
    threshold: float = DEFAULT_THRESHOLD,
    foreign_pattern: re.Pattern | str | None = None,
) -> NormalizationOutcome:
    """Classify one token and, when possible, match it to a lexicon entry.

    The decision sequence is fixed and total:

    1. punctuation-only token → PUNCT;
    2. unreducible series, or raw matches ``foreign_pattern`` → FOREIGN;
    3. exact series hit → MATCHED with score 1.0;
    4. otherwise the minimum-distance variant among candidates sharing the
       series' first class symbol; if its score falls at or below
       ``threshold``, the series is suffix-stripped (once by default, up
       to the policy's depth) and re-searched, and the stemmed winner
       replaces the full-series one only when its raw distance is
       strictly smaller;
    5. no candidates anywhere → UNKNOWN.
    """
    raw = token.raw
    if is_punctuation(raw):
        return NormalizationOutcome(kind=OutcomeKind.PUNCT)
    if foreign_pattern is not None:
        pattern = re.compile(foreign_pattern) if isinstance(foreign_pattern, str) else foreign_pattern
        if pattern.fullmatch(raw):
            return NormalizationOutcome(kind=OutcomeKind.FOREIGN)
    series = symbol_series(raw, table)
    if isinstance(series, NotReducible):
        return NormalizationOutcome(kind=OutcomeKind.FOREIGN)
    query = series.symbols

    exact = lexicon.exact_lookup(series)
    if exact:
        entry = exact[0]
        variant = next(v for v, s in entry.series_by_variant if s == query)
        return NormalizationOutcome(
            kind=OutcomeKind.MATCHED,
            entry=entry,
            variant=variant,
            match_score=1.0,
            distance=0,
            used_fallback=False,
        )

    best = _search(lexicon, query)
    if best is None:
        return NormalizationOutcome(kind=OutcomeKind.UNKNOWN)

    if best.score <= threshold:
        alternate: Candidate | None = None
        for stemmed in suffix_policy.stems(query):
            found = _search(lexicon, stemmed)
            if found is not None and (alternate is None or found.distance < alternate.distance):
                alternate = found
        if alternate is not None and alternate.distance < best.distance:
            return NormalizationOutcome(
                kind=OutcomeKind.MATCHED,
                entry=alternate.entry,
                variant=alternate.variant,
                match_score=alternate.score,
                distance=alternate.distance,
                used_fallback=True,
            )
    return NormalizationOutcome(
        kind=OutcomeKind.MATCHED,
        entry=best.entry,
        variant=best.variant,
        match_score=best.score,
        distance=best.distance,
        used_fallback=False,
    )


def normalize_document(
    tokens: list[TranscriptToken],
    lexicon: Lexicon,
    table: SymbolClassTable,
    suffix_policy: SuffixPolicy = DEFAULT_SUFFIX_POLICY,
    threshold: float = DEFAULT_THRESHOLD,
    foreign_pattern: re.Pattern | str | None = None,
) -> list[tuple[TranscriptToken, NormalizationOutcome]]:
    """Normalize a whole token stream; one outcome per token, order preserved."""
    return [
        (
            token,
            normalize_token(
                token,
                lexicon,
                table,
                suffix_policy=suffix_policy,
                threshold=threshold,
                foreign_pattern=foreign_pattern,
            ),
        )
        for token in tokens
    ]
