"""Batch pre-annotation: raw transcription text to an aligned corpus document.

The transcription input is plain UTF-8 text with whitespace-separated
tokens. Two repair conventions mirror the corpus format: a token ending in
``&`` joins the following token into one logical word (the matcher sees the
joined word; the output preserves the fragment lines), and ``#`` inside a
token splits it at a missing word boundary into two logical words.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus_io import (
    FOREIGN,
    PUNC,
    UNKNOWN,
    AlignedRecord,
    CorpusDocument,
    make_continuation,
    make_record,
)
from .lexicon import Lexicon, PosTag
from .normalizer import (
    DEFAULT_SUFFIX_POLICY,
    DEFAULT_THRESHOLD,
    NormalizationOutcome,
    OutcomeKind,
    SuffixPolicy,
    TranscriptToken,
    normalize_document,
)
from .symbols import SymbolClassTable
from .tagger import DiagnosticSink, resolve_conflict, tag


def tokenize_transcription(text: str) -> list[TranscriptToken]:
    """Split transcription text into logical tokens.

    Joins ``&`` fragments and splits at ``#`` marks; positions are the
    logical token indexes, 0-based and strictly increasing.
    """
    tokens: list[TranscriptToken] = []
    position = 0
    pending: list[str] = []

    def emit(raw: str, joined: tuple[str, ...] | None, split: bool):
        nonlocal position
        if not raw:
            return
        tokens.append(
            TranscriptToken(raw=raw, position=position, joined_from=joined, split_marker=split)
        )
        position += 1

    for word in text.split():
        if word.endswith("&") and len(word) > 1:
            pending.append(word[:-1])
            continue
        if pending:
            pending.append(word)
            fragments = tuple(pending)
            pending.clear()
            emit("".join(fragments), fragments, split=False)
            continue
        if "#" in word:
            head, _, tail = word.partition("#")
            emit(head, None, split=True)
            emit(tail, None, split=False)
            continue
        emit(word, None, split=False)
    if pending:
        # Dangling '&' fragment at end of input: treat as a plain word.
        emit("".join(pending), None, split=False)
    return tokens


def _machine_fields(
    outcome: NormalizationOutcome,
    raw: str,
    lexicon: Lexicon,
    on_diagnostic: DiagnosticSink | None,
) -> tuple[str, str, float, PosTag]:
    """(normalized, gloss, certainty, pos) for one machine outcome."""
    if outcome.kind is OutcomeKind.PUNCT:
        return raw, PUNC, 100.0, PosTag.PU
    if outcome.kind is OutcomeKind.FOREIGN:
        return FOREIGN, FOREIGN, 100.0, PosTag.FW
    if outcome.kind is OutcomeKind.UNKNOWN:
        return UNKNOWN, UNKNOWN, 100.0, PosTag.UN
    entry = outcome.entry
    homographs = lexicon.entries_for_lemma(entry.lemma)
    if len(homographs) > 1:
        pos = resolve_conflict(homographs, on_diagnostic)
    else:
        pos = tag(outcome)
    certainty = round(outcome.match_score * 100.0, 1)
    return entry.lemma, entry.gloss, certainty, pos


def records_from_outcomes(
    normalized: list[tuple[TranscriptToken, NormalizationOutcome]],
    lexicon: Lexicon,
    on_diagnostic: DiagnosticSink | None = None,
) -> list[AlignedRecord]:
    """Render outcomes as aligned records, restoring ``&``/``#`` line shape."""
    records: list[AlignedRecord] = []
    for token, outcome in normalized:
        norm, gloss, certainty, pos = _machine_fields(
            outcome, token.raw, lexicon, on_diagnostic
        )
        if token.joined_from:
            for fragment in token.joined_from[:-1]:
                records.append(make_continuation(fragment))
            original = token.joined_from[-1]
        else:
            original = token.raw + "#" if token.split_marker else token.raw
        records.append(make_record(original, norm, gloss, certainty, pos))
    return records


@dataclass
class PipelineConfig:
    suffix_policy: SuffixPolicy = DEFAULT_SUFFIX_POLICY
    threshold: float = DEFAULT_THRESHOLD
    foreign_pattern: str | None = None
    top_k: int = 5


def pre_annotate(
    text: str,
    doc_id: str,
    lexicon: Lexicon,
    table: SymbolClassTable,
    config: PipelineConfig | None = None,
    on_diagnostic: DiagnosticSink | None = None,
) -> CorpusDocument:
    """Run the full pre-annotation pipeline over one transcription text."""
    config = config or PipelineConfig()
    tokens = tokenize_transcription(text)
    normalized = normalize_document(
        tokens,
        lexicon,
        table,
        suffix_policy=config.suffix_policy,
        threshold=config.threshold,
        foreign_pattern=config.foreign_pattern,
    )
    records = records_from_outcomes(normalized, lexicon, on_diagnostic)
    return CorpusDocument(id=doc_id, records=records)


def retag_document(
    doc: CorpusDocument,
    lexicon: Lexicon,
    on_diagnostic: DiagnosticSink | None = None,
) -> CorpusDocument:
    """Recompute POS tags from normalized fields (the legacy-upgrade pass)."""
    from .tagger import tag_lemma

    new_records: list[AlignedRecord] = []
    for record in doc.records:
        if record.is_continuation:
            new_records.append(record)
            continue
        if record.gloss == PUNC or _all_punct(record.normalized):
            pos = PosTag.PU
        elif record.normalized == FOREIGN:
            pos = PosTag.FW
        elif record.normalized == UNKNOWN:
            pos = PosTag.UN
        else:
            pos = tag_lemma(record.normalized, lexicon, on_diagnostic)
        new_records.append(
            AlignedRecord(record.original, record.normalized, record.gloss, record.certainty, pos)
        )
    return CorpusDocument(id=doc.id, records=new_records, source=doc.source)


def _all_punct(text: str) -> bool:
    from .normalizer import is_punctuation

    return is_punctuation(text)
