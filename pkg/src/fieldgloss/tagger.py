"""Deterministic POS tagging by lemma lookup.

The tag comes straight from the lexicon entry; the special outcome kinds
map to fixed tags (punctuation → PU, foreign → FW, unknown → UN). When a
lemma belongs to several entries with different tags — the grammaticalized
homographs — the entry marked as the originating class wins; with no such
mark the machine yields UN and emits a diagnostic so a human resolves it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from .lexicon import LexiconEntry, PosTag
from .normalizer import NormalizationOutcome, OutcomeKind

KIND_TAGS = {
    OutcomeKind.PUNCT: PosTag.PU,
    OutcomeKind.FOREIGN: PosTag.FW,
    OutcomeKind.UNKNOWN: PosTag.UN,
}


@dataclass(frozen=True)
class ConflictDiagnostic:
    """One unresolved (or resolved) POS conflict, machine-readable."""

    lemma: str
    tags: tuple[str, ...]
    chosen: str
    reason: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "lemma": self.lemma,
                "tags": list(self.tags),
                "chosen": self.chosen,
                "reason": self.reason,
            },
            ensure_ascii=False,
            sort_keys=True,
        )


DiagnosticSink = Callable[[ConflictDiagnostic], None]


def tag(outcome: NormalizationOutcome) -> PosTag:
    """Tag a single normalization outcome."""
    if outcome.kind is OutcomeKind.MATCHED:
        return outcome.entry.pos
    return KIND_TAGS[outcome.kind]


def resolve_conflict(
    entries: list[LexiconEntry],
    on_diagnostic: DiagnosticSink | None = None,
) -> PosTag:
    """Pick the tag for entries sharing one lemma surface.

    Entries agreeing on the tag (or a single entry) are trivial. Otherwise
    the entry flagged as the originating class decides; absent exactly one
    such flag the result is UN plus a diagnostic for human review.
    """
    if not entries:
        raise ValueError("resolve_conflict requires at least one entry")
    lemma = entries[0].lemma
    tags = sorted({e.pos.value for e in entries})
    if len(tags) == 1:
        return entries[0].pos
    origins = sorted({e.pos.value for e in entries if e.origin})
    if len(origins) == 1:
        return PosTag[origins[0]]
    reason = (
        "no entry marked as originating class"
        if not origins
        else f"multiple entries marked as originating class: {', '.join(origins)}"
    )
    if on_diagnostic is not None:
        on_diagnostic(
            ConflictDiagnostic(lemma=lemma, tags=tuple(tags), chosen="UN", reason=reason)
        )
    return PosTag.UN


def tag_lemma(
    lemma: str,
    lexicon,
    on_diagnostic: DiagnosticSink | None = None,
) -> PosTag:
    """Tag by looking the lemma up in the lexicon; UN if absent."""
    entries = lexicon.entries_for_lemma(lemma)
    if not entries:
        return PosTag.UN
    return resolve_conflict(entries, on_diagnostic)
