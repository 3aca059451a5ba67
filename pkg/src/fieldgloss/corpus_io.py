"""Read, write and validate the five-field aligned corpus format.

One line per gold-standard word, five tab-separated fields::

    original<TAB>normalized<TAB>gloss<TAB>certainty<TAB>pos

Two repair conventions handle the source transcription's broken spacing:
a word split by a spurious space carries a trailing ``&`` on the first
fragment's line (all other fields blank) and is annotated on the next
line; a missing word boundary is marked with ``#`` inside the original
field, the remainder moving to the next line with its own annotation.

The specials ``[punc]``, ``[foreign]`` and ``[unknown]`` are literal field
values. Certainty is a percentage with exactly one decimal, in (0, 100.0].
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .lexicon import PosTag

PUNC = "[punc]"
FOREIGN = "[foreign]"
UNKNOWN = "[unknown]"

_CERTAINTY_RE = re.compile(r"^\d+\.\d%$")


class CorpusParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class CorpusFormatError(ValueError):
    """Raised when a document violates an invariant and cannot be written."""


@dataclass(frozen=True)
class AlignedRecord:
    """One corpus line.

    A continuation record (original ending in ``&``) carries the blank
    string in every other field; its word is annotated on the next record.
    """

    original: str
    normalized: str
    gloss: str
    certainty: float | None
    pos: PosTag | None

    @property
    def is_continuation(self) -> bool:
        return self.original.endswith("&")

    def certainty_text(self) -> str:
        if self.certainty is None:
            return ""
        return f"{self.certainty:.1f}%"


def _check_certainty(value: float) -> float:
    if not (0.0 < value <= 100.0):
        raise CorpusFormatError(f"certainty {value} outside (0, 100.0]")
    if round(value, 1) != value:
        raise CorpusFormatError(f"certainty {value} not representable with one decimal")
    return value


def make_record(
    original: str,
    normalized: str,
    gloss: str,
    certainty: float,
    pos: PosTag,
) -> AlignedRecord:
    return AlignedRecord(original, normalized, gloss, _check_certainty(certainty), pos)


def make_continuation(fragment: str) -> AlignedRecord:
    """Record for a word fragment that joins with the next record's original."""
    original = fragment if fragment.endswith("&") else fragment + "&"
    return AlignedRecord(original, "", "", None, None)


@dataclass
class CorpusDocument:
    id: str
    records: list[AlignedRecord] = dc_field(default_factory=list)
    source: str = ""

    def logical_word_count(self) -> int:
        return sum(1 for r in self.records if not r.is_continuation)

    def logical_words(self) -> list[tuple[str, int]]:
        """(joined original, index of the annotated host record) per word.

        ``&`` continuation fragments merge into the next record's original;
        ``#`` markers are editorial and removed.
        """
        out: list[tuple[str, int]] = []
        pending: list[str] = []
        for idx, record in enumerate(self.records):
            if record.is_continuation:
                pending.append(record.original[:-1])
                continue
            original = "".join(pending) + record.original.replace("#", "")
            pending.clear()
            out.append((original, idx))
        return out

    def normalized_tokens(self) -> list[str]:
        return [r.normalized for r in self.records if not r.is_continuation]


def _parse_line(line: str, lineno: int, allow_legacy: bool) -> AlignedRecord:
    fields = line.split("\t")
    if len(fields) == 4 and allow_legacy:
        original, normalized, gloss, certainty_text = fields
        pos_text = None
    elif len(fields) == 5:
        original, normalized, gloss, certainty_text, pos_text = fields
    else:
        expected = "4 or 5" if allow_legacy else "5"
        raise CorpusParseError(
            f"expected {expected} tab-separated fields, got {len(fields)}", lineno
        )
    if not original:
        raise CorpusParseError("empty original field", lineno)

    if original.endswith("&"):
        rest = [normalized, gloss, certainty_text] + ([pos_text] if pos_text is not None else [])
        if any(rest):
            raise CorpusParseError(
                "continuation line (original ends with '&') must leave all other fields blank",
                lineno,
            )
        if "#" in original:
            raise CorpusParseError("'#' may not appear in a continuation line", lineno)
        return AlignedRecord(original, "", "", None, None)

    if original.count("#") > 1:
        raise CorpusParseError("'#' may appear at most once in an original field", lineno)
    if not _CERTAINTY_RE.match(certainty_text):
        raise CorpusParseError(
            f"malformed certainty {certainty_text!r} (expected e.g. 100.0%)", lineno
        )
    certainty = float(certainty_text[:-1])
    if not (0.0 < certainty <= 100.0):
        raise CorpusParseError(f"certainty {certainty_text!r} outside (0, 100.0]", lineno)

    if pos_text is None:
        # Legacy 4-field line: derive what the specials pin down; everything
        # else is UN until a re-tagging pass against a lexicon runs.
        if gloss == PUNC:
            pos = PosTag.PU
        elif normalized == FOREIGN:
            pos = PosTag.FW
        elif normalized == UNKNOWN:
            pos = PosTag.UN
        else:
            pos = PosTag.UN
    else:
        try:
            pos = PosTag[pos_text]
        except KeyError:
            raise CorpusParseError(f"unknown POS tag {pos_text!r}", lineno) from None
    return AlignedRecord(original, normalized, gloss, certainty, pos)


def parse_document(text: str, doc_id: str, *, allow_legacy: bool = False) -> CorpusDocument:
    """Parse one corpus file into a document.

    ``allow_legacy`` additionally accepts 4-field lines (no POS column),
    assigning PU/FW/UN from the specials and UN otherwise.
    """
    records: list[AlignedRecord] = []
    last_continuation_line = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if line == "":
            continue
        record = _parse_line(line, lineno, allow_legacy)
        records.append(record)
        last_continuation_line = lineno if record.is_continuation else None
    if last_continuation_line is not None:
        raise CorpusParseError(
            "document ends with an unresolved '&' continuation", last_continuation_line
        )
    return CorpusDocument(id=doc_id, records=records)


def write_document(doc: CorpusDocument) -> str:
    """Serialize a document; refuses documents violating format invariants."""
    lines = []
    pending_continuation = False
    for idx, record in enumerate(doc.records, 1):
        if record.is_continuation:
            if record.normalized or record.gloss or record.certainty is not None or record.pos is not None:
                raise CorpusFormatError(
                    f"record {idx}: continuation must leave all other fields blank"
                )
            if "#" in record.original[:-1]:
                raise CorpusFormatError(f"record {idx}: '#' inside a continuation line")
            lines.append("\t".join([record.original, "", "", "", ""]))
            pending_continuation = True
            continue
        pending_continuation = False
        if not record.original:
            raise CorpusFormatError(f"record {idx}: empty original field")
        if record.original.count("#") > 1:
            raise CorpusFormatError(f"record {idx}: more than one '#' in original")
        if record.certainty is None or record.pos is None:
            raise CorpusFormatError(f"record {idx}: missing certainty or POS tag")
        _check_certainty(record.certainty)
        lines.append(
            "\t".join(
                [
                    record.original,
                    record.normalized,
                    record.gloss,
                    record.certainty_text(),
                    record.pos.value,
                ]
            )
        )
    if pending_continuation:
        raise CorpusFormatError("document ends with an unresolved '&' continuation")
    return "".join(line + "\n" for line in lines)


def validate_text(text: str) -> list[str]:
    """Collect all format violations in a corpus file, one message per line.

    Unlike :func:`parse_document` this does not stop at the first problem.
    """
    problems: list[str] = []
    last_continuation_line = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if line == "":
            continue
        try:
            record = _parse_line(line, lineno, allow_legacy=False)
        except CorpusParseError as exc:
            problems.append(str(exc))
            last_continuation_line = None
            continue
        last_continuation_line = lineno if record.is_continuation else None
    if last_continuation_line is not None:
        problems.append(
            f"line {last_continuation_line}: document ends with an unresolved '&' continuation"
        )
    return problems


@dataclass
class CorpusStats:
    total_chars: int = 0
    total_words: int = 0
    mean_chars_per_text: float = 0.0
    mean_words_per_text: float = 0.0
    unique_words: int = 0
    mean_unique_words_per_text: float = 0.0
    sentences: int = 0
    mean_sentences_per_text: float = 0.0
    tag_histogram: dict[PosTag, int] = dc_field(default_factory=dict)


def _original_char_count(original: str) -> int:
    cleaned = original.replace("&", "").replace("#", "")
    cleaned = unicodedata.normalize("NFC", cleaned)
    return sum(1 for ch in cleaned if not ch.isspace())


def compute_stats(docs: list[CorpusDocument]) -> CorpusStats:
    """Corpus-level counts: characters, words, uniques, sentences, tags.

    Characters count NFC code points of the original fields with the
    editorial ``&``/``#`` markers removed; a sentence ends at each record
    whose normalized field is ``.``; unique words are normalized field
    values including punctuation.
    """
    stats = CorpusStats()
    if not docs:
        return stats
    global_unique: set[str] = set()
    unique_per_doc = 0
    histogram: Counter = Counter()
    for doc in docs:
        doc_tokens = doc.normalized_tokens()
        stats.total_words += len(doc_tokens)
        global_unique.update(doc_tokens)
        unique_per_doc += len(set(doc_tokens))
        stats.sentences += sum(1 for t in doc_tokens if t == ".")
        for record in doc.records:
            stats.total_chars += _original_char_count(record.original)
            if not record.is_continuation and record.pos is not None:
                histogram[record.pos] += 1
    n = len(docs)
    stats.unique_words = len(global_unique)
    stats.mean_chars_per_text = stats.total_chars / n
    stats.mean_words_per_text = stats.total_words / n
    stats.mean_unique_words_per_text = unique_per_doc / n
    stats.mean_sentences_per_text = stats.sentences / n
    stats.tag_histogram = dict(sorted(histogram.items(), key=lambda kv: kv[0].value))
    return stats


def format_stats_report(stats: CorpusStats) -> str:
    rows = [
        ("parameter", "total count"),
        ("total non-whitespace characters", str(stats.total_chars)),
        ("mean characters / text", f"{stats.mean_chars_per_text:.2f}"),
        ("total gold-standard words", str(stats.total_words)),
        ("mean words / text", f"{stats.mean_words_per_text:.2f}"),
        (
            "total unique gold-standard words (incl. punctuation)",
            str(stats.unique_words),
        ),
        ("mean unique words / text", f"{stats.mean_unique_words_per_text:.2f}"),
        ("total sentences", str(stats.sentences)),
        ("mean sentences / text", f"{stats.mean_sentences_per_text:.2f}"),
    ]
    lines = ["\t".join(row) for row in rows]
    lines.append("")
    lines.append("tag\ttokens")
    for pos, count in stats.tag_histogram.items():
        lines.append(f"{pos.value}\t{count}")
    return "\n".join(lines) + "\n"
