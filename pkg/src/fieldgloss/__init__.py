"""fieldgloss: noisy field transcriptions to aligned, glossed, tagged corpora."""

from .corpus_io import (
    AlignedRecord,
    CorpusDocument,
    CorpusStats,
    compute_stats,
    parse_document,
    write_document,
)
from .evaluation import EvalReport, bleu, evaluate_documents, mean_wer, normalized_edit_distance
from .lexicon import Lexicon, LexiconEntry, PosTag, load_lexicon, parse_lexicon
from .normalizer import (
    NormalizationOutcome,
    OutcomeKind,
    SuffixPolicy,
    TranscriptToken,
    convert_score,
    levenshtein,
    normalize_document,
    normalize_token,
)
from .symbols import (
    NotReducible,
    SymbolClassTable,
    SymbolSeries,
    load_table,
    parse_table,
    symbol_series,
)
from .tagger import resolve_conflict, tag

__version__ = "0.1.0"

__all__ = [
    "AlignedRecord",
    "CorpusDocument",
    "CorpusStats",
    "EvalReport",
    "Lexicon",
    "LexiconEntry",
    "NormalizationOutcome",
    "NotReducible",
    "OutcomeKind",
    "PosTag",
    "SuffixPolicy",
    "SymbolClassTable",
    "SymbolSeries",
    "TranscriptToken",
    "bleu",
    "compute_stats",
    "convert_score",
    "evaluate_documents",
    "levenshtein",
    "load_lexicon",
    "load_table",
    "mean_wer",
    "normalize_document",
    "normalize_token",
    "normalized_edit_distance",
    "parse_document",
    "parse_lexicon",
    "parse_table",
    "resolve_conflict",
    "symbol_series",
    "tag",
    "write_document",
]
