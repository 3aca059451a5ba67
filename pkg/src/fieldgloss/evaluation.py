"""Score machine pre-annotations against gold documents.

Word error rate is approximated by the normalized edit distance of
Marzal & Vidal: the minimum over complete edit paths of (path weight /
path length), where a path's length counts every elementary operation
including matches. This differs from the naive distance/max-length ratio
and needs its own dynamic program, indexed by path length.

BLEU follows the original corpus-level definition: clipped modified
n-gram precision, geometric mean up to each order, brevity penalty
``exp(1 - r/c)`` when the hypothesis is shorter than the reference. Zero
n-gram counts are reported as 0 without smoothing.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .corpus_io import CorpusDocument

_INF = np.iinfo(np.int64).max // 4


def normalized_edit_distance(a, b) -> float:
    """Minimum over edit paths of (weight / length), unit edit weights.

    Matches weigh 0 but still lengthen the path; insertions, deletions
    and substitutions weigh 1. Equals 0 iff the sequences are equal; the
    pair of empty sequences is defined as 0.
    """
    n, m = len(a), len(b)
    if n == 0 and m == 0:
        return 0.0
    cost = np.ones((n, m), dtype=np.int64)
    for i in range(n):
        ai = a[i]
        for j in range(m):
            if ai == b[j]:
                cost[i, j] = 0
    prev = np.full((n + 1, m + 1), _INF, dtype=np.int64)
    prev[0, 0] = 0
    best: Fraction | None = None
    for length in range(1, n + m + 1):
        cur = np.full((n + 1, m + 1), _INF, dtype=np.int64)
        cur[1:, :] = prev[:-1, :] + 1                                   # deletion
        np.minimum(cur[:, 1:], prev[:, :-1] + 1, out=cur[:, 1:])        # insertion
        if n and m:
            np.minimum(cur[1:, 1:], prev[:-1, :-1] + cost, out=cur[1:, 1:])
        weight = int(cur[n, m])
        if weight < _INF:
            ratio = Fraction(weight, length)
            if best is None or ratio < best:
                best = ratio
        prev = cur
    return float(best)


def mean_wer(pairs: list[tuple[CorpusDocument, CorpusDocument]]) -> float:
    """Mean per-document NED over normalized-token sequences.

    Each pair is (hypothesis document, gold document); tokens are the
    logical words' normalized fields.
    """
    if not pairs:
        raise ValueError("mean_wer requires at least one document pair")
    total = 0.0
    for hyp, gold in pairs:
        total += normalized_edit_distance(hyp.normalized_tokens(), gold.normalized_tokens())
    return total / len(pairs)


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(
    hypotheses: list[list[str]],
    references: list[list[str]],
    max_n: int = 4,
) -> dict[int, float]:
    """Corpus-level BLEU-1..BLEU-max_n over parallel token sequences."""
    if not hypotheses:
        raise ValueError("bleu requires a non-empty corpus")
    if len(hypotheses) != len(references):
        raise ValueError(
            f"hypothesis/reference counts differ: {len(hypotheses)} vs {len(references)}"
        )
    clipped = [0] * (max_n + 1)
    totals = [0] * (max_n + 1)
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, max_n + 1):
            hyp_counts = _ngrams(hyp, n)
            ref_counts = _ngrams(ref, n)
            totals[n] += sum(hyp_counts.values())
            clipped[n] += sum(
                min(count, ref_counts.get(gram, 0)) for gram, count in hyp_counts.items()
            )
    if hyp_len == 0:
        raise ValueError("bleu requires non-empty hypothesis tokens")
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    precisions = [
        (clipped[n] / totals[n]) if totals[n] > 0 else 0.0 for n in range(max_n + 1)
    ]
    scores: dict[int, float] = {}
    for n in range(1, max_n + 1):
        if any(precisions[k] == 0.0 for k in range(1, n + 1)):
            scores[n] = 0.0
            continue
        log_mean = sum(math.log(precisions[k]) for k in range(1, n + 1)) / n
        scores[n] = brevity * math.exp(log_mean)
    return scores


def bleu_documents(
    pairs: list[tuple[CorpusDocument, CorpusDocument]],
    max_n: int = 4,
) -> dict[int, float]:
    return bleu(
        [hyp.normalized_tokens() for hyp, _ in pairs],
        [gold.normalized_tokens() for _, gold in pairs],
        max_n=max_n,
    )


@dataclass
class EvalReport:
    wer: float
    bleu: dict[int, float]
    bleu_per_doc_mean: dict[int, float] = field(default_factory=dict)
    hyp_tokens: int = 0
    ref_tokens: int = 0


def evaluate_documents(
    pairs: list[tuple[CorpusDocument, CorpusDocument]],
    max_n: int = 4,
) -> EvalReport:
    """Full report for paired hypothesis/gold documents."""
    if not pairs:
        raise ValueError("evaluation requires at least one document pair")
    per_doc = [
        bleu([hyp.normalized_tokens()], [gold.normalized_tokens()], max_n=max_n)
        for hyp, gold in pairs
    ]
    per_doc_mean = {
        n: sum(scores[n] for scores in per_doc) / len(per_doc) for n in range(1, max_n + 1)
    }
    return EvalReport(
        wer=mean_wer(pairs),
        bleu=bleu_documents(pairs, max_n=max_n),
        bleu_per_doc_mean=per_doc_mean,
        hyp_tokens=sum(len(h.normalized_tokens()) for h, _ in pairs),
        ref_tokens=sum(len(g.normalized_tokens()) for _, g in pairs),
    )


def format_eval_report(report: EvalReport) -> str:
    lines = ["Metric\tPerformance", f"WER\t{report.wer:.4f}"]
    for n in sorted(report.bleu):
        lines.append(f"BLEU-{n}\t{report.bleu[n]:.4f}")
    if report.bleu_per_doc_mean:
        lines.append("")
        lines.append("Metric\tMean per text")
        for n in sorted(report.bleu_per_doc_mean):
            lines.append(f"BLEU-{n}\t{report.bleu_per_doc_mean[n]:.4f}")
    return "\n".join(lines) + "\n"
