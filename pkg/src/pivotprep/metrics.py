"""Diagnostic metrics: distinct-word overlap and corpus BLEU.

BLEU here is corpus-level BLEU-4 with uniform weights, a single
reference per hypothesis, and no smoothing: any zero modified precision
gives a score of exactly 0.  Tokenization is tokenize_line everywhere.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import Corpus, distinct_words, tokenize_line


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class OverlapResult:
    common_distinct: int
    lrl_distinct: int
    percent: float


@dataclass(frozen=True)
class BleuResult:
    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    score: float
    hyp_length: int
    ref_length: int


def word_overlap(lrl_translit: Corpus, rpl: Corpus) -> OverlapResult:
    """Share of the transliterated LRL's distinct words also in the RPL."""
    lrl_words = distinct_words(lrl_translit)
    if not lrl_words:
        raise MetricsError("LRL corpus has no distinct words; overlap is undefined")
    rpl_words = distinct_words(rpl)
    common = len(lrl_words & rpl_words)
    return OverlapResult(
        common_distinct=common,
        lrl_distinct=len(lrl_words),
        percent=100.0 * common / len(lrl_words),
    )


def _ngram_counts(words: tuple[str, ...], n: int) -> Counter:
    return Counter(tuple(words[i : i + n]) for i in range(len(words) - n + 1))


def corpus_bleu(hypotheses: Corpus, references: Corpus) -> BleuResult:
    """Corpus BLEU-4: clipped n-gram counts pooled before division."""
    if len(hypotheses.lines) != len(references.lines):
        raise MetricsError(
            f"line count mismatch: {len(hypotheses.lines)} hypotheses vs "
            f"{len(references.lines)} references"
        )
    if not hypotheses.lines:
        raise MetricsError("empty hypothesis corpus")
    clipped = [0, 0, 0, 0]
    totals = [0, 0, 0, 0]
    hyp_length = 0
    ref_length = 0
    for hyp_line, ref_line in zip(hypotheses.lines, references.lines):
        hyp_words = tokenize_line(hyp_line).words
        ref_words = tokenize_line(ref_line).words
        hyp_length += len(hyp_words)
        ref_length += len(ref_words)
        for n in range(1, 5):
            hyp_counts = _ngram_counts(hyp_words, n)
            if not hyp_counts:
                continue
            ref_counts = _ngram_counts(ref_words, n)
            totals[n - 1] += sum(hyp_counts.values())
            clipped[n - 1] += sum(
                min(count, ref_counts[ngram]) for ngram, count in hyp_counts.items()
            )
    if hyp_length == 0:
        raise MetricsError("hypothesis corpus contains no words")
    precisions = tuple(c / t if t else 0.0 for c, t in zip(clipped, totals))
    if hyp_length >= ref_length:
        bp = 1.0
    else:
        bp = math.exp(1.0 - ref_length / hyp_length)
    if any(p == 0.0 for p in precisions):
        score = 0.0
    else:
        score = 100.0 * bp * math.exp(math.fsum(math.log(p) for p in precisions) / 4.0)
    return BleuResult(
        precisions=precisions,
        brevity_penalty=bp,
        score=score,
        hyp_length=hyp_length,
        ref_length=ref_length,
    )


def format_overlap(result: OverlapResult) -> str:
    return (
        f"overlap: common={result.common_distinct} "
        f"lrl_distinct={result.lrl_distinct} percent={result.percent:.4f}"
    )


def format_bleu(result: BleuResult) -> str:
    p1, p2, p3, p4 = result.precisions
    return (
        f"bleu: p1={p1:.4f} p2={p2:.4f} p3={p3:.4f} p4={p4:.4f} "
        f"bp={result.brevity_penalty:.4f} score={result.score:.4f}"
    )
