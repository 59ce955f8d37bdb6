"""Word-by-word pseudo-translation with monotonic alignment.

Each source word is replaced by one candidate from a weighted lexicon;
out-of-vocabulary words and punctuation copy through unchanged, so the
target always has the same word count as the source and the alignment
is exactly the diagonal (i, i).

Reproducibility contract: every sentence gets its own RNG stream,
derived by hashing (seed, provenance, line index) with SHA-256.  Output
is therefore independent of processing order and safe to parallelize.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
import random
from dataclasses import dataclass

from .corpus import PUNCTUATION, Corpus, TokenizedSentence, tokenize_line
from .lexicon import WeightedLexicon


class PseudoTranslateError(ValueError):
    pass


# Candidate-selection strategies.
STRATEGIES = ("first", "max", "weighted", "root_weighted")

PROVENANCE_RPL_TO_LRL = "R_to_L"
PROVENANCE_LRL_TO_RPL = "LR_to_R"
PROVENANCES = (PROVENANCE_RPL_TO_LRL, PROVENANCE_LRL_TO_RPL)


def normalize_strategy(name: str) -> str:
    strategy = name.strip().lower().replace("-", "_")
    if strategy not in STRATEGIES:
        raise PseudoTranslateError(f"unknown strategy {name!r}; supported: {', '.join(STRATEGIES)}")
    return strategy


@dataclass(frozen=True)
class AlignedSentencePair:
    source_words: tuple[str, ...]
    target_words: tuple[str, ...]
    alignment: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class AlignedPairSet:
    pairs: tuple[AlignedSentencePair, ...]
    provenances: tuple[str, ...]
    indices: tuple[int, ...]
    seed: int


def derive_rng(seed: int, provenance: str, index: int) -> random.Random:
    """Per-sentence RNG stream from (seed, provenance, line index)."""
    digest = hashlib.sha256(f"{seed}:{provenance}:{index}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def select_candidate(
    candidates: tuple[str, ...],
    weights: tuple[int, ...],
    strategy: str,
    rng: random.Random,
) -> str:
    """Pick one candidate.

    first: position 0.  max: highest weight, ties to the lowest index.
    weighted: probability proportional to weight.  root_weighted:
    probability proportional to the square root of the weight.
    """
    if not candidates:
        raise PseudoTranslateError("select_candidate requires a non-empty candidate list")
    if len(weights) != len(candidates):
        raise PseudoTranslateError("weights must parallel candidates")
    if strategy == "first":
        return candidates[0]
    if strategy == "max":
        best = max(range(len(candidates)), key=lambda i: (weights[i], -i))
        return candidates[best]
    if strategy == "weighted":
        scores = [float(w) for w in weights]
    elif strategy == "root_weighted":
        scores = [math.sqrt(w) for w in weights]
    else:
        raise PseudoTranslateError(f"unknown strategy {strategy!r}")
    pick = rng.random() * sum(scores)
    acc = 0.0
    for cand, score in zip(candidates, scores):
        acc += score
        if pick < acc:
            return cand
    return candidates[-1]


def pseudo_translate_sentence(
    sentence: TokenizedSentence,
    lexicon: WeightedLexicon,
    strategy: str,
    rng: random.Random,
) -> AlignedSentencePair:
    """Translate word by word; OOV words and punctuation copy through."""
    target: list[str] = []
    for word in sentence.words:
        entry = None if word in PUNCTUATION else lexicon.lookup(word)
        if entry is None:
            target.append(word)
        else:
            cands, weights = entry
            target.append(select_candidate(cands, weights, strategy, rng))
    alignment = tuple((i, i) for i in range(len(sentence.words)))
    return AlignedSentencePair(
        source_words=sentence.words,
        target_words=tuple(target),
        alignment=alignment,
    )


def build_pseudo_parallel(
    rpl_corpus: Corpus,
    lrl_translit_corpus: Corpus,
    lex_rpl_to_lrl: WeightedLexicon,
    lex_lrl_to_rpl: WeightedLexicon,
    strategy: str,
    seed: int,
) -> AlignedPairSet:
    """Union of the two pseudo-parallel corpora.

    The RPL corpus is translated toward the (transliterated) LRL and the
    transliterated LRL corpus toward the RPL.  One pair per input line;
    each pair's RNG comes from derive_rng, so results do not depend on
    processing order.
    """
    strategy = normalize_strategy(strategy)
    pairs: list[AlignedSentencePair] = []
    provenances: list[str] = []
    indices: list[int] = []
    jobs = (
        (PROVENANCE_RPL_TO_LRL, rpl_corpus, lex_rpl_to_lrl),
        (PROVENANCE_LRL_TO_RPL, lrl_translit_corpus, lex_lrl_to_rpl),
    )
    for provenance, corpus, lexicon in jobs:
        for index, line in enumerate(corpus.lines):
            rng = derive_rng(seed, provenance, index)
            pair = pseudo_translate_sentence(tokenize_line(line), lexicon, strategy, rng)
            pairs.append(pair)
            provenances.append(provenance)
            indices.append(index)
    return AlignedPairSet(
        pairs=tuple(pairs),
        provenances=tuple(provenances),
        indices=tuple(indices),
        seed=seed,
    )


def write_pairs_jsonl(pair_set: AlignedPairSet, path) -> None:
    """One JSON object per pair: src, tgt, align, prov, idx."""
    with io.open(path, "w", encoding="utf-8", newline="\n") as handle:
        for pair, prov, idx in zip(pair_set.pairs, pair_set.provenances, pair_set.indices):
            obj = {
                "src": list(pair.source_words),
                "tgt": list(pair.target_words),
                "align": [list(ij) for ij in pair.alignment],
                "prov": prov,
                "idx": idx,
            }
            handle.write(json.dumps(obj, ensure_ascii=False) + "\n")


def read_pairs_jsonl(path, seed: int = 0) -> AlignedPairSet:
    pairs: list[AlignedSentencePair] = []
    provenances: list[str] = []
    indices: list[int] = []
    with io.open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            if not raw.strip():
                continue
            obj = json.loads(raw)
            pairs.append(
                AlignedSentencePair(
                    source_words=tuple(obj["src"]),
                    target_words=tuple(obj["tgt"]),
                    alignment=tuple((int(i), int(j)) for i, j in obj["align"]),
                )
            )
            provenances.append(obj["prov"])
            indices.append(int(obj["idx"]))
    return AlignedPairSet(
        pairs=tuple(pairs), provenances=tuple(provenances), indices=tuple(indices), seed=seed
    )
