"""Subword vocabulary induction, encoding, and extension.

Training is frequency-based pair merging over word types weighted by
corpus frequency.  Word-internal symbols carry the ## continuation
prefix, so trained vocabularies encode and detokenize exactly like
WordPiece vocabularies: greedy longest-match per word, any unmatchable
remainder collapses the whole word to [UNK].
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass, field

from .corpus import FrequencyTable, TokenizedSentence


class VocabError(ValueError):
    pass


CONTINUATION_PREFIX = "##"
UNK_TOKEN = "[UNK]"


@dataclass(frozen=True)
class SubwordVocab:
    tokens: tuple[str, ...]
    merges: tuple[tuple[str, str], ...] = ()
    continuation_prefix: str = CONTINUATION_PREFIX
    unk_token: str = UNK_TOKEN
    _token_set: frozenset = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_token_set", frozenset(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._token_set


@dataclass(frozen=True)
class EncodedSentence:
    tokens: tuple[str, ...]
    word_end_indices: tuple[int, ...]


def _word_symbols(word: str) -> list[str]:
    return [word[0]] + [CONTINUATION_PREFIX + ch for ch in word[1:]]


def _merge_token(left: str, right: str) -> str:
    return left + right.removeprefix(CONTINUATION_PREFIX)


def _count_pairs(sequences: dict[str, list[str]], freq: dict[str, int]) -> Counter:
    counts: Counter = Counter()
    for word, symbols in sequences.items():
        weight = freq[word]
        for pair in zip(symbols, symbols[1:]):
            counts[pair] += weight
    return counts


def _apply_merge(symbols: list[str], pair: tuple[str, str], merged: str) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(symbols):
        if i + 1 < len(symbols) and symbols[i] == pair[0] and symbols[i + 1] == pair[1]:
            out.append(merged)
            i += 2
        else:
            out.append(symbols[i])
            i += 1
    return out


def train_vocab(freq: FrequencyTable, target_size: int) -> SubwordVocab:
    """Induce a subword vocabulary of at most target_size tokens.

    The initial vocabulary is [UNK] plus both the bare and ##-prefixed
    form of every codepoint observed in the word types.  Adjacent symbol
    pairs are then merged greedily by corpus frequency (ties broken
    lexicographically on the concatenated pair) until the budget is
    reached or no pair occurs at least twice.
    """
    if not freq.counts:
        raise VocabError("cannot train a vocabulary from an empty frequency table")
    alphabet: set[str] = set()
    for word in freq.counts:
        for ch in word:
            alphabet.add(ch)
            alphabet.add(CONTINUATION_PREFIX + ch)
    tokens: list[str] = [UNK_TOKEN] + sorted(alphabet)
    if target_size < len(tokens):
        raise VocabError(
            f"target_size {target_size} is below the minimum {len(tokens)} "
            f"(alphabet plus {UNK_TOKEN})"
        )
    sequences = {word: _word_symbols(word) for word in freq.counts}
    token_set = set(tokens)
    merges: list[tuple[str, str]] = []
    while len(tokens) < target_size:
        pair_counts = _count_pairs(sequences, freq.counts)
        if not pair_counts:
            break
        best_count = max(pair_counts.values())
        if best_count < 2:
            break
        best_pair = min(
            (p for p, c in pair_counts.items() if c == best_count),
            key=lambda p: (p[0] + p[1], p),
        )
        merged = _merge_token(*best_pair)
        merges.append(best_pair)
        if merged not in token_set:
            tokens.append(merged)
            token_set.add(merged)
        for word, symbols in sequences.items():
            if len(symbols) > 1:
                sequences[word] = _apply_merge(symbols, best_pair, merged)
    return SubwordVocab(tokens=tuple(tokens), merges=tuple(merges))


def _encode_word(word: str, vocab: SubwordVocab) -> list[str]:
    pieces: list[str] = []
    start = 0
    while start < len(word):
        end = len(word)
        found = None
        while end > start:
            piece = word[start:end]
            if start > 0:
                piece = vocab.continuation_prefix + piece
            if piece in vocab:
                found = piece
                break
            end -= 1
        if found is None:
            return [vocab.unk_token]
        pieces.append(found)
        start = end
    return pieces


def encode_words(sentence: TokenizedSentence, vocab: SubwordVocab) -> EncodedSentence:
    """Greedy longest-match encoding with per-word end positions."""
    tokens: list[str] = []
    word_ends: list[int] = []
    for word in sentence.words:
        pieces = _encode_word(word, vocab)
        tokens.extend(pieces)
        word_ends.append(len(tokens) - 1)
    return EncodedSentence(tokens=tuple(tokens), word_end_indices=tuple(word_ends))


def decode_tokens(tokens, vocab: SubwordVocab) -> str:
    """Strip continuation prefixes and join; inverse of a non-UNK encoding."""
    prefix = vocab.continuation_prefix
    return "".join(t[len(prefix):] if t.startswith(prefix) else t for t in tokens)


def extend_vocab(base: SubwordVocab, new: SubwordVocab) -> SubwordVocab:
    """Append new tokens to base, skipping exact duplicates."""
    if base.continuation_prefix != new.continuation_prefix or base.unk_token != new.unk_token:
        raise VocabError("vocabularies disagree on continuation prefix or unk token")
    existing = set(base.tokens)
    added = tuple(t for t in new.tokens if t not in existing)
    return SubwordVocab(
        tokens=base.tokens + added,
        merges=base.merges + new.merges,
        continuation_prefix=base.continuation_prefix,
        unk_token=base.unk_token,
    )


def write_vocab(vocab: SubwordVocab, vocab_path, merges_path=None) -> None:
    """One token per line (line index = token id); merges as `left right` rows."""
    with io.open(vocab_path, "w", encoding="utf-8", newline="\n") as handle:
        for token in vocab.tokens:
            handle.write(token + "\n")
    if merges_path is not None:
        with io.open(merges_path, "w", encoding="utf-8", newline="\n") as handle:
            for left, right in vocab.merges:
                handle.write(f"{left} {right}\n")


def read_vocab(vocab_path, merges_path=None) -> SubwordVocab:
    with io.open(vocab_path, "r", encoding="utf-8") as handle:
        tokens = tuple(line.rstrip("\n") for line in handle if line.rstrip("\n"))
    merges: tuple[tuple[str, str], ...] = ()
    if merges_path is not None:
        with io.open(merges_path, "r", encoding="utf-8") as handle:
            merges = tuple(
                tuple(line.split())  # type: ignore[misc]
                for line in handle
                if line.strip()
            )
    return SubwordVocab(tokens=tokens, merges=merges)
