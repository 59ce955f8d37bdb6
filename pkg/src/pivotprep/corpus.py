"""Corpus ingestion, word tokenization, and frequency statistics.

A corpus is plain UTF-8 text, one sentence per line.  All text is NFC
normalized at ingestion so composed/decomposed variants are identical
everywhere downstream.
"""

from __future__ import annotations

import io
import string
import unicodedata
from collections import Counter
from dataclasses import dataclass


class CorpusError(ValueError):
    pass


# Codepoints detached as standalone words: ASCII punctuation plus the
# Devanagari Danda / Double Danda sentence markers shared by Indic text.
PUNCTUATION = frozenset(string.punctuation) | {"।", "॥"}


@dataclass(frozen=True)
class Corpus:
    """One sentence per line, NFC-normalized, no blank lines."""

    lines: tuple[str, ...]
    language_tag: str
    script: str = "mixed"

    def __len__(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class TokenizedSentence:
    words: tuple[str, ...]
    raw: str


@dataclass(frozen=True)
class FrequencyTable:
    """Word counts over a tokenized corpus; total is the sum of counts."""

    counts: dict[str, int]
    total: int

    def __post_init__(self):
        if self.total != sum(self.counts.values()):
            raise CorpusError("frequency table total does not match counts")


def ingest_corpus(stream, language_tag: str) -> Corpus:
    """Read UTF-8 text into a Corpus.

    Accepts a str, bytes, or file object (text or binary).  Each input
    line is NFC-normalized and stripped of trailing whitespace; blank
    lines are dropped.  Invalid UTF-8 raises CorpusError citing the
    byte offset.
    """
    if isinstance(stream, str):
        text = stream
    else:
        data = stream.read() if hasattr(stream, "read") else stream
        if isinstance(data, bytes):
            try:
                text = data.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusError(
                    f"invalid UTF-8 byte sequence at byte offset {exc.start}"
                ) from exc
        else:
            text = data
    lines = []
    for raw in text.splitlines():
        line = unicodedata.normalize("NFC", raw).rstrip()
        if line:
            lines.append(line)
    return Corpus(lines=tuple(lines), language_tag=language_tag)


def ingest_corpus_file(path, language_tag: str) -> Corpus:
    with io.open(path, "rb") as handle:
        return ingest_corpus(handle, language_tag)


def write_corpus(corpus: Corpus, path) -> None:
    with io.open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in corpus.lines:
            handle.write(line + "\n")


def tokenize_line(line: str) -> TokenizedSentence:
    """Split a line into words.

    Words are separated by Unicode whitespace; every punctuation
    codepoint (ASCII punctuation, Danda, Double Danda) is detached as
    its own word so sentence markers never stick to word statistics.
    """
    words: list[str] = []
    for chunk in line.split():
        buf: list[str] = []
        for ch in chunk:
            if ch in PUNCTUATION:
                if buf:
                    words.append("".join(buf))
                    buf = []
                words.append(ch)
            else:
                buf.append(ch)
        if buf:
            words.append("".join(buf))
    return TokenizedSentence(words=tuple(words), raw=line)


def build_frequency_table(corpus: Corpus) -> FrequencyTable:
    """Count tokenized words over the whole corpus."""
    counts: Counter[str] = Counter()
    for line in corpus.lines:
        counts.update(tokenize_line(line).words)
    return FrequencyTable(counts=dict(counts), total=sum(counts.values()))


def write_frequency_tsv(table: FrequencyTable, path) -> None:
    """Export `word\\tcount` rows, descending count, ties lexicographic."""
    rows = sorted(table.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    with io.open(path, "w", encoding="utf-8", newline="\n") as handle:
        for word, count in rows:
            handle.write(f"{word}\t{count}\n")


def distinct_words(corpus: Corpus) -> set[str]:
    out: set[str] = set()
    for line in corpus.lines:
        out.update(tokenize_line(line).words)
    return out
