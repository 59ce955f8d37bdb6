"""Directional bilingual lexicons: load, merge, transliterate, weight.

Entries map one source word to an ordered list of distinct candidate
translations.  Multi-word targets are filtered at load time because
word-by-word translation needs exactly one target word per source word;
the skip count is returned so coverage loss stays auditable.
"""

from __future__ import annotations

import io
import unicodedata
from dataclasses import dataclass

from .corpus import FrequencyTable
from .translit import TransliterationTable, transliterate_text


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    direction: tuple[str, str]
    entries: dict[str, tuple[str, ...]]

    def __len__(self) -> int:
        return len(self.entries)

    def pair_count(self) -> int:
        return sum(len(cands) for cands in self.entries.values())


@dataclass(frozen=True)
class WeightedLexicon:
    """A lexicon whose candidates carry positive integer weights."""

    base: Lexicon
    weights: dict[str, tuple[int, ...]]

    @property
    def direction(self) -> tuple[str, str]:
        return self.base.direction

    def lookup(self, word: str) -> tuple[tuple[str, ...], tuple[int, ...]] | None:
        cands = self.base.entries.get(word)
        if cands is None:
            return None
        return cands, self.weights[word]


def load_lexicon(stream, direction: tuple[str, str]) -> tuple[Lexicon, int]:
    """Load a `source\\ttarget` TSV.

    Returns the lexicon and the count of skipped lines (multi-word or
    empty fields).  A line without exactly one tab is a hard error.
    """
    if isinstance(stream, (str, bytes)):
        stream = io.StringIO(stream.decode("utf-8") if isinstance(stream, bytes) else stream)
    entries: dict[str, list[str]] = {}
    seen: dict[str, set[str]] = {}
    skipped = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line:
            continue
        if line.count("\t") != 1:
            raise LexiconError(f"line {lineno}: expected exactly one tab in {line!r}")
        source, target = line.split("\t")
        source = unicodedata.normalize("NFC", source.strip())
        target = unicodedata.normalize("NFC", target.strip())
        if not source or not target or any(ch.isspace() for ch in target):
            skipped += 1
            continue
        bucket = entries.setdefault(source, [])
        seen_set = seen.setdefault(source, set())
        if target not in seen_set:
            bucket.append(target)
            seen_set.add(target)
    frozen = {src: tuple(cands) for src, cands in entries.items()}
    return Lexicon(direction=direction, entries=frozen), skipped


def load_lexicon_file(path, direction: tuple[str, str]) -> tuple[Lexicon, int]:
    with io.open(path, "r", encoding="utf-8") as handle:
        return load_lexicon(handle, direction)


def write_lexicon_tsv(lexicon: Lexicon, path) -> None:
    """Export one `source\\ttarget` row per pair, sources in lexicographic order."""
    with io.open(path, "w", encoding="utf-8", newline="\n") as handle:
        for source in sorted(lexicon.entries):
            for target in lexicon.entries[source]:
                handle.write(f"{source}\t{target}\n")


def merge_lexicons(a: Lexicon, b: Lexicon) -> Lexicon:
    """Union of two same-direction lexicons; a's candidates come first."""
    if a.direction != b.direction:
        raise LexiconError(f"direction mismatch: {a.direction} vs {b.direction}")
    entries: dict[str, tuple[str, ...]] = dict(a.entries)
    for source, cands in b.entries.items():
        if source in entries:
            existing = entries[source]
            extra = tuple(c for c in cands if c not in existing)
            if extra:
                entries[source] = existing + extra
        else:
            entries[source] = cands
    return Lexicon(direction=a.direction, entries=entries)


def transliterate_lexicon(
    lexicon: Lexicon,
    table: TransliterationTable,
    side: str,
) -> Lexicon:
    """Transliterate the chosen side ("source", "target", or "both").

    Source words that collide after transliteration have their
    candidate lists merged, preserving first-seen order.
    """
    if side not in ("source", "target", "both"):
        raise LexiconError(f"side must be source, target, or both, got {side!r}")
    do_source = side in ("source", "both")
    do_target = side in ("target", "both")
    entries: dict[str, tuple[str, ...]] = {}
    for source, cands in lexicon.entries.items():
        new_source = transliterate_text(source, table)[0] if do_source else source
        if do_target:
            new_cands = []
            for cand in cands:
                converted = transliterate_text(cand, table)[0]
                if converted not in new_cands:
                    new_cands.append(converted)
            cands = tuple(new_cands)
        if new_source in entries:
            existing = entries[new_source]
            entries[new_source] = existing + tuple(c for c in cands if c not in existing)
        else:
            entries[new_source] = cands
    return Lexicon(direction=lexicon.direction, entries=entries)


def weight_lexicon(lexicon: Lexicon, freq: FrequencyTable) -> WeightedLexicon:
    """Attach target-corpus frequencies to candidates, floored at 1.

    The floor keeps every candidate sampleable: dictionary words absent
    from the monolingual corpus still get weight 1.
    """
    weights = {
        source: tuple(max(1, freq.counts.get(cand, 1)) for cand in cands)
        for source, cands in lexicon.entries.items()
    }
    return WeightedLexicon(base=lexicon, weights=weights)
