"""Penn Treebank to BIS top-level POS tag conversion.

Most Penn tags map one-to-one; four determiner/wh tags split by word,
so the lookup is lexicalized for those (with a per-tag default).
Punctuation symbols all collapse to RD and are accepted either as
literal Penn tags (".", ",", ...) or under the synthetic tag PUNCT.
"""

from __future__ import annotations


class TagMappingError(ValueError):
    pass


PUNCTUATION_SYMBOLS = ("#", ".", ",", "$", '"', "(", ")", ":", "-", "''", "'")

SIMPLE: dict[str, str] = {
    "CC": "CC",
    "CD": "QT",
    "EX": "RD",
    "FW": "RD",
    "IN": "PSP",
    "JJ": "JJ",
    "JJR": "JJ",
    "JJS": "JJ",
    "LS": "QT",
    "MD": "V",
    "NN": "N",
    "NNS": "N",
    "NNP": "N",
    "NNPS": "N",
    "POS": "PSP",
    "PRP": "PR",
    "PRP$": "PR",
    "RB": "RB",
    "RBR": "RB",
    "RBS": "RB",
    "RP": "RP",
    "SYM": "RD",
    "TO": "RP",
    "UH": "RP",
    "VB": "V",
    "VBD": "V",
    "VBG": "V",
    "VBN": "V",
    "VBP": "V",
    "VBZ": "V",
    "WP": "PR",
    "WP$": "PR",
    "AFX": "RD",
    "-LRB-": "RD",
    "-RRB-": "RD",
    "PUNCT": "RD",
}
SIMPLE.update({sym: "RD" for sym in PUNCTUATION_SYMBOLS})

LEXICALIZED: dict[tuple[str, str], str] = {
    ("PDT", "all"): "QT",
    ("PDT", "half"): "QT",
    ("PDT", "such"): "DM",
    ("WDT", "which"): "PR",
    ("WDT", "that"): "PR",
    ("WDT", "whatever"): "RP",
    ("DT", "some"): "QT",
    ("DT", "every"): "QT",
    ("DT", "both"): "QT",
    ("DT", "all"): "QT",
    ("DT", "another"): "QT",
    ("DT", "a"): "QT",
    ("DT", "an"): "QT",
    ("DT", "this"): "DM",
    ("DT", "these"): "DM",
    ("DT", "the"): "DM",
    ("DT", "those"): "PR",
    ("DT", "that"): "PR",
    ("WRB", "how"): "PR",
    ("WRB", "wherever"): "PR",
    ("WRB", "when"): "PR",
    ("WRB", "where"): "PR",
    ("WRB", "whenever"): "RB",
    ("WRB", "why"): "RB",
}

DEFAULTS: dict[str, str] = {
    "PDT": "QT",
    "WDT": "PR",
    "DT": "QT",
    "WRB": "PR",
}


def supported_tags() -> tuple[str, ...]:
    return tuple(sorted(set(SIMPLE) | set(DEFAULTS)))


def map_penn_to_bis(tag: str, word: str) -> str:
    """Map one (Penn tag, word) pair to its BIS top-level tag.

    The word matters only for the lexicalized tags (PDT, WDT, DT, WRB);
    it is lowercased for that lookup.  Unknown tags raise.
    """
    key = (tag, word.lower())
    if key in LEXICALIZED:
        return LEXICALIZED[key]
    if tag in DEFAULTS:
        return DEFAULTS[tag]
    if tag in SIMPLE:
        return SIMPLE[tag]
    raise TagMappingError(
        f"unknown Penn tag {tag!r}; supported tags: {', '.join(supported_tags())}"
    )
