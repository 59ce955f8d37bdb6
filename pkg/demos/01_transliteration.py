"""Walkthrough: rule-based transliteration between Brahmic scripts.

The five supported Unicode blocks (Devanagari, Bengali-Assamese,
Gurmukhi, Gujarati, Oriya) are parallel by design, so a constant
codepoint offset does almost all the work; exception tables handle the
few divergent characters.
"""

from pivotprep import build_table, script_block, transliterate_corpus, transliterate_text
from pivotprep.corpus import Corpus

gurmukhi = script_block("gurmukhi")
devanagari = script_block("devanagari")
oriya = script_block("oriya")

# ---------------------------------------------------------------------
# A single word: Punjabi "kitab" (book) rendered in Devanagari.
# ---------------------------------------------------------------------
table = build_table(gurmukhi, devanagari)
word, report = transliterate_text("ਕਿਤਾਬ", table)
print(f"ਕਿਤਾਬ -> {word}")
print(f"  mapped={report.mapped_count} exceptions={report.exception_count} "
      f"passthrough={report.passthrough_count}")

# Text outside the source block is copied verbatim, so mixed-script
# lines survive untouched.
mixed, _ = transliterate_text("ਕਿਤਾਬ (book, 1995)", table)
print(f"mixed line -> {mixed}")

# ---------------------------------------------------------------------
# Round trips: any codepoint assigned on both ends comes back exactly.
# ---------------------------------------------------------------------
back_table = build_table(devanagari, gurmukhi)
once, _ = transliterate_text("ਕਿਤਾਬ", table)
twice, _ = transliterate_text(once, back_table)
print(f"round trip: ਕਿਤਾਬ -> {once} -> {twice}")

# ---------------------------------------------------------------------
# Exception tables override the offset rule.  One line per rule:
# hex source codepoint, a tab, space-separated hex target codepoints.
# ---------------------------------------------------------------------
rules = "# Oriya YYA maps to plain YA instead of its offset image\n0B5F\t092F\n"
oriya_table = build_table(oriya, devanagari, exception_stream=rules)
out, report = transliterate_text("ୟ", oriya_table)
print(f"exception: U+0B5F -> {out} (U+{ord(out):04X}), exception_count={report.exception_count}")

# ---------------------------------------------------------------------
# Whole corpora: line count and order are preserved, reports add up.
# ---------------------------------------------------------------------
corpus = Corpus(("ਮੈਂ ਘਰ ਜਾਂਦਾ ਹਾਂ।", "ਇਹ ਕਿਤਾਬ ਚੰਗੀ ਹੈ।"), language_tag="pa")
converted, report = transliterate_corpus(corpus, table)
for before, after in zip(corpus.lines, converted.lines):
    print(f"{before}  =>  {after}")
print(f"corpus report: mapped={report.mapped_count}")
