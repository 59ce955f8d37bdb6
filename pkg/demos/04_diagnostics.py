"""Walkthrough: overlap and BLEU diagnostics.

Overlap measures how many of the transliterated low-resource corpus's
distinct words already exist in the pivot-language corpus (the shared
anchors).  BLEU between pseudo-translations and real text shows how far
word-by-word substitution gets when word order matches.
"""

from pivotprep import corpus_bleu, word_overlap
from pivotprep.corpus import Corpus
from pivotprep.metrics import format_bleu, format_overlap

# ---------------------------------------------------------------------
# Overlap: distinct words only, exact string match after NFC.
# ---------------------------------------------------------------------
lrl_translit = Corpus(("घर में किताब है", "पानी ठंडा है"), language_tag="pa-translit")
rpl = Corpus(("घर बड़ा है", "किताब अच्छी है", "चाय गरम है"), language_tag="hi")
print(format_overlap(word_overlap(lrl_translit, rpl)))

# ---------------------------------------------------------------------
# BLEU-4, corpus level, single reference, no smoothing.
# ---------------------------------------------------------------------
references = Corpus(("the cat sat on the mat", "a dog barked"), language_tag="en")
print("identity:", format_bleu(corpus_bleu(references, references)))

hypotheses = Corpus(("the cat sat on a mat", "a dog barked"), language_tag="en")
print("one substitution:", format_bleu(corpus_bleu(hypotheses, references)))

# Word order matters: the same bag of words, reversed, loses its
# higher-order n-grams and a zero precision floors the score to 0.
reversed_hyp = Corpus(("mat the on sat cat the", "barked dog a"), language_tag="en")
print("reversed:", format_bleu(corpus_bleu(reversed_hyp, references)))

# A short hypothesis pays the brevity penalty even at perfect precision.
short = Corpus(("the cat sat on", "a dog barked"), language_tag="en")
print("short:", format_bleu(corpus_bleu(short, references)))
