"""Walkthrough: subword vocabulary training, encoding, and extension.

Training merges the most frequent adjacent symbol pair step by step;
word-internal pieces carry the ## prefix, so encodings detokenize by
stripping ## and concatenating.
"""

from pivotprep import build_frequency_table, encode_words, extend_vocab, train_vocab
from pivotprep.corpus import Corpus, tokenize_line
from pivotprep.subword import decode_tokens

# ---------------------------------------------------------------------
# Train on a tiny frequency table and watch the merges happen.
# ---------------------------------------------------------------------
corpus = Corpus(
    ("low low low low low", "lower lower", "newest newest newest newest newest newest",
     "widest widest widest"),
    language_tag="en",
)
freq = build_frequency_table(corpus)
vocab = train_vocab(freq, target_size=40)
print(f"{len(vocab)} tokens, merges in order:")
for left, right in vocab.merges:
    print(f"  {left} + {right}")

# ---------------------------------------------------------------------
# Encoding: greedy longest match per word, word-end indices recorded.
# The word-end positions are what the alignment loss reads.
# ---------------------------------------------------------------------
sentence = tokenize_line("newest lowest")
encoded = encode_words(sentence, vocab)
print("tokens:", encoded.tokens)
print("word ends:", encoded.word_end_indices)
print("detokenized:", [decode_tokens(encoded.tokens[s:e + 1], vocab)
                       for s, e in zip((0,) + tuple(i + 1 for i in encoded.word_end_indices),
                                       encoded.word_end_indices)])

# A word with a codepoint the vocabulary never saw becomes [UNK].
print("unknown word:", encode_words(tokenize_line("sí"), vocab).tokens)

# ---------------------------------------------------------------------
# Extension: append a new language's tokens to a base vocabulary,
# skipping exact duplicates so shared (transliterated) strings keep one
# identity in the combined vocabulary.
# ---------------------------------------------------------------------
other = train_vocab(
    build_frequency_table(Corpus(("slow slow slow glow glow",), language_tag="en2")), 30
)
extended = extend_vocab(vocab, other)
print(f"base={len(vocab)} new={len(other)} extended={len(extended)} "
      f"(shared {len(vocab) + len(other) - len(extended)} tokens)")
