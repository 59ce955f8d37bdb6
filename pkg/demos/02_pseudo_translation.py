"""Walkthrough: lexicon-based pseudo-translation with monotonic alignment.

Word-by-word substitution through a bilingual lexicon turns monolingual
text into aligned sentence pairs.  Because every word maps to exactly
one word (out-of-vocabulary words copy through), the alignment is the
diagonal and both sides always have the same length.
"""

import io

from pivotprep import (
    build_frequency_table,
    build_pseudo_parallel,
    derive_rng,
    load_lexicon,
    merge_lexicons,
    pseudo_translate_sentence,
    select_candidate,
    weight_lexicon,
)
from pivotprep.corpus import Corpus, tokenize_line

# ---------------------------------------------------------------------
# Load two lexicons and take their union (first-seen candidates win the
# front of the list).
# ---------------------------------------------------------------------
cfilt_like, _ = load_lexicon("घर\tਘਰ\nकिताब\tਕਿਤਾਬ\n", ("hi", "pa"))
wiktionary_like, _ = load_lexicon("किताब\tਪੁਸਤਕ\nपानी\tਪਾਣੀ\n", ("hi", "pa"))
lexicon = merge_lexicons(cfilt_like, wiktionary_like)
print("merged entries:")
for source, candidates in lexicon.entries.items():
    print(f"  {source} -> {', '.join(candidates)}")

# ---------------------------------------------------------------------
# Weight candidates by their frequency in the target-side corpus;
# unseen candidates get a floor of 1 so they stay sampleable.
# ---------------------------------------------------------------------
target_corpus = Corpus(("ਕਿਤਾਬ ਕਿਤਾਬ ਕਿਤਾਬ ਪੁਸਤਕ", "ਘਰ"), language_tag="pa")
weighted = weight_lexicon(lexicon, build_frequency_table(target_corpus))
print("weights for किताब:", weighted.weights["किताब"])

# ---------------------------------------------------------------------
# Four candidate-selection strategies.
# ---------------------------------------------------------------------
candidates, weights = weighted.lookup("किताब")
for strategy in ("first", "max", "weighted", "root_weighted"):
    rng = derive_rng(7, "demo", 0)
    picks = [select_candidate(candidates, weights, strategy, rng) for _ in range(8)]
    print(f"{strategy:>14}: {' '.join(picks)}")

# ---------------------------------------------------------------------
# Sentence-level translation: identity alignment, OOV copy-through.
# ---------------------------------------------------------------------
sentence = tokenize_line("यह किताब घर में है।")
pair = pseudo_translate_sentence(sentence, weighted, "max", derive_rng(7, "demo", 1))
print("src:", " ".join(pair.source_words))
print("tgt:", " ".join(pair.target_words))
print("alignment:", pair.alignment)

# ---------------------------------------------------------------------
# Both directions at once.  Per-sentence RNG streams come from
# (seed, provenance, line index), so reruns and parallel runs agree.
# ---------------------------------------------------------------------
rpl = Corpus(("यह किताब है।", "घर में पानी है।"), language_tag="hi")
lrl = Corpus(("ਇਹ ਕਿਤਾਬ ਹੈ।",), language_tag="pa")
reverse, _ = load_lexicon("ਘਰ\tघर\nਕਿਤਾਬ\tकिताब\n", ("pa", "hi"))
weighted_reverse = weight_lexicon(reverse, build_frequency_table(rpl))
pair_set = build_pseudo_parallel(rpl, lrl, weighted, weighted_reverse, "weighted", seed=42)
for pair, prov, idx in zip(pair_set.pairs, pair_set.provenances, pair_set.indices):
    print(f"[{prov} #{idx}] {' '.join(pair.source_words)} => {' '.join(pair.target_words)}")
