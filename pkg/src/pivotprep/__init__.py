"""Toolkit for adapting corpora of a low-resource language via a related
prominent language: Brahmic script transliteration, lexicon-based
pseudo-translation with monotonic alignment, subword vocabulary
induction and extension, overlap/BLEU diagnostics, and an embedding
alignment-loss kernel with verified analytic gradients.
"""

from .align import (
    AlignedEmbeddingPair,
    EmbeddingSequence,
    LossReport,
    contrastive_alignment_grad,
    contrastive_alignment_loss,
    finite_difference_check,
    mse_alignment_grad,
    mse_alignment_loss,
)
from .corpus import (
    Corpus,
    FrequencyTable,
    TokenizedSentence,
    build_frequency_table,
    ingest_corpus,
    tokenize_line,
)
from .lexicon import (
    Lexicon,
    WeightedLexicon,
    load_lexicon,
    merge_lexicons,
    transliterate_lexicon,
    weight_lexicon,
)
from .metrics import BleuResult, OverlapResult, corpus_bleu, word_overlap
from .pseudo import (
    AlignedPairSet,
    AlignedSentencePair,
    build_pseudo_parallel,
    derive_rng,
    pseudo_translate_sentence,
    select_candidate,
)
from .subword import (
    EncodedSentence,
    SubwordVocab,
    encode_words,
    extend_vocab,
    train_vocab,
)
from .tagmap import map_penn_to_bis
from .translit import (
    ScriptBlock,
    TransliterationReport,
    TransliterationTable,
    build_table,
    script_block,
    transliterate_corpus,
    transliterate_text,
)

__version__ = "0.1.0"
