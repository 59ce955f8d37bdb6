"""Command-line entry points.

Every pipeline stage is also a standalone subcommand so the pieces can
be run and inspected independently.  Randomized commands take a --seed;
per-sentence RNG streams are derived from (seed, provenance, line
index), so results do not depend on processing order.
"""

from __future__ import annotations

import argparse
import sys

from . import align, metrics, pipeline, pseudo, subword, tagmap
from .corpus import (
    FrequencyTable,
    build_frequency_table,
    ingest_corpus_file,
    tokenize_line,
    write_corpus,
)
from .lexicon import load_lexicon_file, weight_lexicon
from .translit import build_table, script_block, transliterate_corpus


def _cmd_translit(args) -> int:
    exception_text = None
    if args.exceptions:
        with open(args.exceptions, "r", encoding="utf-8") as handle:
            exception_text = handle.read()
    table = build_table(
        script_block(args.source),
        script_block(args.target),
        exception_stream=exception_text,
        passthrough_policy=args.passthrough,
    )
    corpus = ingest_corpus_file(args.input, args.source)
    converted, report = transliterate_corpus(corpus, table)
    write_corpus(converted, args.output)
    print(
        f"translit: mapped={report.mapped_count} exceptions={report.exception_count} "
        f"passthrough={report.passthrough_count}"
    )
    return 0


def _cmd_pseudo_translate(args) -> int:
    corpus = ingest_corpus_file(args.corpus, "source")
    lexicon, skipped = load_lexicon_file(args.lexicon, ("source", "target"))
    if skipped:
        print(f"skipped {skipped} unusable lexicon entries", file=sys.stderr)
    if args.freq_corpus:
        freq = build_frequency_table(ingest_corpus_file(args.freq_corpus, "target"))
    else:
        freq = FrequencyTable(counts={}, total=0)  # uniform weights
    weighted = weight_lexicon(lexicon, freq)
    strategy = pseudo.normalize_strategy(args.strategy)
    pairs = []
    for index, line in enumerate(corpus.lines):
        rng = pseudo.derive_rng(args.seed, args.provenance, index)
        pairs.append(pseudo.pseudo_translate_sentence(tokenize_line(line), weighted, strategy, rng))
    pair_set = pseudo.AlignedPairSet(
        pairs=tuple(pairs),
        provenances=tuple(args.provenance for _ in pairs),
        indices=tuple(range(len(pairs))),
        seed=args.seed,
    )
    pseudo.write_pairs_jsonl(pair_set, args.output)
    print(f"pseudo-translate: {len(pairs)} pairs written to {args.output}")
    return 0


def _cmd_overlap(args) -> int:
    lrl = ingest_corpus_file(args.lrl_translit, "lrl")
    rpl = ingest_corpus_file(args.rpl, "rpl")
    print(metrics.format_overlap(metrics.word_overlap(lrl, rpl)))
    return 0


def _cmd_bleu(args) -> int:
    hyp = ingest_corpus_file(args.hypotheses, "hyp")
    ref = ingest_corpus_file(args.references, "ref")
    print(metrics.format_bleu(metrics.corpus_bleu(hyp, ref)))
    return 0


def _cmd_vocab_train(args) -> int:
    corpus = ingest_corpus_file(args.corpus, "train")
    vocab = subword.train_vocab(build_frequency_table(corpus), args.size)
    subword.write_vocab(vocab, args.output_vocab, args.output_merges)
    print(f"vocab-train: {len(vocab)} tokens, {len(vocab.merges)} merges")
    return 0


def _cmd_vocab_extend(args) -> int:
    base = subword.read_vocab(args.base, args.base_merges)
    new = subword.read_vocab(args.new, args.new_merges)
    extended = subword.extend_vocab(base, new)
    subword.write_vocab(extended, args.output_vocab, args.output_merges)
    print(
        f"vocab-extend: base={len(base)} new={len(new)} extended={len(extended)} "
        f"(deduplicated {len(base) + len(new) - len(extended)})"
    )
    return 0


def _cmd_align_loss(args) -> int:
    batch = align.assemble_batch(
        align.read_embeddings(args.src),
        align.read_embeddings(args.tgt),
        align.read_embeddings(args.src_ref),
        align.read_embeddings(args.tgt_ref),
        align.read_ends(args.ends),
    )
    if args.loss == "mse":
        report = align.mse_alignment_loss(batch, args.reg_coefficient)
    else:
        report = align.contrastive_alignment_loss(batch, args.temperature, args.reg_coefficient)
    print(
        f"loss: align={report.align_loss:.6f} reg={report.reg_loss:.6f} "
        f"coeff={report.reg_coefficient:.4f} total={report.total:.6f}"
    )
    if args.grad_check:
        err = align.finite_difference_check(
            batch,
            reg_coefficient=args.reg_coefficient,
            epsilon=args.epsilon,
            loss="mse" if args.loss == "mse" else "contrastive",
            temperature=args.temperature,
        )
        print(f"grad-check: max_relative_error={err:.3e}")
    return 0


def _cmd_map_tags(args) -> int:
    print(tagmap.map_penn_to_bis(args.tag, args.word))
    return 0


def _cmd_pipeline(args) -> int:
    file_values = pipeline.parse_config_file(args.config) if args.config else {}
    overrides = {
        key: getattr(args, key)
        for key in pipeline.PipelineConfig.FIELD_TYPES
        if getattr(args, key, None) is not None
    }
    config = pipeline.build_config(file_values, overrides)
    pipeline.run_pipeline(config, log=print)
    print(f"pipeline: outputs in {config.output_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pivotprep",
        description="Prepare low-resource-language corpora via a related pivot language.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translit", help="transliterate a corpus between Brahmic scripts")
    p.add_argument("--source", required=True, help="source script name")
    p.add_argument("--target", required=True, help="target script name")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--exceptions", help="exception TSV: hex source cp, tab, hex target cps")
    p.add_argument("--passthrough", default="copy", choices=["copy", "drop", "mark"])
    p.set_defaults(func=_cmd_translit)

    p = sub.add_parser("pseudo-translate", help="word-by-word translate a corpus via a lexicon")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True, help="source\\ttarget TSV")
    p.add_argument("--freq-corpus", help="target-language corpus for frequency weighting")
    p.add_argument("--strategy", default="weighted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--provenance", default=pseudo.PROVENANCE_RPL_TO_LRL, choices=pseudo.PROVENANCES)
    p.add_argument("--output", required=True, help="JSONL of aligned pairs")
    p.set_defaults(func=_cmd_pseudo_translate)

    p = sub.add_parser("overlap", help="distinct-word overlap diagnostic")
    p.add_argument("--lrl-translit", required=True)
    p.add_argument("--rpl", required=True)
    p.set_defaults(func=_cmd_overlap)

    p = sub.add_parser("bleu", help="corpus BLEU-4 diagnostic")
    p.add_argument("--hypotheses", required=True)
    p.add_argument("--references", required=True)
    p.set_defaults(func=_cmd_bleu)

    p = sub.add_parser("vocab-train", help="train a subword vocabulary")
    p.add_argument("--corpus", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--output-vocab", required=True)
    p.add_argument("--output-merges", required=True)
    p.set_defaults(func=_cmd_vocab_train)

    p = sub.add_parser("vocab-extend", help="extend a base vocabulary with new tokens")
    p.add_argument("--base", required=True)
    p.add_argument("--base-merges")
    p.add_argument("--new", required=True)
    p.add_argument("--new-merges")
    p.add_argument("--output-vocab", required=True)
    p.add_argument("--output-merges", required=True)
    p.set_defaults(func=_cmd_vocab_extend)

    p = sub.add_parser("align-loss", help="evaluate alignment loss over embedding files")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--src-ref", required=True)
    p.add_argument("--tgt-ref", required=True)
    p.add_argument("--ends", required=True, help="per-pair word-end indices")
    p.add_argument("--loss", default="mse", choices=["mse", "cstv"])
    p.add_argument("--reg-coefficient", type=float, default=1.0)
    p.add_argument("--temperature", type=float, default=align.DEFAULT_TEMPERATURE)
    p.add_argument("--grad-check", action="store_true")
    p.add_argument("--epsilon", type=float, default=1e-4)
    p.set_defaults(func=_cmd_align_loss)

    p = sub.add_parser("map-tags", help="map a Penn Treebank tag to its BIS tag")
    p.add_argument("tag")
    p.add_argument("word")
    p.set_defaults(func=_cmd_map_tags)

    p = sub.add_parser("pipeline", help="run the full preparation pipeline")
    p.add_argument("--config", help="line-oriented `key = value` file")
    for key, typ in pipeline.PipelineConfig.FIELD_TYPES.items():
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=typ, default=None)
    p.set_defaults(func=_cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except pipeline.PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
