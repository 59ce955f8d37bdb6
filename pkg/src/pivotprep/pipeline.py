"""End-to-end pipeline: transliterate, weight, pseudo-translate, build vocab.

Stages run in a fixed order and every artifact lands in the output
directory; a manifest records the seed plus each file's name and line
count.  Any stage failure removes the files written so far and
propagates a stage-coded error, so reruns never see partial output.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field

from . import align, metrics, pseudo, subword
from .corpus import (
    Corpus,
    build_frequency_table,
    ingest_corpus_file,
    tokenize_line,
    write_corpus,
    write_frequency_tsv,
)
from .lexicon import load_lexicon_file, transliterate_lexicon, weight_lexicon, write_lexicon_tsv
from .translit import build_table, script_block, transliterate_corpus


# Stage identifiers and their process exit codes.
STAGE_CONFIG = "config"
STAGE_TRANSLIT = "transliteration"
STAGE_LEXICON = "lexicon-load"
STAGE_PSEUDO = "pseudo-translation"
STAGE_VOCAB = "vocab"
STAGE_METRICS = "metrics"

STAGE_EXIT_CODES = {
    STAGE_CONFIG: 10,
    STAGE_TRANSLIT: 20,
    STAGE_LEXICON: 30,
    STAGE_PSEUDO: 40,
    STAGE_VOCAB: 50,
    STAGE_METRICS: 60,
}


class PipelineError(Exception):
    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage
        self.exit_code = STAGE_EXIT_CODES[stage]


@dataclass
class PipelineConfig:
    rpl_corpus: str = ""
    lrl_corpus: str = ""
    lexicon_lrl_to_rpl: str = ""
    lexicon_rpl_to_lrl: str = ""
    source_script: str = ""
    target_script: str = ""
    output_dir: str = ""
    exception_table: str = ""
    strategy: str = "weighted"
    seed: int = 0
    rpl_vocab_size: int = 200
    lrl_vocab_size: int = 100
    base_vocab: str = ""
    vocab_source: str = "transliterated"
    rpl_tag: str = "rpl"
    lrl_tag: str = "lrl"
    heldout_source: str = ""
    heldout_reference: str = ""

    # Keys settable from a config file or CLI flags, with their types.
    FIELD_TYPES = {
        "rpl_corpus": str,
        "lrl_corpus": str,
        "lexicon_lrl_to_rpl": str,
        "lexicon_rpl_to_lrl": str,
        "source_script": str,
        "target_script": str,
        "output_dir": str,
        "exception_table": str,
        "strategy": str,
        "seed": int,
        "rpl_vocab_size": int,
        "lrl_vocab_size": int,
        "base_vocab": str,
        "vocab_source": str,
        "rpl_tag": str,
        "lrl_tag": str,
        "heldout_source": str,
        "heldout_reference": str,
    }


def parse_config_file(path) -> dict:
    """Parse line-oriented `key = value` text; `#` starts a comment line."""
    values: dict = {}
    with io.open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise PipelineError(STAGE_CONFIG, f"{path}:{lineno}: expected `key = value`")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in PipelineConfig.FIELD_TYPES:
                raise PipelineError(STAGE_CONFIG, f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = PipelineConfig.FIELD_TYPES[key](value)
            except ValueError:
                raise PipelineError(
                    STAGE_CONFIG, f"{path}:{lineno}: bad value {value!r} for {key}"
                ) from None
    return values


def build_config(file_values: dict, overrides: dict) -> PipelineConfig:
    """Merge config-file values with CLI overrides; overrides win."""
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    config = PipelineConfig()
    for key, value in merged.items():
        if key not in PipelineConfig.FIELD_TYPES:
            raise PipelineError(STAGE_CONFIG, f"unknown config key {key!r}")
        setattr(config, key, PipelineConfig.FIELD_TYPES[key](value))
    return config


def validate_config(config: PipelineConfig) -> None:
    required = (
        ("rpl_corpus", config.rpl_corpus),
        ("lrl_corpus", config.lrl_corpus),
        ("lexicon_lrl_to_rpl", config.lexicon_lrl_to_rpl),
        ("lexicon_rpl_to_lrl", config.lexicon_rpl_to_lrl),
        ("source_script", config.source_script),
        ("target_script", config.target_script),
        ("output_dir", config.output_dir),
    )
    for key, value in required:
        if not value:
            raise PipelineError(STAGE_CONFIG, f"missing required key {key}")
    # Missing input files abort with the code of the stage that consumes
    # them, before anything is written.
    stage_of_path = {
        "rpl_corpus": STAGE_TRANSLIT,
        "lrl_corpus": STAGE_TRANSLIT,
        "exception_table": STAGE_TRANSLIT,
        "lexicon_lrl_to_rpl": STAGE_LEXICON,
        "lexicon_rpl_to_lrl": STAGE_LEXICON,
        "base_vocab": STAGE_VOCAB,
        "heldout_source": STAGE_METRICS,
        "heldout_reference": STAGE_METRICS,
    }
    for key, stage in stage_of_path.items():
        path = getattr(config, key)
        if path and not os.path.isfile(path):
            raise PipelineError(stage, f"{key} path does not exist: {path}")
    if bool(config.heldout_source) != bool(config.heldout_reference):
        raise PipelineError(STAGE_CONFIG, "heldout_source and heldout_reference go together")
    if config.lrl_vocab_size < 1 or config.rpl_vocab_size < 1:
        raise PipelineError(STAGE_CONFIG, "vocab sizes must be positive")
    if config.vocab_source not in ("transliterated", "raw"):
        raise PipelineError(STAGE_CONFIG, "vocab_source must be `transliterated` or `raw`")
    try:
        pseudo.normalize_strategy(config.strategy)
        script_block(config.source_script)
        script_block(config.target_script)
    except ValueError as exc:
        raise PipelineError(STAGE_CONFIG, str(exc)) from None


@dataclass
class _Workspace:
    out_dir: str
    written: list = field(default_factory=list)

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def record(self, name: str) -> str:
        self.written.append(name)
        return self.path(name)

    def cleanup(self) -> None:
        for name in self.written:
            try:
                os.remove(self.path(name))
            except OSError:
                pass


def _count_lines(path) -> int:
    with io.open(path, "r", encoding="utf-8") as handle:
        return sum(1 for _ in handle)


def run_pipeline(config: PipelineConfig, log=None) -> dict:
    """Run all stages; returns the manifest dict on success."""

    def say(message: str) -> None:
        if log is not None:
            log(message)

    validate_config(config)
    os.makedirs(config.output_dir, exist_ok=True)
    ws = _Workspace(config.output_dir)
    diagnostics: list[str] = []
    try:
        # Stage 1: transliterate the LRL corpus and both lexicons into
        # the RPL script.
        try:
            exception_text = None
            if config.exception_table:
                with io.open(config.exception_table, "r", encoding="utf-8") as handle:
                    exception_text = handle.read()
            table = build_table(
                script_block(config.source_script),
                script_block(config.target_script),
                exception_stream=exception_text,
            )
            rpl_corpus = ingest_corpus_file(config.rpl_corpus, config.rpl_tag)
            lrl_corpus = ingest_corpus_file(config.lrl_corpus, config.lrl_tag)
            lrl_translit, translit_report = transliterate_corpus(lrl_corpus, table)
            write_corpus(lrl_translit, ws.record("lrl_translit.txt"))
            say(
                f"transliteration: mapped={translit_report.mapped_count} "
                f"exceptions={translit_report.exception_count} "
                f"passthrough={translit_report.passthrough_count}"
            )
        except (OSError, ValueError) as exc:
            raise PipelineError(STAGE_TRANSLIT, str(exc)) from exc

        # Stage 2: load lexicons and move them into the RPL script space.
        try:
            lex_lrl_to_rpl, skipped_fw = load_lexicon_file(
                config.lexicon_lrl_to_rpl, (config.lrl_tag, config.rpl_tag)
            )
            lex_rpl_to_lrl, skipped_bw = load_lexicon_file(
                config.lexicon_rpl_to_lrl, (config.rpl_tag, config.lrl_tag)
            )
            say(f"lexicons: skipped {skipped_fw}+{skipped_bw} unusable entries")
            lex_lrl_to_rpl = transliterate_lexicon(lex_lrl_to_rpl, table, side="source")
            lex_rpl_to_lrl = transliterate_lexicon(lex_rpl_to_lrl, table, side="target")
            write_lexicon_tsv(lex_lrl_to_rpl, ws.record("lexicon_lrl_translit_to_rpl.tsv"))
            write_lexicon_tsv(lex_rpl_to_lrl, ws.record("lexicon_rpl_to_lrl_translit.tsv"))
            freq_rpl = build_frequency_table(rpl_corpus)
            freq_lrl_translit = build_frequency_table(lrl_translit)
            write_frequency_tsv(freq_rpl, ws.record("freq_rpl.tsv"))
            write_frequency_tsv(freq_lrl_translit, ws.record("freq_lrl_translit.tsv"))
            weighted_lrl_to_rpl = weight_lexicon(lex_lrl_to_rpl, freq_rpl)
            weighted_rpl_to_lrl = weight_lexicon(lex_rpl_to_lrl, freq_lrl_translit)
        except (OSError, ValueError) as exc:
            raise PipelineError(STAGE_LEXICON, str(exc)) from exc

        # Stage 3: pseudo-translate both directions into one pair set.
        try:
            pair_set = pseudo.build_pseudo_parallel(
                rpl_corpus,
                lrl_translit,
                weighted_rpl_to_lrl,
                weighted_lrl_to_rpl,
                config.strategy,
                config.seed,
            )
            pseudo.write_pairs_jsonl(pair_set, ws.record("pairs.jsonl"))
            say(f"pseudo-translation: {len(pair_set.pairs)} aligned pairs")
        except ValueError as exc:
            raise PipelineError(STAGE_PSEUDO, str(exc)) from exc

        # Stage 4: train the LRL subword vocabulary, extend the base
        # vocabulary, and emit word-end indices for the pair set.
        try:
            vocab_corpus = lrl_translit if config.vocab_source == "transliterated" else lrl_corpus
            lrl_vocab = subword.train_vocab(
                build_frequency_table(vocab_corpus), config.lrl_vocab_size
            )
            subword.write_vocab(lrl_vocab, ws.record("vocab_lrl.txt"), ws.record("merges_lrl.txt"))
            if config.base_vocab:
                base_vocab = subword.read_vocab(config.base_vocab)
            else:
                base_vocab = subword.train_vocab(freq_rpl, config.rpl_vocab_size)
                subword.write_vocab(
                    base_vocab, ws.record("vocab_rpl.txt"), ws.record("merges_rpl.txt")
                )
            extended = subword.extend_vocab(base_vocab, lrl_vocab)
            subword.write_vocab(
                extended, ws.record("vocab_extended.txt"), ws.record("merges_extended.txt")
            )
            say(
                f"vocab: base={len(base_vocab)} new={len(lrl_vocab)} "
                f"extended={len(extended)}"
            )
            ends = []
            for pair in pair_set.pairs:
                src_enc = subword.encode_words(
                    tokenize_line(" ".join(pair.source_words)), extended
                )
                tgt_enc = subword.encode_words(
                    tokenize_line(" ".join(pair.target_words)), extended
                )
                ends.append((src_enc.word_end_indices, tgt_enc.word_end_indices))
            align.write_ends(ends, ws.record("pairs.ends"))
        except ValueError as exc:
            raise PipelineError(STAGE_VOCAB, str(exc)) from exc

        # Stage 5: diagnostics.
        try:
            overlap = metrics.word_overlap(lrl_translit, rpl_corpus)
            diagnostics.append(metrics.format_overlap(overlap))
            if config.heldout_source:
                heldout_src = ingest_corpus_file(config.heldout_source, config.rpl_tag)
                # The reference is LRL text in the LRL script; move it into
                # the RPL script space the hypotheses live in.
                heldout_ref, _ = transliterate_corpus(
                    ingest_corpus_file(config.heldout_reference, config.lrl_tag), table
                )
                hyp_lines = []
                for index, line in enumerate(heldout_src.lines):
                    rng = pseudo.derive_rng(config.seed, "heldout", index)
                    pair = pseudo.pseudo_translate_sentence(
                        tokenize_line(line),
                        weighted_rpl_to_lrl,
                        pseudo.normalize_strategy(config.strategy),
                        rng,
                    )
                    hyp_lines.append(" ".join(pair.target_words))
                hyp_corpus = Corpus(
                    lines=tuple(hyp_lines), language_tag=config.lrl_tag, script="mixed"
                )
                bleu = metrics.corpus_bleu(hyp_corpus, heldout_ref)
                diagnostics.append(metrics.format_bleu(bleu))
        except (OSError, ValueError) as exc:
            raise PipelineError(STAGE_METRICS, str(exc)) from exc

        manifest = {
            "seed": config.seed,
            "files": [
                {"name": name, "lines": _count_lines(ws.path(name))} for name in ws.written
            ],
        }
        with io.open(ws.path("manifest.json"), "w", encoding="utf-8", newline="\n") as handle:
            json.dump(manifest, handle, ensure_ascii=False, indent=2, sort_keys=True)
            handle.write("\n")
        for line in diagnostics:
            say(line)
        return manifest
    except PipelineError:
        ws.cleanup()
        raise
