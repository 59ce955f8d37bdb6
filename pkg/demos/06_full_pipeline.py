"""Walkthrough: the end-to-end preparation pipeline.

Writes a toy Punjabi/Hindi dataset to a scratch directory, runs every
stage (transliterate, weight, pseudo-translate, build vocabularies,
diagnostics), and inspects the manifest.  Running it twice with the
same seed produces byte-identical outputs.
"""

import json
import pathlib
import tempfile

from pivotprep.pipeline import PipelineConfig, run_pipeline

work = pathlib.Path(tempfile.mkdtemp(prefix="pivotprep-demo-"))

(work / "hi.txt").write_text(
    "मैं घर जाता हूँ।\nयह किताब अच्छी है।\nवह पानी पीता है।\nघर में किताब है।\n",
    encoding="utf-8",
)
(work / "pa.txt").write_text(
    "ਮੈਂ ਘਰ ਜਾਂਦਾ ਹਾਂ।\nਇਹ ਕਿਤਾਬ ਚੰਗੀ ਹੈ।\nਘਰ ਵਿੱਚ ਪਾਣੀ ਹੈ।\n",
    encoding="utf-8",
)
(work / "pa_hi.tsv").write_text(
    "ਘਰ\tघर\nਕਿਤਾਬ\tकिताब\nਕਿਤਾਬ\tपुस्तक\nਪਾਣੀ\tपानी\nਹੈ\tहै\n", encoding="utf-8"
)
(work / "hi_pa.tsv").write_text(
    "घर\tਘਰ\nकिताब\tਕਿਤਾਬ\nपुस्तक\tਕਿਤਾਬ\nपानी\tਪਾਣੀ\nहै\tਹੈ\n", encoding="utf-8"
)
# Gurmukhi Tippi's offset image is an assigned but wrong Devanagari
# character; an exception rule sends it to Anusvara instead.
(work / "exceptions.tsv").write_text("# Tippi -> Anusvara\n0A70\t0902\n", encoding="utf-8")

config = PipelineConfig(
    rpl_corpus=str(work / "hi.txt"),
    lrl_corpus=str(work / "pa.txt"),
    lexicon_lrl_to_rpl=str(work / "pa_hi.tsv"),
    lexicon_rpl_to_lrl=str(work / "hi_pa.tsv"),
    source_script="gurmukhi",
    target_script="devanagari",
    exception_table=str(work / "exceptions.tsv"),
    output_dir=str(work / "out"),
    strategy="weighted",
    seed=2024,
    rpl_vocab_size=80,
    lrl_vocab_size=70,
)

manifest = run_pipeline(config, log=print)

print("\nmanifest:")
print(json.dumps(manifest, indent=2, ensure_ascii=False))

print("\naligned pairs:")
pairs_path = work / "out" / "pairs.jsonl"
for line in pairs_path.read_text(encoding="utf-8").splitlines():
    obj = json.loads(line)
    print(f"  [{obj['prov']} #{obj['idx']}] {' '.join(obj['src'])} => {' '.join(obj['tgt'])}")

print(f"\nall outputs under {work / 'out'}")
