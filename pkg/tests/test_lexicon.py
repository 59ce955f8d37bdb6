import pytest

from pivotprep.corpus import FrequencyTable
from pivotprep.lexicon import (
    Lexicon,
    LexiconError,
    load_lexicon,
    merge_lexicons,
    transliterate_lexicon,
    weight_lexicon,
)
from pivotprep.translit import build_table, script_block

DIRECTION = ("pa", "hi")


def lex(entries):
    return Lexicon(direction=DIRECTION, entries={k: tuple(v) for k, v in entries.items()})


class TestLoad:
    def test_dedup_preserves_order(self):
        loaded, skipped = load_lexicon("w\tx\nw\ty\nw\tx\n", DIRECTION)
        assert loaded.entries == {"w": ("x", "y")}
        assert skipped == 0

    def test_multiword_target_skipped(self):
        loaded, skipped = load_lexicon("w\tnew york\n", DIRECTION)
        assert loaded.entries == {}
        assert skipped == 1

    def test_no_tab_is_error(self):
        with pytest.raises(LexiconError, match="line 1"):
            load_lexicon("w x y\n", DIRECTION)

    def test_two_tabs_is_error(self):
        with pytest.raises(LexiconError, match="line 1"):
            load_lexicon("w\tx\ty\n", DIRECTION)

    def test_empty_fields_skipped(self):
        loaded, skipped = load_lexicon("w\t\n\tx\na\tb\n", DIRECTION)
        assert loaded.entries == {"a": ("b",)}
        assert skipped == 2

    def test_blank_lines_ignored(self):
        loaded, skipped = load_lexicon("a\tb\n\nc\td\n", DIRECTION)
        assert loaded.entries == {"a": ("b",), "c": ("d",)}
        assert skipped == 0


class TestMerge:
    def test_union(self):
        assert merge_lexicons(lex({"w": ["x"]}), lex({"w": ["y"]})).entries == {"w": ("x", "y")}

    def test_idempotent_on_duplicates(self):
        assert merge_lexicons(lex({"w": ["x"]}), lex({"w": ["x"]})).entries == {"w": ("x",)}

    def test_disjoint_keys(self):
        merged = merge_lexicons(lex({"w": ["x"]}), lex({"v": ["z"]}))
        assert merged.entries == {"w": ("x",), "v": ("z",)}

    def test_direction_mismatch(self):
        other = Lexicon(direction=("hi", "pa"), entries={})
        with pytest.raises(LexiconError, match="direction"):
            merge_lexicons(lex({}), other)

    def test_associative_and_union_of_candidate_sets(self):
        a = lex({"w": ["x", "y"], "u": ["p"]})
        b = lex({"w": ["z"], "v": ["q"]})
        c = lex({"w": ["y", "t"], "u": ["r"]})
        left = merge_lexicons(merge_lexicons(a, b), c)
        right = merge_lexicons(a, merge_lexicons(b, c))
        for source in set(left.entries) | set(right.entries):
            assert set(left.entries[source]) == set(right.entries[source])
            expected = (
                set(a.entries.get(source, ()))
                | set(b.entries.get(source, ()))
                | set(c.entries.get(source, ()))
            )
            assert set(left.entries[source]) == expected


class TestTransliterate:
    def test_source_side(self):
        table = build_table(script_block("gurmukhi"), script_block("devanagari"))
        loaded, _ = load_lexicon("ਕਿਤਾਬ\tपुस्तक\n", ("pa", "hi"))
        out = transliterate_lexicon(loaded, table, side="source")
        assert out.entries == {"किताब": ("पुस्तक",)}

    def test_target_side_out_of_block_unchanged(self):
        table = build_table(script_block("gurmukhi"), script_block("devanagari"))
        original = lex({"w": ["पुस्तक"]})
        out = transliterate_lexicon(original, table, side="target")
        assert out.entries == original.entries

    def test_collision_merges_entries(self):
        # Both Gurmukhi sources map to the same Devanagari form.
        table = build_table(script_block("gurmukhi"), script_block("devanagari"))
        original = Lexicon(
            direction=DIRECTION,
            entries={"ਕ": ("x",), "क": ("y",)},  # second key already Devanagari
        )
        out = transliterate_lexicon(original, table, side="source")
        assert out.entries == {"क": ("x", "y")}

    def test_pair_count_preserved_without_collisions(self):
        table = build_table(script_block("gurmukhi"), script_block("devanagari"))
        original = lex({"ਕ": ["a", "b"], "ਖ": ["c"]})
        out = transliterate_lexicon(original, table, side="source")
        assert out.pair_count() == original.pair_count()

    def test_bad_side(self):
        table = build_table(script_block("gurmukhi"), script_block("devanagari"))
        with pytest.raises(LexiconError):
            transliterate_lexicon(lex({}), table, side="sideways")


class TestWeight:
    def test_lookup(self):
        weighted = weight_lexicon(lex({"w": ["x", "y"]}), FrequencyTable({"x": 3, "y": 1}, 4))
        assert weighted.weights["w"] == (3, 1)

    def test_floor_for_unseen(self):
        weighted = weight_lexicon(lex({"w": ["z"]}), FrequencyTable({"x": 3}, 3))
        assert weighted.weights["w"] == (1,)

    def test_empty_table_gives_uniform(self):
        weighted = weight_lexicon(lex({"w": ["x", "y"]}), FrequencyTable({}, 0))
        assert weighted.weights["w"] == (1, 1)

    def test_never_zero(self):
        weighted = weight_lexicon(
            lex({"w": ["a", "b", "c"]}), FrequencyTable({"a": 17, "c": 1}, 18)
        )
        assert all(w >= 1 for w in weighted.weights["w"])
