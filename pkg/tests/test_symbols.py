import unicodedata

import pytest
from hypothesis import given, strategies as st

from fieldgloss.symbols import (
    NotReducible,
    SymbolTableError,
    parse_table,
    symbol_series,
    write_table,
)

from conftest import DATA, make_table


class TestParseTable:
    def test_clusters_from_shared_class_rows(self):
        table = parse_table("k'\tk\nkh\tk\ntr'\tr\n")
        assert len(table.entries) == 3
        assert table.class_of("k'") == "k"
        assert table.class_of("tr'") == "r"
        assert table.alphabet == {"k", "r"}

    def test_empty_document_rejected(self):
        with pytest.raises(SymbolTableError, match="no clusters"):
            parse_table("")
        with pytest.raises(SymbolTableError, match="no clusters"):
            parse_table("# only comments\n\n")

    def test_duplicate_cluster_rejected_by_name(self):
        with pytest.raises(SymbolTableError, match="m:"):
            parse_table("m:\tm\nm:\tn\n")

    def test_multichar_class_symbol_rejected(self):
        with pytest.raises(SymbolTableError, match="single symbol"):
            parse_table("k\tkk\n")

    def test_malformed_row_reports_line(self):
        with pytest.raises(SymbolTableError, match=":2:"):
            parse_table("k\tk\nbroken row\n")

    def test_version_comment_parsed(self):
        table = parse_table("# version: 7\nk\tk\n")
        assert table.version == "7"


class TestSymbolSeries:
    def test_single_cluster_reduces_to_its_class(self):
        table = make_table({"k'": "k"})
        assert symbol_series("k'", table).symbols == "k"

    def test_word_equal_to_one_cluster(self):
        table = make_table({"m:": "m"})
        assert symbol_series("m:", table).symbols == "m"

    def test_unmappable_word_is_not_reducible(self):
        table = make_table({"a": "a"})
        result = symbol_series("\u0263\u00e6", table)
        assert isinstance(result, NotReducible)
        assert result.position == 0

    def test_not_reducible_reports_failing_position(self):
        table = make_table({"a": "a"})
        result = symbol_series("aa\u0263", table)
        assert isinstance(result, NotReducible)
        assert result.position == 2

    def test_longest_cluster_wins(self):
        table = make_table({"t": "t", "tr": "r", "tr'": "r"})
        assert symbol_series("tr'", table).symbols == "r"
        assert symbol_series("trt", table).symbols == "rt"

    def test_empty_word_rejected(self):
        table = make_table({"a": "a"})
        with pytest.raises(ValueError):
            symbol_series("", table)

    def test_nfc_applied_before_clustering(self):
        # e + combining acute composes to é before matching
        table = make_table({"\u00e9": "e"})
        assert symbol_series("e\u0301", table).symbols == "e"

    def test_collapse_of_same_class_variants(self, starter_table):
        variants = ["k", "k'", "k`", "kh", "k:", "g"]
        series = {symbol_series(v, starter_table).symbols for v in variants}
        assert series == {"k"}


# Strategy: words assembled from a mix of overlapping clusters.
_CLUSTERS = ["k", "k'", "kh", "tr", "tr'", "m", "m:", "a", "a:", "e"]
_TABLE = make_table(
    {"k": "k", "k'": "k", "kh": "k", "tr": "r", "tr'": "r",
     "m": "m", "m:": "m", "a": "a", "a:": "a", "e": "e", "t": "t"}
)


@given(st.lists(st.sampled_from(_CLUSTERS), min_size=1, max_size=8))
def test_segmentation_is_lossless(clusters):
    word = "".join(clusters)
    segmented = _TABLE.segment(word)
    assert not isinstance(segmented, NotReducible)
    assert "".join(segmented) == unicodedata.normalize("NFC", word)


@given(st.lists(st.sampled_from(_CLUSTERS), min_size=1, max_size=8))
def test_series_no_longer_than_codepoints(clusters):
    word = "".join(clusters)
    series = symbol_series(word, _TABLE)
    assert len(series.symbols) <= len(unicodedata.normalize("NFC", word))


@given(st.lists(st.sampled_from(_CLUSTERS), min_size=1, max_size=6),
       st.sampled_from(_CLUSTERS))
def test_appending_mappable_cluster_appends_one_symbol(clusters, extra):
    word = "".join(clusters)
    before = symbol_series(word, _TABLE).symbols
    after = symbol_series(word + extra, _TABLE).symbols
    # Greedy rescan may merge the seam (e.g. 'k'+'h' -> 'kh'), but when the
    # boundary is unambiguous exactly one symbol is appended.
    if after[: len(before)] == before:
        assert len(after) == len(before) + 1


@given(st.lists(st.sampled_from(_CLUSTERS), min_size=1, max_size=8))
def test_determinism(clusters):
    word = "".join(clusters)
    assert symbol_series(word, _TABLE) == symbol_series(word, _TABLE)


class TestRoundTrip:
    def test_starter_file_round_trips_bit_exact(self, starter_table):
        source = (DATA / "symbol_classes.tsv").read_text(encoding="utf-8")
        assert write_table(starter_table) == source

    def test_canonical_render_without_source(self):
        table = make_table({"k": "k", "m": "m"})
        rendered = write_table(
            type(table)(entries=table.entries, version=table.version)
        )
        reparsed = parse_table(rendered)
        assert reparsed.entries == table.entries

    def test_starter_table_is_nfc_stable(self, starter_table):
        for cluster, klass in starter_table.entries:
            assert unicodedata.normalize("NFC", cluster) == cluster
            assert len(klass) == 1
