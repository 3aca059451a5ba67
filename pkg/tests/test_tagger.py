import json

import pytest
from hypothesis import given, strategies as st

from fieldgloss.lexicon import PosTag
from fieldgloss.normalizer import NormalizationOutcome, OutcomeKind
from fieldgloss.tagger import resolve_conflict, tag, tag_lemma

from conftest import make_lexicon, make_table


@pytest.fixture()
def table():
    return make_table({"t": "t", "tr": "r", "a": "a", "w": "w", "m": "m", "k": "k"})


def matched_outcome(entry):
    return NormalizationOutcome(
        kind=OutcomeKind.MATCHED, entry=entry, variant=entry.lemma,
        match_score=1.0, distance=0,
    )


class TestTag:
    def test_matched_uses_entry_tag(self, table):
        lex = make_lexicon([("mak", "'1DU'", "PN")], table)
        assert tag(matched_outcome(lex.entries[0])) is PosTag.PN

    def test_punct_maps_to_pu(self):
        assert tag(NormalizationOutcome(kind=OutcomeKind.PUNCT)) is PosTag.PU

    def test_foreign_maps_to_fw(self):
        assert tag(NormalizationOutcome(kind=OutcomeKind.FOREIGN)) is PosTag.FW

    def test_unknown_maps_to_un(self):
        assert tag(NormalizationOutcome(kind=OutcomeKind.UNKNOWN)) is PosTag.UN


class TestResolveConflict:
    def test_origin_entry_wins(self, table):
        lex = make_lexicon(
            [("traw", "'that.SG.LOC'", "DT", "", "origin"), ("traw", "'if'", "CC")],
            table,
        )
        assert resolve_conflict(lex.entries_for_lemma("traw")) is PosTag.DT

    def test_single_entry_keeps_its_tag(self, table):
        lex = make_lexicon([("mak", "'1DU'", "PN")], table)
        assert resolve_conflict([lex.entries[0]]) is PosTag.PN

    def test_agreeing_entries_need_no_origin(self, table):
        from fieldgloss.lexicon import LexiconEntry

        entries = [
            LexiconEntry("mak", "'x'", PosTag.PN, ("mak",), (("mak", "mak"),)),
            LexiconEntry("mak", "'y'", PosTag.PN, ("makt",), (("makt", "makt"),)),
        ]
        assert resolve_conflict(entries) is PosTag.PN

    def test_no_origin_yields_un_plus_diagnostic(self, table):
        lex = make_lexicon([("traw", "'x'", "DT"), ("traw", "'y'", "CC")], table)
        diagnostics = []
        result = resolve_conflict(lex.entries_for_lemma("traw"), diagnostics.append)
        assert result is PosTag.UN
        assert len(diagnostics) == 1
        diag = diagnostics[0]
        assert diag.lemma == "traw"
        assert diag.tags == ("CC", "DT")
        assert diag.chosen == "UN"

    def test_multiple_origins_yield_un_plus_diagnostic(self, table):
        lex = make_lexicon(
            [("traw", "'x'", "DT", "", "origin"), ("traw", "'y'", "CC", "", "origin")],
            table,
        )
        diagnostics = []
        assert resolve_conflict(lex.entries_for_lemma("traw"), diagnostics.append) is PosTag.UN
        assert "multiple" in diagnostics[0].reason

    def test_diagnostic_serializes_as_json_line(self, table):
        lex = make_lexicon([("traw", "'x'", "DT"), ("traw", "'y'", "CC")], table)
        diagnostics = []
        resolve_conflict(lex.entries_for_lemma("traw"), diagnostics.append)
        parsed = json.loads(diagnostics[0].to_json())
        assert parsed["lemma"] == "traw"
        assert parsed["tags"] == ["CC", "DT"]

    def test_empty_entries_rejected(self):
        with pytest.raises(ValueError):
            resolve_conflict([])


class TestTagLemma:
    def test_absent_lemma_is_un(self, table):
        lex = make_lexicon([("mak", "'x'", "PN")], table)
        assert tag_lemma("wam", lex) is PosTag.UN

    def test_present_lemma(self, table):
        lex = make_lexicon([("mak", "'x'", "PN")], table)
        assert tag_lemma("mak", lex) is PosTag.PN


_kinds = st.sampled_from([OutcomeKind.PUNCT, OutcomeKind.FOREIGN, OutcomeKind.UNKNOWN])


@given(_kinds)
def test_special_kinds_always_map_into_closed_tag_set(kind):
    result = tag(NormalizationOutcome(kind=kind))
    assert result in set(PosTag)
    assert result in {PosTag.PU, PosTag.FW, PosTag.UN}
