import sys
from importlib.resources import files
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fieldgloss.lexicon import load_lexicon, parse_lexicon
from fieldgloss.symbols import load_table, parse_table

DATA = files("fieldgloss").joinpath("data")

# The 16-line worked-example excerpt: 15 logical words, one '&' join
# (ts'u& + móno), one punctuation record, gold-style certainties.
EXCERPT_CORPUS = (
    "mi'n\tmi'in\t'soon'\t100.0%\tRB\n"
    "mak\tmak'\t'1DU.INCL.NOM'\t100.0%\tPN\n"
    "ʃóqen\tshroxo\t'exterminate, massacre'\t100.0%\tVB\n"
    "jētr'aw\tye:tr'aw\t'all'\t100.0%\tJJ\n"
    "k`in\tkin\t'this.SG.PRIM'\t100.0%\tDT\n"
    "'aʃ\t'ashr\t'actually, really'\t100.0%\tRB\n"
    "tr`é%\ttri'\t'house'\t50.0%\tNN\n"
    "phañi\tpana:\t'arrive'\t50.0%\tVB\n"
    "tr`aw\ttraw\t'that.SG.LOC'\t100.0%\tDT\n"
    "mak\tmak'\t'1DU.INCL.NOM'\t100.0%\tPN\n"
    "hi'\thi'\t'FUT'\t100.0%\tRB\n"
    "wá%\twa\t'however'\t50.0%\tCC\n"
    "ts'u&\t\t\t\t\n"
    "móno\tc'o:mu\t'destroy, devour'\t50.0%\tVB\n"
    "wijá'án\twiyi\t'say, do'\t100.0%\tVB\n"
    ",\t,\t[punc]\t100.0%\tPU\n"
)

EXCERPT_NORMALIZED = [
    "mi'in", "mak'", "shroxo", "ye:tr'aw", "kin", "'ashr", "tri'", "pana:",
    "traw", "mak'", "hi'", "wa", "c'o:mu", "wiyi", ",",
]


@pytest.fixture(scope="session")
def starter_table():
    return load_table(DATA / "symbol_classes.tsv")


@pytest.fixture(scope="session")
def sample_lexicon(starter_table):
    return load_lexicon(DATA / "sample_lexicon.tsv", starter_table)


@pytest.fixture(scope="session")
def sample_transcription():
    return (DATA / "sample_transcription.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def excerpt_corpus():
    return EXCERPT_CORPUS


def make_table(mapping: dict[str, str]):
    """Build a table from a cluster->class dict (test shorthand)."""
    text = "".join(f"{cluster}\t{klass}\n" for cluster, klass in mapping.items())
    return parse_table(text)


def make_lexicon(rows, table):
    """Build a lexicon from (lemma, gloss, pos[, variants[, origin]]) tuples."""
    lines = []
    for row in rows:
        fields = list(row[:3])
        variants = row[3] if len(row) > 3 else ""
        origin = row[4] if len(row) > 4 else ""
        if variants or origin:
            fields.append(variants)
        if origin:
            fields.append(origin)
        lines.append("\t".join(fields))
    return parse_lexicon("\n".join(lines) + "\n", table)


#: Identity table over a tiny alphabet, for algorithm-path fixtures.
ABC_TABLE = {"a": "a", "b": "b", "c": "c", "x": "x"}


@pytest.fixture()
def abc_table():
    return make_table(ABC_TABLE)
