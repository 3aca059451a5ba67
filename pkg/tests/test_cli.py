import pytest
from click.testing import CliRunner

from fieldgloss.cli import main

from conftest import DATA, EXCERPT_CORPUS


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def workdir(tmp_path):
    (tmp_path / "symbols.tsv").write_text(
        (DATA / "symbol_classes.tsv").read_text(encoding="utf-8"), encoding="utf-8"
    )
    (tmp_path / "lexicon.tsv").write_text(
        (DATA / "sample_lexicon.tsv").read_text(encoding="utf-8"), encoding="utf-8"
    )
    (tmp_path / "input.txt").write_text(
        (DATA / "sample_transcription.txt").read_text(encoding="utf-8"), encoding="utf-8"
    )
    (tmp_path / "gold.tsv").write_text(EXCERPT_CORPUS, encoding="utf-8")
    return tmp_path


def _normalize_args(workdir, out_name):
    return [
        "normalize", str(workdir / "input.txt"),
        "--lexicon", str(workdir / "lexicon.tsv"),
        "--symbols", str(workdir / "symbols.tsv"),
        "-o", str(workdir / out_name),
    ]


class TestNormalize:
    def test_produces_expected_corpus(self, runner, workdir):
        result = runner.invoke(main, _normalize_args(workdir, "out.tsv"))
        assert result.exit_code == 0, result.output
        out = (workdir / "out.tsv").read_text(encoding="utf-8")
        lines = out.splitlines()
        assert len(lines) == 16
        assert lines[12].startswith("ts'u&\t")
        assert lines[13].split("\t")[1] == "c'o:mu"

    def test_byte_identical_across_runs(self, runner, workdir):
        assert runner.invoke(main, _normalize_args(workdir, "a.tsv")).exit_code == 0
        assert runner.invoke(main, _normalize_args(workdir, "b.tsv")).exit_code == 0
        assert (workdir / "a.tsv").read_bytes() == (workdir / "b.tsv").read_bytes()

    def test_empty_input_writes_empty_valid_file(self, runner, workdir):
        (workdir / "input.txt").write_text("", encoding="utf-8")
        result = runner.invoke(main, _normalize_args(workdir, "out.tsv"))
        assert result.exit_code == 0
        assert (workdir / "out.tsv").read_text(encoding="utf-8") == ""

    def test_unreadable_lexicon_exits_2_without_output(self, runner, workdir):
        args = [
            "normalize", str(workdir / "input.txt"),
            "--lexicon", str(workdir / "missing.tsv"),
            "--symbols", str(workdir / "symbols.tsv"),
            "-o", str(workdir / "out.tsv"),
        ]
        result = runner.invoke(main, args)
        assert result.exit_code == 2
        assert not (workdir / "out.tsv").exists()

    def test_invalid_lexicon_exits_2_without_output(self, runner, workdir):
        (workdir / "lexicon.tsv").write_text("mak\t'x'\tXX\n", encoding="utf-8")
        result = runner.invoke(main, _normalize_args(workdir, "out.tsv"))
        assert result.exit_code == 2
        assert not (workdir / "out.tsv").exists()

    def test_stdout_when_no_output_given(self, runner, workdir):
        args = _normalize_args(workdir, "unused.tsv")[:-2]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 16


class TestValidate:
    def test_valid_file_exits_zero(self, runner, workdir):
        result = runner.invoke(main, ["validate", str(workdir / "gold.tsv")])
        assert result.exit_code == 0
        assert "ok" in result.output

    def test_dangling_continuation_exits_one_naming_line(self, runner, workdir):
        bad = workdir / "bad.tsv"
        bad.write_text(EXCERPT_CORPUS + "tse&\t\t\t\t\n", encoding="utf-8")
        result = runner.invoke(main, ["validate", str(bad)])
        assert result.exit_code == 1
        assert "line 17" in result.output

    def test_multiple_files(self, runner, workdir):
        bad = workdir / "bad.tsv"
        bad.write_text("x\ty\n", encoding="utf-8")
        result = runner.invoke(main, ["validate", str(workdir / "gold.tsv"), str(bad)])
        assert result.exit_code == 1


class TestStats:
    def test_excerpt_stats(self, runner, workdir):
        result = runner.invoke(main, ["stats", str(workdir / "gold.tsv")])
        assert result.exit_code == 0
        assert "total gold-standard words\t15" in result.output
        assert "total non-whitespace characters\t66" in result.output


class TestEval:
    def test_gold_vs_gold(self, runner, workdir):
        result = runner.invoke(
            main, ["eval", str(workdir / "gold.tsv"), str(workdir / "gold.tsv")]
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "Metric\tPerformance"
        assert lines[1] == "WER\t0.0000"
        assert lines[2] == "BLEU-1\t1.0000"
        assert lines[5] == "BLEU-4\t1.0000"

    def test_machine_vs_gold_runs(self, runner, workdir):
        assert runner.invoke(main, _normalize_args(workdir, "hyp.tsv")).exit_code == 0
        result = runner.invoke(
            main, ["eval", str(workdir / "hyp.tsv"), str(workdir / "gold.tsv")]
        )
        assert result.exit_code == 0
        assert result.output.splitlines()[1] == "WER\t0.0000"

    def test_directory_pairing(self, runner, workdir):
        hyp_dir, gold_dir = workdir / "hyp", workdir / "gold"
        hyp_dir.mkdir(), gold_dir.mkdir()
        (hyp_dir / "t1.tsv").write_text(EXCERPT_CORPUS, encoding="utf-8")
        (gold_dir / "t1.tsv").write_text(EXCERPT_CORPUS, encoding="utf-8")
        result = runner.invoke(main, ["eval", str(hyp_dir), str(gold_dir)])
        assert result.exit_code == 0
        assert "WER\t0.0000" in result.output

    def test_missing_gold_counterpart_is_usage_error(self, runner, workdir):
        hyp_dir, gold_dir = workdir / "hyp", workdir / "gold"
        hyp_dir.mkdir(), gold_dir.mkdir()
        (hyp_dir / "t1.tsv").write_text(EXCERPT_CORPUS, encoding="utf-8")
        result = runner.invoke(main, ["eval", str(hyp_dir), str(gold_dir)])
        assert result.exit_code == 2


class TestTag:
    def test_legacy_upgrade_produces_gold_tags(self, runner, workdir):
        legacy = "\n".join(
            "\t".join(line.split("\t")[:4]) for line in EXCERPT_CORPUS.splitlines()
        ) + "\n"
        (workdir / "legacy.tsv").write_text(legacy, encoding="utf-8")
        result = runner.invoke(main, [
            "tag", str(workdir / "legacy.tsv"),
            "--lexicon", str(workdir / "lexicon.tsv"),
            "--symbols", str(workdir / "symbols.tsv"),
            "-o", str(workdir / "tagged.tsv"),
        ])
        assert result.exit_code == 0, result.output
        assert (workdir / "tagged.tsv").read_text(encoding="utf-8") == EXCERPT_CORPUS

    def test_diagnostics_written_to_file(self, runner, workdir):
        (workdir / "lexicon.tsv").write_text(
            "traw\t'that'\tDT\ntraw\t'if'\tCC\n", encoding="utf-8"
        )
        (workdir / "corpus.tsv").write_text(
            "traw\ttraw\t'that'\t100.0%\tDT\n", encoding="utf-8"
        )
        result = runner.invoke(main, [
            "tag", str(workdir / "corpus.tsv"),
            "--lexicon", str(workdir / "lexicon.tsv"),
            "--symbols", str(workdir / "symbols.tsv"),
            "--diagnostics", str(workdir / "diag.jsonl"),
            "-o", str(workdir / "tagged.tsv"),
        ])
        assert result.exit_code == 0, result.output
        assert '"traw"' in (workdir / "diag.jsonl").read_text(encoding="utf-8")
        assert "\tUN\n" in (workdir / "tagged.tsv").read_text(encoding="utf-8")
