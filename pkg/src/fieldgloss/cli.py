"""Command-line entry points: normalize, tag, validate, stats, eval, serve."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import corpus_io
from .corpus_io import compute_stats, format_stats_report, parse_document, validate_text
from .evaluation import evaluate_documents, format_eval_report
from .lexicon import load_lexicon
from .normalizer import DEFAULT_THRESHOLD, SuffixPolicy
from .pipeline import PipelineConfig, pre_annotate, retag_document
from .symbols import load_table


def _load_config(lexicon_path: str, symbols_path: str):
    try:
        table = load_table(symbols_path)
    except (OSError, ValueError) as exc:
        raise click.UsageError(f"cannot load symbol table: {exc}")
    try:
        lexicon = load_lexicon(lexicon_path, table)
    except (OSError, ValueError) as exc:
        raise click.UsageError(f"cannot load lexicon: {exc}")
    return lexicon, table


def _write_output(content: str, output: str | None):
    if output is None or output == "-":
        click.echo(content, nl=False)
    else:
        Path(output).write_text(content, encoding="utf-8", newline="")


def _diagnostic_sink(path: str | None):
    collected = []

    def sink(diag):
        collected.append(diag)

    def flush():
        if not collected:
            return
        lines = "".join(d.to_json() + "\n" for d in collected)
        if path:
            Path(path).write_text(lines, encoding="utf-8")
        else:
            click.echo(lines, nl=False, err=True)

    return sink, flush


@click.group()
def main():
    """Turn noisy transcriptions into aligned, glossed, POS-tagged corpora."""


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--lexicon", "lexicon_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--symbols", "symbols_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--suffix-policy", default="*", show_default=True,
              help="Comma-separated series suffixes to strip; '*' strips one trailing symbol.")
@click.option("--threshold", default=DEFAULT_THRESHOLD, show_default=True,
              help="Match score at or below which the suffix fallback runs.")
@click.option("--foreign-pattern", default=None,
              help="Regex marking tokens as foreign material regardless of reducibility.")
@click.option("--doc-id", default=None, help="Document id (default: input file stem).")
@click.option("--diagnostics", "diagnostics_path", default=None, type=click.Path(dir_okay=False),
              help="Write POS-conflict diagnostics (JSON lines) here instead of stderr.")
@click.option("-o", "--output", default=None, help="Output path ('-' for stdout).")
def normalize(input_file, lexicon_path, symbols_path, suffix_policy, threshold,
              foreign_pattern, doc_id, diagnostics_path, output):
    """Pre-annotate a raw transcription into a corpus-format document."""
    lexicon, table = _load_config(lexicon_path, symbols_path)
    text = Path(input_file).read_text(encoding="utf-8")
    config = PipelineConfig(
        suffix_policy=SuffixPolicy.parse(suffix_policy),
        threshold=threshold,
        foreign_pattern=foreign_pattern,
    )
    sink, flush = _diagnostic_sink(diagnostics_path)
    doc = pre_annotate(
        text,
        doc_id or Path(input_file).stem,
        lexicon,
        table,
        config=config,
        on_diagnostic=sink,
    )
    content = corpus_io.write_document(doc)
    _write_output(content, output)
    flush()


@main.command()
@click.argument("corpus_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--lexicon", "lexicon_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--symbols", "symbols_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--diagnostics", "diagnostics_path", default=None, type=click.Path(dir_okay=False))
@click.option("-o", "--output", default=None, help="Output path ('-' for stdout).")
def tag(corpus_file, lexicon_path, symbols_path, diagnostics_path, output):
    """Recompute POS tags by lemma lookup (accepts legacy 4-field files)."""
    lexicon, table = _load_config(lexicon_path, symbols_path)
    text = Path(corpus_file).read_text(encoding="utf-8")
    try:
        doc = parse_document(text, Path(corpus_file).stem, allow_legacy=True)
    except corpus_io.CorpusParseError as exc:
        raise click.ClickException(f"{corpus_file}: {exc}")
    sink, flush = _diagnostic_sink(diagnostics_path)
    retagged = retag_document(doc, lexicon, on_diagnostic=sink)
    _write_output(corpus_io.write_document(retagged), output)
    flush()


@main.command()
@click.argument("corpus_files", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
def validate(corpus_files):
    """Check corpus files against every format invariant; exit 1 on problems."""
    failed = False
    for path in corpus_files:
        text = Path(path).read_text(encoding="utf-8")
        problems = validate_text(text)
        for problem in problems:
            click.echo(f"{path}: {problem}")
            failed = True
        if not problems:
            click.echo(f"{path}: ok")
    sys.exit(1 if failed else 0)


@main.command()
@click.argument("corpus_files", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--legacy", is_flag=True, help="Accept 4-field lines (no POS column).")
def stats(corpus_files, legacy):
    """Print corpus statistics (characters, words, uniques, sentences, tags)."""
    docs = []
    for path in corpus_files:
        text = Path(path).read_text(encoding="utf-8")
        try:
            docs.append(parse_document(text, Path(path).stem, allow_legacy=legacy))
        except corpus_io.CorpusParseError as exc:
            raise click.ClickException(f"{path}: {exc}")
    click.echo(format_stats_report(compute_stats(docs)), nl=False)


def _paired_documents(hyp_path: str, gold_path: str):
    hyp, gold = Path(hyp_path), Path(gold_path)
    if hyp.is_dir() != gold.is_dir():
        raise click.UsageError("hypothesis and gold must both be files or both directories")
    if hyp.is_dir():
        hyp_files = sorted(p for p in hyp.iterdir() if p.is_file())
        pairs = []
        for hf in hyp_files:
            gf = gold / hf.name
            if not gf.exists():
                raise click.UsageError(f"gold counterpart missing for {hf.name}")
            pairs.append((hf, gf))
        if not pairs:
            raise click.UsageError(f"no files under {hyp}")
        return pairs
    return [(hyp, gold)]


@main.command(name="eval")
@click.argument("hypothesis", type=click.Path(exists=True))
@click.argument("gold", type=click.Path(exists=True))
@click.option("--legacy", is_flag=True, help="Accept 4-field lines (no POS column).")
def eval_command(hypothesis, gold, legacy):
    """Score pre-annotations against gold: WER and BLEU-1..4."""
    pairs = []
    for hyp_file, gold_file in _paired_documents(hypothesis, gold):
        try:
            hyp_doc = parse_document(
                hyp_file.read_text(encoding="utf-8"), hyp_file.stem, allow_legacy=legacy
            )
            gold_doc = parse_document(
                gold_file.read_text(encoding="utf-8"), gold_file.stem, allow_legacy=legacy
            )
        except corpus_io.CorpusParseError as exc:
            raise click.ClickException(f"{hyp_file} / {gold_file}: {exc}")
        pairs.append((hyp_doc, gold_doc))
    report = evaluate_documents(pairs)
    click.echo(format_eval_report(report), nl=False)


@main.command()
@click.option("--session", "session_dir", required=True, type=click.Path(file_okay=False),
              help="Session directory (created from inputs if empty).")
@click.option("--input", "input_files", multiple=True, type=click.Path(exists=True, dir_okay=False),
              help="Raw transcription(s) to pre-annotate into a new session.")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--symbols", "symbols_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--suffix-policy", default="*", show_default=True)
@click.option("--threshold", default=DEFAULT_THRESHOLD, show_default=True)
@click.option("--foreign-pattern", default=None)
@click.option("--topk", default=5, show_default=True, help="Candidates surfaced per record.")
@click.option("--ui", "ui_dir", default=None, type=click.Path(exists=True, file_okay=False),
              help="Serve a built review UI (static files) at the root path.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8571, show_default=True)
def serve(session_dir, input_files, lexicon_path, symbols_path, suffix_policy,
          threshold, foreign_pattern, topk, ui_dir, host, port):
    """Serve the review HTTP API for a session."""
    import uvicorn

    from .server import SNAPSHOT_FILE, SessionStore, build_review_document, create_app

    session_path = Path(session_dir)
    if not (session_path / SNAPSHOT_FILE).exists():
        if not input_files:
            raise click.UsageError(
                "session does not exist yet; provide --input/--lexicon/--symbols to create it"
            )
        if not lexicon_path or not symbols_path:
            raise click.UsageError("creating a session requires --lexicon and --symbols")
        lexicon, table = _load_config(lexicon_path, symbols_path)
        config = PipelineConfig(
            suffix_policy=SuffixPolicy.parse(suffix_policy),
            threshold=threshold,
            foreign_pattern=foreign_pattern,
            top_k=topk,
        )
        documents = [
            build_review_document(
                Path(f).read_text(encoding="utf-8"), Path(f).stem, lexicon, table, config
            )
            for f in input_files
        ]
        store = SessionStore.create(session_path, documents)
    else:
        store = SessionStore(session_path)
    app = create_app(store, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
