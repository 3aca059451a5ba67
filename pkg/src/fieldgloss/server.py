"""Review service: persistent sessions and the HTTP facade for the review UI.

A session is one directory on disk: ``session.json`` holds the immutable
machine snapshot (outcomes plus ranked candidates, written once when the
session is created) and ``decisions.jsonl`` is an append-only log of human
decisions replayed on open. Approving never alters machine candidate
lists — only decisions accumulate — and exporting composes the gold
corpus file from snapshot plus decisions, refusing while records remain
undecided unless forced.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .corpus_io import (
    AlignedRecord,
    CorpusDocument,
    CorpusFormatError,
    make_continuation,
    make_record,
    write_document,
)
from .lexicon import Lexicon, PosTag
from .normalizer import rank_candidates
from .pipeline import PipelineConfig, records_from_outcomes, tokenize_transcription
from .symbols import SymbolClassTable

API_PREFIX = "/api/v1"

SNAPSHOT_FILE = "session.json"
DECISIONS_FILE = "decisions.jsonl"


class SessionError(RuntimeError):
    pass


class ExportRefused(RuntimeError):
    pass


@dataclass
class ReviewRecord:
    index: int
    original: str
    is_continuation: bool
    word: str  # joined logical word this record annotates ('' on continuations)
    machine: dict[str, Any] | None
    candidates: list[dict[str, Any]] = field(default_factory=list)
    decision: dict[str, Any] | None = None

    def to_snapshot(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "original": self.original,
            "is_continuation": self.is_continuation,
            "word": self.word,
            "machine": self.machine,
            "candidates": self.candidates,
        }

    @classmethod
    def from_snapshot(cls, data: dict[str, Any]) -> "ReviewRecord":
        return cls(
            index=data["index"],
            original=data["original"],
            is_continuation=data["is_continuation"],
            word=data["word"],
            machine=data["machine"],
            candidates=list(data["candidates"]),
        )


@dataclass
class ReviewDocument:
    id: str
    source: str
    records: list[ReviewRecord]

    def decidable(self) -> list[ReviewRecord]:
        return [r for r in self.records if not r.is_continuation]

    def decided_count(self) -> int:
        return sum(1 for r in self.decidable() if r.decision is not None)

    def status(self) -> str:
        decidable = self.decidable()
        return "approved" if all(r.decision is not None for r in decidable) else "pending"

    def summary(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "status": self.status(),
            "records": len(self.records),
            "decidable": len(self.decidable()),
            "decided": self.decided_count(),
        }


def build_review_document(
    text: str,
    doc_id: str,
    lexicon: Lexicon,
    table: SymbolClassTable,
    config: PipelineConfig | None = None,
) -> ReviewDocument:
    """Run pre-annotation and capture outcomes plus ranked candidates."""
    from .normalizer import normalize_document

    config = config or PipelineConfig()
    tokens = tokenize_transcription(text)
    normalized = normalize_document(
        tokens,
        lexicon,
        table,
        suffix_policy=config.suffix_policy,
        threshold=config.threshold,
        foreign_pattern=config.foreign_pattern,
    )
    aligned = records_from_outcomes(normalized, lexicon)

    # Candidate lists per logical token, in record order of their host lines.
    per_token: dict[int, tuple] = {}
    for token, outcome in normalized:
        ranked = rank_candidates(token, lexicon, table, k=config.top_k)
        per_token[token.position] = (token, outcome, ranked)

    records: list[ReviewRecord] = []
    token_cursor = 0
    for index, record in enumerate(aligned):
        if record.is_continuation:
            records.append(
                ReviewRecord(
                    index=index,
                    original=record.original,
                    is_continuation=True,
                    word="",
                    machine=None,
                )
            )
            continue
        token, outcome, ranked = per_token[token_cursor]
        token_cursor += 1
        machine = {
            "kind": outcome.kind.value,
            "normalized": record.normalized,
            "gloss": record.gloss,
            "certainty": record.certainty,
            "pos": record.pos.value,
            "score": outcome.match_score,
            "used_fallback": outcome.used_fallback,
        }
        candidates = [
            {
                "lemma": c.entry.lemma,
                "gloss": c.entry.gloss,
                "pos": c.entry.pos.value,
                "variant": c.variant,
                "distance": c.distance,
                "score": c.score,
            }
            for c in ranked
        ]
        records.append(
            ReviewRecord(
                index=index,
                original=record.original,
                is_continuation=False,
                word=token.raw,
                machine=machine,
                candidates=candidates,
            )
        )
    return ReviewDocument(id=doc_id, source="", records=records)


def _validate_decision(record: ReviewRecord, decision: dict[str, Any]) -> dict[str, Any]:
    action = decision.get("action")
    if action not in ("accept", "override"):
        raise ValueError(f"unknown decision action {action!r}")
    clean: dict[str, Any] = {"action": action}
    if action == "accept":
        candidate = decision.get("candidate")
        if candidate is not None:
            if not isinstance(candidate, int) or not (0 <= candidate < len(record.candidates)):
                raise ValueError(f"candidate index {candidate!r} out of range")
        clean["candidate"] = candidate
    else:
        normalized = decision.get("normalized")
        if not normalized or not isinstance(normalized, str):
            raise ValueError("override requires a non-empty 'normalized' value")
        clean["normalized"] = normalized
        if decision.get("gloss") is not None:
            clean["gloss"] = str(decision["gloss"])
        if decision.get("pos") is not None:
            pos_text = str(decision["pos"])
            if pos_text not in PosTag.__members__:
                raise ValueError(f"unknown POS tag {pos_text!r}")
            clean["pos"] = pos_text
    certainty = decision.get("certainty")
    if certainty is not None:
        certainty = float(certainty)
        if not (0.0 < certainty <= 100.0) or round(certainty, 1) != certainty:
            raise ValueError(
                f"certainty must have one decimal and lie in (0, 100.0], got {certainty}"
            )
        clean["certainty"] = certainty
    if decision.get("note"):
        clean["note"] = str(decision["note"])
    return clean


def _decided_record(record: ReviewRecord) -> AlignedRecord:
    """Compose the exported record from the snapshot plus its decision."""
    if record.is_continuation:
        return make_continuation(record.original)
    machine = record.machine
    decision = record.decision or {"action": "accept", "candidate": None}
    if decision["action"] == "accept":
        candidate = decision.get("candidate")
        if candidate is None:
            normalized = machine["normalized"]
            gloss = machine["gloss"]
            pos = PosTag[machine["pos"]]
            default_certainty = machine["certainty"]
        else:
            chosen = record.candidates[candidate]
            normalized = chosen["lemma"]
            gloss = chosen["gloss"]
            pos = PosTag[chosen["pos"]]
            default_certainty = 100.0 if chosen["score"] == 1.0 else round(chosen["score"] * 100.0, 1)
    else:
        normalized = decision["normalized"]
        gloss = decision.get("gloss", machine["gloss"])
        pos = PosTag[decision.get("pos", machine["pos"])]
        default_certainty = 100.0
    certainty = decision.get("certainty", default_certainty)
    return make_record(record.original, normalized, gloss, certainty, pos)


class SessionStore:
    """On-disk review session: machine snapshot + append-only decision log."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self._documents: dict[str, ReviewDocument] = {}
        self._log_lock = threading.Lock()
        self._doc_locks: dict[str, threading.Lock] = {}
        snapshot_path = self.root / SNAPSHOT_FILE
        if not snapshot_path.exists():
            raise SessionError(f"no session snapshot at {snapshot_path}")
        snapshot = json.loads(snapshot_path.read_text(encoding="utf-8"))
        for doc_data in snapshot["documents"]:
            doc = ReviewDocument(
                id=doc_data["id"],
                source=doc_data.get("source", ""),
                records=[ReviewRecord.from_snapshot(r) for r in doc_data["records"]],
            )
            self._documents[doc.id] = doc
            self._doc_locks[doc.id] = threading.Lock()
        log_path = self.root / DECISIONS_FILE
        if log_path.exists():
            for line in log_path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                event = json.loads(line)
                doc = self._documents.get(event["doc_id"])
                if doc is None:
                    continue
                doc.records[event["record_index"]].decision = event["decision"]

    @classmethod
    def create(
        cls,
        root: Path,
        documents: list[ReviewDocument],
        *,
        overwrite: bool = False,
    ) -> "SessionStore":
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        snapshot_path = root / SNAPSHOT_FILE
        if snapshot_path.exists() and not overwrite:
            raise SessionError(f"session already exists at {snapshot_path}")
        snapshot = {
            "version": 1,
            "documents": [
                {
                    "id": doc.id,
                    "source": doc.source,
                    "records": [r.to_snapshot() for r in doc.records],
                }
                for doc in documents
            ],
        }
        snapshot_path.write_text(
            json.dumps(snapshot, ensure_ascii=False, indent=1), encoding="utf-8"
        )
        log_path = root / DECISIONS_FILE
        if overwrite or not log_path.exists():
            log_path.write_text("", encoding="utf-8")
        return cls(root)

    def list_documents(self) -> list[dict[str, Any]]:
        return [doc.summary() for doc in self._documents.values()]

    def get_document(self, doc_id: str) -> ReviewDocument:
        doc = self._documents.get(doc_id)
        if doc is None:
            raise KeyError(doc_id)
        return doc

    def decide(self, doc_id: str, record_index: int, decision: dict[str, Any]) -> ReviewRecord:
        doc = self.get_document(doc_id)
        if not (0 <= record_index < len(doc.records)):
            raise KeyError(record_index)
        record = doc.records[record_index]
        if record.is_continuation:
            raise ValueError("continuation lines carry no annotation to decide")
        clean = _validate_decision(record, decision)
        with self._doc_locks[doc_id]:
            if record.decision == clean:
                return record  # idempotent repeat: state and log untouched
            record.decision = clean
            with self._log_lock:
                with open(self.root / DECISIONS_FILE, "a", encoding="utf-8") as f:
                    f.write(
                        json.dumps(
                            {
                                "doc_id": doc_id,
                                "record_index": record_index,
                                "decision": clean,
                            },
                            ensure_ascii=False,
                            sort_keys=True,
                        )
                        + "\n"
                    )
        return record

    def export_document(self, doc_id: str, *, force: bool = False) -> str:
        doc = self.get_document(doc_id)
        undecided = [r.index for r in doc.decidable() if r.decision is None]
        if undecided and not force:
            raise ExportRefused(
                f"document {doc_id!r} has {len(undecided)} undecided records "
                f"(first at index {undecided[0]}); use force to export anyway"
            )
        aligned = [_decided_record(r) for r in doc.records]
        corpus = CorpusDocument(id=doc_id, records=aligned, source=doc.source)
        try:
            return write_document(corpus)
        except CorpusFormatError as exc:
            raise SessionError(f"export of {doc_id!r} produced an invalid document: {exc}")


class DecisionIn(BaseModel):
    action: str
    candidate: Optional[int] = None
    normalized: Optional[str] = None
    gloss: Optional[str] = None
    pos: Optional[str] = None
    certainty: Optional[float] = None
    note: Optional[str] = None


def _record_payload(record: ReviewRecord) -> dict[str, Any]:
    payload = record.to_snapshot()
    payload["decision"] = record.decision
    return payload


def create_app(store: SessionStore, ui_dir: Path | str | None = None) -> FastAPI:
    app = FastAPI(title="fieldgloss review service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get(API_PREFIX + "/documents")
    def list_documents():
        return {"documents": store.list_documents()}

    @app.get(API_PREFIX + "/documents/{doc_id}")
    def get_document(doc_id: str):
        try:
            doc = store.get_document(doc_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown document {doc_id!r}")
        summary = doc.summary()
        summary["records"] = [_record_payload(r) for r in doc.records]
        return summary

    @app.post(API_PREFIX + "/documents/{doc_id}/records/{record_index}/decision")
    def post_decision(doc_id: str, record_index: int, decision: DecisionIn):
        try:
            record = store.decide(
                doc_id, record_index, decision.model_dump(exclude_none=True)
            )
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=f"not found: {exc}")
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        doc = store.get_document(doc_id)
        return {"record": _record_payload(record), "status": doc.status()}

    @app.get(API_PREFIX + "/documents/{doc_id}/export", response_class=PlainTextResponse)
    def export_document(doc_id: str, force: bool = False):
        try:
            return store.export_document(doc_id, force=force)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown document {doc_id!r}")
        except ExportRefused as exc:
            raise HTTPException(status_code=409, detail=str(exc))

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
