import { ReviewTransport } from "./api.js";
import { Decision, DocumentDetail, RecordPayload } from "./types.js";

export interface OverrideFields {
  normalized: string;
  gloss?: string;
  pos?: string;
  certainty?: number;
  note?: string;
}

// Client-side review state for one document. The server stays authoritative:
// every mutation round-trips through the transport and the row is replaced
// by the server-confirmed record, so the UI can never drift from the store.
export class ReviewSession {
  private detail: DocumentDetail;
  private cursor: number; // index into detail.records, always a decidable row

  private constructor(
    private transport: ReviewTransport,
    detail: DocumentDetail,
  ) {
    this.detail = detail;
    this.cursor = this.firstUndecided() ?? this.firstDecidable() ?? -1;
  }

  static async load(transport: ReviewTransport, documentId: string): Promise<ReviewSession> {
    return new ReviewSession(transport, await transport.getDocument(documentId));
  }

  get id(): string {
    return this.detail.id;
  }

  get records(): RecordPayload[] {
    return this.detail.records;
  }

  // Rows the reviewer steps through: continuation fragments are annotated on
  // their host record, so only non-continuation records are decidable.
  get decidable(): RecordPayload[] {
    return this.detail.records.filter((r) => !r.is_continuation);
  }

  get decidedCount(): number {
    return this.decidable.filter((r) => r.decision !== null).length;
  }

  get status(): "pending" | "approved" {
    return this.detail.status;
  }

  get allDecided(): boolean {
    return this.decidable.every((r) => r.decision !== null);
  }

  get current(): RecordPayload | null {
    return this.cursor >= 0 ? this.detail.records[this.cursor] : null;
  }

  private firstDecidable(): number | null {
    const record = this.detail.records.find((r) => !r.is_continuation);
    return record ? record.index : null;
  }

  private firstUndecided(): number | null {
    const record = this.detail.records.find((r) => !r.is_continuation && r.decision === null);
    return record ? record.index : null;
  }

  private move(step: 1 | -1): RecordPayload | null {
    if (this.cursor < 0) return null;
    let index = this.cursor + step;
    while (index >= 0 && index < this.detail.records.length) {
      if (!this.detail.records[index].is_continuation) {
        this.cursor = index;
        break;
      }
      index += step;
    }
    return this.current;
  }

  next(): RecordPayload | null {
    return this.move(1);
  }

  prev(): RecordPayload | null {
    return this.move(-1);
  }

  jumpTo(recordIndex: number): RecordPayload | null {
    const record = this.detail.records[recordIndex];
    if (!record || record.is_continuation) return this.current;
    this.cursor = recordIndex;
    return record;
  }

  advanceToUndecided(): RecordPayload | null {
    const index = this.firstUndecided();
    if (index !== null) this.cursor = index;
    return index !== null ? this.current : null;
  }

  private async decide(record: RecordPayload, decision: Decision): Promise<RecordPayload> {
    const response = await this.transport.postDecision(this.detail.id, record.index, decision);
    this.detail.records[record.index] = response.record;
    this.detail.status = response.status;
    return response.record;
  }

  // Accept the machine row (candidateIndex omitted) or a ranked alternate,
  // then advance to the next unresolved record: the keyboard flow.
  async accept(candidateIndex?: number): Promise<RecordPayload> {
    const record = this.current;
    if (!record) throw new Error("no decidable records");
    if (candidateIndex !== undefined && !record.candidates[candidateIndex]) {
      throw new Error(`no candidate at rank ${candidateIndex}`);
    }
    const confirmed = await this.decide(record, {
      action: "accept",
      candidate: candidateIndex ?? null,
    });
    this.advanceToUndecided();
    return confirmed;
  }

  async override(fields: OverrideFields): Promise<RecordPayload> {
    const record = this.current;
    if (!record) throw new Error("no decidable records");
    const confirmed = await this.decide(record, { action: "override", ...fields });
    this.advanceToUndecided();
    return confirmed;
  }

  // Export gate mirrors the server rule so the button can disable itself;
  // the server still enforces it (409) if the client is stale.
  get canExport(): boolean {
    return this.allDecided;
  }

  async export(force = false): Promise<Uint8Array> {
    return this.transport.exportDocument(this.detail.id, force);
  }

  async refresh(): Promise<void> {
    this.detail = await this.transport.getDocument(this.detail.id);
    if (this.cursor >= 0 && this.detail.records[this.cursor]?.is_continuation) {
      this.advanceToUndecided();
    }
  }
}
