// Payload shapes of the review service API (/api/v1). The UI renders these
// verbatim: it never synthesizes candidates or machine values of its own.

export type OutcomeKind = "punct" | "foreign" | "matched" | "unknown";

export interface MachineOutcome {
  kind: OutcomeKind;
  normalized: string;
  gloss: string;
  certainty: number;
  pos: string;
  score: number | null;
  used_fallback: boolean;
}

export interface CandidateInfo {
  lemma: string;
  gloss: string;
  pos: string;
  variant: string;
  distance: number;
  score: number;
}

export interface Decision {
  action: "accept" | "override";
  candidate?: number | null;
  normalized?: string;
  gloss?: string;
  pos?: string;
  certainty?: number;
  note?: string;
}

export interface RecordPayload {
  index: number;
  original: string;
  is_continuation: boolean;
  // The joined logical word this record annotates ('' on continuation lines);
  // '&' fragments are folded into the next record's word by the server.
  word: string;
  machine: MachineOutcome | null;
  candidates: CandidateInfo[];
  decision: Decision | null;
}

export interface DocumentSummary {
  id: string;
  status: "pending" | "approved";
  records: number;
  decidable: number;
  decided: number;
}

export interface DocumentDetail {
  id: string;
  status: "pending" | "approved";
  decidable: number;
  decided: number;
  records: RecordPayload[];
}
