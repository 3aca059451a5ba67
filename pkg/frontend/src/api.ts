import { Decision, DocumentDetail, DocumentSummary, RecordPayload } from "./types.js";

const PREFIX = "/api/v1";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class ExportRefusedError extends ApiError {}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = await response.json();
    return typeof body?.detail === "string" ? body.detail : JSON.stringify(body);
  } catch {
    return response.statusText;
  }
}

export interface DecisionResponse {
  record: RecordPayload;
  status: "pending" | "approved";
}

// All server communication goes through this interface; tests substitute a
// fake transport, production uses ReviewApi over fetch.
export interface ReviewTransport {
  listDocuments(): Promise<DocumentSummary[]>;
  getDocument(id: string): Promise<DocumentDetail>;
  postDecision(id: string, recordIndex: number, decision: Decision): Promise<DecisionResponse>;
  exportDocument(id: string, force?: boolean): Promise<Uint8Array>;
}

export class ReviewApi implements ReviewTransport {
  constructor(private baseUrl: string = "") {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + PREFIX + path;
  }

  private async checked(response: Response): Promise<Response> {
    if (!response.ok) {
      const detail = await errorDetail(response);
      if (response.status === 409) {
        throw new ExportRefusedError(response.status, detail);
      }
      throw new ApiError(response.status, detail);
    }
    return response;
  }

  async listDocuments(): Promise<DocumentSummary[]> {
    const response = await this.checked(await fetch(this.url("/documents")));
    const payload = await response.json();
    return payload.documents as DocumentSummary[];
  }

  async getDocument(id: string): Promise<DocumentDetail> {
    const response = await this.checked(
      await fetch(this.url(`/documents/${encodeURIComponent(id)}`)),
    );
    return (await response.json()) as DocumentDetail;
  }

  async postDecision(
    id: string,
    recordIndex: number,
    decision: Decision,
  ): Promise<DecisionResponse> {
    const response = await this.checked(
      await fetch(this.url(`/documents/${encodeURIComponent(id)}/records/${recordIndex}/decision`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(decision),
      }),
    );
    return (await response.json()) as DecisionResponse;
  }

  async exportDocument(id: string, force = false): Promise<Uint8Array> {
    const query = force ? "?force=true" : "";
    const response = await this.checked(
      await fetch(this.url(`/documents/${encodeURIComponent(id)}/export${query}`)),
    );
    return new Uint8Array(await response.arrayBuffer());
  }
}
