import { ApiError, ExportRefusedError, ReviewApi } from "./api.js";
import { ReviewSession } from "./session.js";
import { renderDocument, renderError, renderNotice } from "./view.js";

// Keyboard-first review: thousands of tokens per text make mouse-driven
// correction impractical.
//
//   j / ↓        next record          k / ↑   previous record
//   Enter / a    accept machine row   1-9     accept ranked candidate
//   o            override (prompt)    u       jump to first undecided
//   e            export               E       force export

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "";
}

function download(bytes: Uint8Array, filename: string): void {
  const blob = new Blob([bytes as BlobPart], { type: "text/plain;charset=utf-8" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = filename;
  link.click();
  URL.revokeObjectURL(link.href);
}

function appRoot(): HTMLElement {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  return root;
}

async function boot(): Promise<void> {
  const root = appRoot();
  const api = new ReviewApi(apiBase());

  let session: ReviewSession;
  try {
    const documents = await api.listDocuments();
    if (documents.length === 0) {
      renderError(root, "the session contains no documents");
      return;
    }
    const requested = new URLSearchParams(window.location.search).get("doc");
    const docId = requested ?? documents[0].id;
    session = await ReviewSession.load(api, docId);
  } catch (error) {
    renderError(root, error instanceof Error ? error.message : String(error));
    return;
  }

  const rerender = () => renderDocument(root, session, handlers);

  async function guarded(action: () => Promise<void>): Promise<void> {
    try {
      await action();
    } catch (error) {
      if (error instanceof ExportRefusedError) {
        renderNotice(root, `Export refused: ${error.detail}`);
      } else if (error instanceof ApiError) {
        renderNotice(root, `Rejected by server: ${error.detail}`);
      } else {
        renderNotice(root, error instanceof Error ? error.message : String(error));
      }
    }
    rerender();
  }

  const handlers = {
    onJump(recordIndex: number): void {
      session.jumpTo(recordIndex);
      rerender();
    },
    onAccept(candidateIndex?: number): void {
      void guarded(async () => {
        await session.accept(candidateIndex);
      });
    },
    onOverride(): void {
      const record = session.current;
      if (!record?.machine) return;
      const normalized = window.prompt("Normalized form:", record.machine.normalized);
      if (!normalized) return;
      const gloss = window.prompt("Gloss:", record.machine.gloss) ?? undefined;
      const pos = window.prompt("POS tag:", record.machine.pos) ?? undefined;
      const certaintyText = window.prompt("Certainty % (one decimal):", "100.0");
      const certainty = certaintyText ? Number(certaintyText) : undefined;
      void guarded(async () => {
        await session.override({ normalized, gloss, pos, certainty });
      });
    },
    onExport(force: boolean): void {
      if (force && !window.confirm("Export with undecided records?")) return;
      void guarded(async () => {
        const bytes = await session.export(force);
        download(bytes, `${session.id}.tsv`);
        renderNotice(root, `Exported ${bytes.length} bytes.`);
      });
    },
  };

  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) return;
    switch (event.key) {
      case "j":
      case "ArrowDown":
        session.next();
        rerender();
        break;
      case "k":
      case "ArrowUp":
        session.prev();
        rerender();
        break;
      case "a":
      case "Enter":
        handlers.onAccept();
        break;
      case "o":
        handlers.onOverride();
        break;
      case "u":
        session.advanceToUndecided();
        rerender();
        break;
      case "e":
        handlers.onExport(false);
        break;
      case "E":
        handlers.onExport(true);
        break;
      default:
        if (/^[1-9]$/.test(event.key)) {
          handlers.onAccept(Number(event.key) - 1);
        }
        return;
    }
    event.preventDefault();
  });

  rerender();
}

void boot();
