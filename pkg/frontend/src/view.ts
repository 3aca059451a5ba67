import { ReviewSession } from "./session.js";
import { CandidateInfo, RecordPayload } from "./types.js";

export interface ViewHandlers {
  onJump(recordIndex: number): void;
  onAccept(candidateIndex?: number): void;
  onOverride(): void;
  onExport(force: boolean): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function scorePercent(score: number | null): string {
  return score === null ? "" : `${(score * 100).toFixed(1)}%`;
}

// The displayed word for a host record: any preceding '&' fragments joined
// with the record's own original (markers stripped), as one logical word.
export function displayWord(record: RecordPayload): string {
  return record.word || record.original;
}

function candidateChips(
  record: RecordPayload,
  handlers: ViewHandlers,
): HTMLElement {
  const wrap = el("div", "candidates");
  record.candidates.forEach((candidate: CandidateInfo, rank: number) => {
    const chip = el(
      "button",
      "candidate-chip",
      `${rank + 1} ${candidate.lemma} ${candidate.gloss} (${candidate.pos}, d=${candidate.distance})`,
    );
    chip.type = "button";
    chip.title = `variant ${candidate.variant}, score ${candidate.score.toFixed(3)}`;
    chip.addEventListener("click", (event) => {
      event.stopPropagation();
      handlers.onJump(record.index);
      handlers.onAccept(rank);
    });
    wrap.appendChild(chip);
  });
  return wrap;
}

function decisionCell(record: RecordPayload): HTMLElement {
  const decision = record.decision;
  if (!decision) return el("td", "decision pending", "—");
  if (decision.action === "accept") {
    const which =
      decision.candidate === null || decision.candidate === undefined
        ? "machine"
        : `candidate ${decision.candidate + 1}`;
    return el("td", "decision accepted", `accepted ${which}`);
  }
  return el("td", "decision overridden", `override: ${decision.normalized ?? ""}`);
}

function recordRow(
  record: RecordPayload,
  isCurrent: boolean,
  handlers: ViewHandlers,
): HTMLTableRowElement {
  const machine = record.machine!;
  const row = el("tr", "record-row");
  row.dataset.index = String(record.index);
  if (isCurrent) row.classList.add("current");
  if (machine.kind === "unknown") row.classList.add("unknown");
  if (record.decision) row.classList.add("decided");

  row.appendChild(el("td", "index", String(record.index)));
  row.appendChild(el("td", "word", displayWord(record)));
  const suggestion = el("td", "machine");
  suggestion.appendChild(el("span", "normalized", machine.normalized));
  suggestion.appendChild(el("span", "score", scorePercent(machine.score)));
  if (machine.used_fallback) suggestion.appendChild(el("span", "fallback", "stem"));
  row.appendChild(suggestion);
  row.appendChild(el("td", "gloss", machine.gloss));
  row.appendChild(el("td", "certainty", `${machine.certainty.toFixed(1)}%`));
  row.appendChild(el("td", "pos", machine.pos));
  const cell = el("td", "alternates");
  cell.appendChild(candidateChips(record, handlers));
  row.appendChild(cell);
  row.appendChild(decisionCell(record));

  row.addEventListener("click", () => handlers.onJump(record.index));
  return row;
}

export function renderDocument(
  container: HTMLElement,
  session: ReviewSession,
  handlers: ViewHandlers,
): void {
  container.replaceChildren();

  const header = el("div", "doc-header");
  header.appendChild(el("h2", "doc-id", session.id));
  header.appendChild(
    el(
      "span",
      "progress",
      `${session.decidedCount}/${session.decidable.length} decided · ${session.status}`,
    ),
  );
  const exportButton = el("button", "export", "Export gold file");
  exportButton.type = "button";
  exportButton.id = "export-button";
  exportButton.disabled = !session.canExport;
  exportButton.addEventListener("click", () => handlers.onExport(false));
  header.appendChild(exportButton);
  if (!session.canExport) {
    const force = el("button", "export-force", "Force export…");
    force.type = "button";
    force.addEventListener("click", () => handlers.onExport(true));
    header.appendChild(force);
  }
  container.appendChild(header);

  if (session.decidable.length === 0) {
    container.appendChild(
      el("p", "empty-state", "This document has no reviewable records."),
    );
    return;
  }

  const table = el("table", "record-table");
  const head = el("tr");
  for (const label of ["#", "word", "machine", "gloss", "certainty", "pos", "candidates", "decision"]) {
    head.appendChild(el("th", undefined, label));
  }
  table.appendChild(head);
  const currentIndex = session.current?.index;
  for (const record of session.decidable) {
    table.appendChild(recordRow(record, record.index === currentIndex, handlers));
  }
  container.appendChild(table);
}

export function renderError(container: HTMLElement, message: string): void {
  container.replaceChildren();
  const banner = el("div", "error-banner");
  banner.appendChild(el("strong", undefined, "Service unreachable. "));
  banner.appendChild(el("span", undefined, message));
  container.appendChild(banner);
}

export function renderNotice(container: HTMLElement, message: string): void {
  let notice = container.querySelector<HTMLElement>(".notice");
  if (!notice) {
    notice = el("div", "notice");
    container.prepend(notice);
  }
  notice.textContent = message;
}
