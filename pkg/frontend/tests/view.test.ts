// @vitest-environment happy-dom
import { beforeEach, describe, expect, it } from "vitest";

import { ReviewSession } from "../src/session.js";
import { renderDocument, renderError, ViewHandlers } from "../src/view.js";
import { FakeTransport, fixtureDocument } from "./fake.js";

const noopHandlers: ViewHandlers = {
  onJump: () => {},
  onAccept: () => {},
  onOverride: () => {},
  onExport: () => {},
};

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  container = document.getElementById("app")!;
});

describe("renderDocument", () => {
  it("renders one row per logical word, continuations folded in", async () => {
    const session = await ReviewSession.load(new FakeTransport(), "fixture");
    renderDocument(container, session, noopHandlers);
    const rows = container.querySelectorAll("tr.record-row");
    expect(rows.length).toBe(4); // 5 records, 1 continuation
    const joined = container.querySelectorAll("td.word")[1];
    expect(joined.textContent).toBe("ts'umóno");
  });

  it("shows only candidates delivered by the service", async () => {
    const session = await ReviewSession.load(new FakeTransport(), "fixture");
    renderDocument(container, session, noopHandlers);
    const chips = container.querySelectorAll("tr.record-row .candidate-chip");
    const payload = fixtureDocument();
    const expected = payload.records
      .filter((r) => !r.is_continuation)
      .reduce((n, r) => n + r.candidates.length, 0);
    expect(chips.length).toBe(expected);
    expect(chips[0].textContent).toContain("mi'in");
    expect(chips[1].textContent).toContain("mak'");
  });

  it("flags unknown outcomes for mandatory review", async () => {
    const session = await ReviewSession.load(new FakeTransport(), "fixture");
    renderDocument(container, session, noopHandlers);
    const unknownRow = container.querySelector("tr.record-row.unknown");
    expect(unknownRow).not.toBeNull();
    expect(unknownRow!.querySelector("td.word")!.textContent).toBe("zzz");
  });

  it("disables the export button until every record is decided", async () => {
    const session = await ReviewSession.load(new FakeTransport(), "fixture");
    renderDocument(container, session, noopHandlers);
    let button = container.querySelector<HTMLButtonElement>("#export-button")!;
    expect(button.disabled).toBe(true);
    while (!session.allDecided) {
      await session.accept();
    }
    renderDocument(container, session, noopHandlers);
    button = container.querySelector<HTMLButtonElement>("#export-button")!;
    expect(button.disabled).toBe(false);
  });

  it("marks the current row and decision states", async () => {
    const session = await ReviewSession.load(new FakeTransport(), "fixture");
    await session.accept(); // decide row 0, cursor moves to row 2
    renderDocument(container, session, noopHandlers);
    const current = container.querySelector("tr.record-row.current")!;
    expect(current.querySelector("td.word")!.textContent).toBe("ts'umóno");
    const decided = container.querySelectorAll("tr.record-row.decided");
    expect(decided.length).toBe(1);
    expect(decided[0].querySelector("td.decision")!.textContent).toContain("accepted machine");
  });

  it("renders an empty state for documents with no reviewable records", async () => {
    const transport = new FakeTransport({
      id: "empty", status: "approved", decidable: 0, decided: 0, records: [],
    });
    const session = await ReviewSession.load(transport, "empty");
    renderDocument(container, session, noopHandlers);
    expect(container.querySelector(".empty-state")).not.toBeNull();
    expect(container.querySelectorAll("tr.record-row").length).toBe(0);
  });
});

describe("renderError", () => {
  it("shows a visible error banner when the service is unreachable", () => {
    renderError(container, "connect ECONNREFUSED");
    const banner = container.querySelector(".error-banner");
    expect(banner).not.toBeNull();
    expect(banner!.textContent).toContain("Service unreachable");
    expect(banner!.textContent).toContain("ECONNREFUSED");
  });
});
