// Browser wiring: render the controller's model into the page and feed
// keyboard events into it.

import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import { makeKeyHandler } from "./keyboard.js";
import { renderCandidateCard, renderDashboard, renderStatusLine } from "./render.js";

export function startApp(doc: Document, baseUrl = ""): SessionController {
  const api = new ApiClient(baseUrl);
  const controller = new SessionController(api, (message) => window.confirm(message));

  const card = doc.getElementById("candidate-card")!;
  const dashboard = doc.getElementById("dashboard")!;
  const status = doc.getElementById("status-line")!;
  const filterForm = doc.getElementById("filter-form") as HTMLFormElement | null;

  controller.onChange(() => {
    card.innerHTML = renderCandidateCard(controller.current());
    dashboard.innerHTML = renderDashboard(controller.model);
    status.textContent = renderStatusLine(controller.model);
  });

  const handler = makeKeyHandler({
    label_true: () => void controller.label("true_va"),
    label_false: () => void controller.label("not_va"),
    blacklist: () => void controller.blacklistCurrent(),
    undo: () => void controller.undo(),
    next: () => controller.next(),
    prev: () => controller.prev(),
    refresh: () => void controller.loadQueue(),
  });
  doc.addEventListener("keydown", (event) =>
    handler({
      key: event.key,
      preventDefault: () => event.preventDefault(),
      target: event.target as { tagName?: string } | null,
    }),
  );

  if (filterForm) {
    filterForm.addEventListener("submit", (event) => {
      event.preventDefault();
      const data = new FormData(filterForm);
      const source = String(data.get("source") ?? "").trim();
      const section = String(data.get("section") ?? "").trim();
      const yearRaw = String(data.get("year") ?? "").trim();
      void controller.loadQueue({
        source: source || undefined,
        section: section === "" ? undefined : section,
        year: yearRaw === "" ? undefined : Number(yearRaw),
      });
      (doc.activeElement as HTMLElement | null)?.blur();
    });
  }

  void controller.loadQueue();
  return controller;
}
