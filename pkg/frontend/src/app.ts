/** Browser wiring: the only module that touches the DOM. */

import { ApiClient, ApiError } from "./api.js";
import { renderClassTree, renderComparisonTable, renderDangerPanel, renderSourceWithHighlight, describeLocation, escapeHtml } from "./render.js";
import { SelectionState } from "./state.js";
import type { ClassEntry, MethodEntry, ReportDocument } from "./types.js";
import { isRealLocation } from "./types.js";

const REFACTORINGS = ["pull-up-method", "move-method", "combine-methods-into-class"];

const api = new ApiClient("");
const state = new SelectionState();

let classEntries: ClassEntry[] = [];
const methodsByClass = new Map<string, MethodEntry[]>();
let currentReport: ReportDocument | null = null;

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function setBanner(text: string | null, retry = false): void {
  const banner = el<HTMLDivElement>("banner");
  if (text === null) {
    banner.hidden = true;
    return;
  }
  banner.hidden = false;
  banner.innerHTML =
    escapeHtml(text) + (retry ? ` <button id="retry">Retry</button>` : "");
  if (retry) {
    el<HTMLButtonElement>("retry").addEventListener("click", () => void boot());
  }
}

async function boot(): Promise<void> {
  setBanner(null);
  try {
    classEntries = await api.classes();
    methodsByClass.clear();
    for (const cls of classEntries) {
      methodsByClass.set(cls.name, await api.methods(cls.name));
    }
  } catch (err) {
    setBanner(`Cannot reach the analysis service: ${(err as Error).message}`, true);
    return;
  }
  el<HTMLDivElement>("tree").innerHTML = renderClassTree(classEntries, methodsByClass);
  for (const button of document.querySelectorAll<HTMLButtonElement>(".method-pick")) {
    button.addEventListener("click", () => {
      void pickMethod(button.dataset.selector!, button.dataset.class!);
    });
  }
  const select = el<HTMLSelectElement>("refactoring");
  select.innerHTML = REFACTORINGS.map((r) => `<option value="${r}">${r}</option>`).join("");
  select.addEventListener("change", () => {
    state.refactoring = select.value;
    void refreshDestinations();
  });
  state.refactoring = select.value || REFACTORINGS[0];
  el<HTMLButtonElement>("analyze").addEventListener("click", () => void runAnalysis());
  el<HTMLInputElement>("destination-input").addEventListener("input", (event) => {
    state.destination = (event.target as HTMLInputElement).value.trim() || null;
    updateControls();
  });
  updateControls();
}

async function pickMethod(selector: string, className: string): Promise<void> {
  state.methodSelector = selector;
  el<HTMLSpanElement>("picked-method").textContent = selector;
  for (const button of document.querySelectorAll<HTMLButtonElement>(".method-pick")) {
    button.classList.toggle("picked", button.dataset.selector === selector);
  }
  state.extraSelectors = [];
  void className;
  await refreshDestinations();
  renderComparison();
}

function enclosingClassOf(selector: string): string {
  return selector.split(".", 1)[0];
}

async function refreshDestinations(): Promise<void> {
  const listHost = el<HTMLDivElement>("destinations");
  const freeEntry = el<HTMLDivElement>("destination-free");
  state.destination = null;
  if (!state.methodSelector || !state.refactoring) {
    listHost.innerHTML = "";
    updateControls();
    return;
  }
  const own = enclosingClassOf(state.methodSelector);
  let candidates: string[] = [];
  if (state.refactoring === "pull-up-method") {
    try {
      candidates = await api.superclasses(own);
    } catch (err) {
      setBanner((err as Error).message, true);
      return;
    }
  } else if (state.refactoring === "move-method") {
    candidates = classEntries.map((c) => c.name).filter((name) => name !== own);
  }
  state.destinationCandidates = candidates;
  freeEntry.hidden = state.refactoring !== "combine-methods-into-class";
  if (state.refactoring === "combine-methods-into-class") {
    listHost.innerHTML = "";
    updateControls();
    return;
  }
  listHost.innerHTML = candidates.length
    ? candidates
        .map(
          (name) =>
            `<button class="destination-pick" data-name="${escapeHtml(name)}">${escapeHtml(name)}</button>`,
        )
        .join("")
    : `<p class="empty-state">No candidate destinations.</p>`;
  for (const button of document.querySelectorAll<HTMLButtonElement>(".destination-pick")) {
    button.addEventListener("click", () => {
      state.destination = button.dataset.name!;
      for (const other of document.querySelectorAll<HTMLButtonElement>(".destination-pick")) {
        other.classList.toggle("picked", other === button);
      }
      updateControls();
    });
  }
  updateControls();
}

function updateControls(): void {
  el<HTMLButtonElement>("analyze").disabled = !state.isComplete();
}

async function runAnalysis(): Promise<void> {
  const request = state.currentRequest();
  if (!request) return;
  setBanner(null);
  const cached = state.cached(request);
  if (cached) {
    showReport(cached);
    renderComparison();
    return;
  }
  const token = state.begin(request);
  el<HTMLDivElement>("panel").innerHTML = `<p class="running">Analyzing…</p>`;
  try {
    const report = await api.analyze(request);
    if (!state.accept(request, token, report)) {
      return; // superseded by a newer request for this destination
    }
    showReport(report);
    renderComparison();
  } catch (err) {
    state.fail(request, token);
    if (err instanceof ApiError) {
      el<HTMLDivElement>("panel").innerHTML =
        `<p class="engine-error">${escapeHtml(err.errorName)}: ${escapeHtml(err.message)}</p>`;
    } else {
      setBanner(`Analysis failed: ${(err as Error).message}`, true);
    }
  }
}

function showReport(report: ReportDocument): void {
  currentReport = report;
  el<HTMLDivElement>("panel").innerHTML = renderDangerPanel(report);
  for (const row of document.querySelectorAll<HTMLTableRowElement>(".danger-row")) {
    row.addEventListener("click", () => {
      void showDangerSource(Number(row.dataset.dangerIndex));
    });
  }
}

async function showDangerSource(index: number): Promise<void> {
  if (!currentReport) return;
  const danger = currentReport.dangers[index];
  if (!danger || danger.locations.length === 0) return;
  const loc = danger.locations[0];
  const pane = el<HTMLDivElement>("source");
  if (!isRealLocation(loc)) {
    pane.innerHTML = `<p class="synthetic-note">${escapeHtml(describeLocation(loc))}: this construct exists only as a pending edit and has no source position.</p>`;
    return;
  }
  try {
    const text = await api.source(loc.file);
    pane.innerHTML =
      `<h3>${escapeHtml(loc.file)}</h3>` +
      renderSourceWithHighlight(text, {
        file: loc.file,
        line: loc.line,
        col: loc.col,
        end_line: loc.end_line,
        end_col: loc.end_col,
      });
    document.getElementById("danger-highlight")?.scrollIntoView({ block: "center" });
  } catch (err) {
    setBanner(`Cannot load source: ${(err as Error).message}`, false);
  }
}

function renderComparison(): void {
  const host = el<HTMLDivElement>("compare");
  host.innerHTML = renderComparisonTable(state.comparison());
}

document.addEventListener("DOMContentLoaded", () => void boot());
