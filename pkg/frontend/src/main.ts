// Browser wiring: builds the workbench out of the state controller and
// the pure renderers. This is the only module that touches the DOM.

import { ApiClient } from "./api.js";
import { WorkbenchState } from "./state.js";
import {
  diagnosticsHtml,
  errorHtml,
  frontTableHtml,
  gaugeHtml,
  memberDetailHtml,
  metricIdsOf,
  propertyPanelHtml,
  recommendationsHtml,
  scatterSvg,
  warningsHtml,
} from "./render.js";
import type { SearchOptions, TaxonomyResponse } from "./types.js";

function apiBase(): string {
  const fromQuery = new URLSearchParams(location.search).get("api");
  if (fromQuery) return fromQuery.replace(/\/$/, "");
  return "http://127.0.0.1:8000";
}

const api = new ApiClient(apiBase());
const state = new WorkbenchState(api);

let taxonomy: TaxonomyResponse | null = null;
let xIndex = 0;
let yIndex = 1;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing mount point #${id}`);
  return node as T;
}

function flaggedProperties(): Set<number> {
  // Map assessment diagnostics back to their property rows.
  const flagged = new Set<number>();
  const assessments = state.document.problem.assessments ?? [];
  for (const diag of state.diagnostics) {
    const match = /^problem\.assessments\[(\d+)\]/.exec(diag.where);
    if (!match) continue;
    const assessment = assessments[Number(match[1])];
    if (assessment) flagged.add(assessment.property_id);
  }
  return flagged;
}

function renderTradeoffs(): void {
  const mount = el("tradeoffs");
  const detail = el("detail");
  const pairPick = el("pair-pick");
  if (state.front === null) {
    mount.innerHTML = state.optimizing
      ? '<p class="placeholder">Searching…</p>'
      : '<p class="placeholder">Run a search to see the feasible front.</p>';
    detail.innerHTML = "";
    pairPick.hidden = true;
    return;
  }
  const { front, tradeoffs } = state.front;
  const metricIds = metricIdsOf(state.document);
  const kneeIndex = tradeoffs === null ? null : tradeoffs.knee_index;
  let html = warningsHtml(front.warnings);
  if (front.members.length === 0) {
    html += '<p class="placeholder">Front is empty: no feasible candidates.</p>';
  } else if (metricIds.length >= 2) {
    pairPick.hidden = metricIds.length <= 2;
    html += scatterSvg(front, metricIds, xIndex, yIndex, kneeIndex, state.selectedMember);
    if (metricIds.length > 2) {
      html += frontTableHtml(front, metricIds, kneeIndex, state.selectedMember);
    }
  } else {
    pairPick.hidden = true;
    html += frontTableHtml(front, metricIds, kneeIndex, state.selectedMember);
  }
  mount.innerHTML = html;
  const member = state.selectedMember === null ? null : front.members[state.selectedMember];
  detail.innerHTML = member ? memberDetailHtml(member, metricIds) : "";
}

function render(): void {
  el("gauge").innerHTML = gaugeHtml(state.gaugeText(), state.analyticallyTrivial());
  el("problem-title").textContent = state.document.problem.title || "Untitled problem";
  el("problem-meta").textContent =
    `${state.document.problem.id} · ${state.document.problem.action_space.kind} action space`;
  el("status").textContent = state.dirty ? "unsaved changes" : "saved";

  const banner = el("banner");
  banner.hidden = state.serviceOk;
  banner.textContent = state.serviceOk
    ? ""
    : `Engine unreachable at ${api.baseUrl}. The document stays editable; reconnect and edit again to refresh.`;

  el("error").innerHTML = errorHtml(state.lastError);
  el("diagnostics").innerHTML = diagnosticsHtml(state.diagnostics);

  if (taxonomy) {
    el("properties").innerHTML = propertyPanelHtml(
      taxonomy.properties,
      state.document,
      flaggedProperties(),
    );
  }
  el("recommendations").innerHTML = recommendationsHtml(state.recommendations);

  const continuous = state.document.problem.action_space.kind === "continuous";
  el("search-config").hidden = !continuous;
  renderTradeoffs();
}

function searchOptions(): SearchOptions | undefined {
  if (state.document.problem.action_space.kind !== "continuous") return undefined;
  return {
    population: Number(el<HTMLInputElement>("opt-population").value) || 64,
    generations: Number(el<HTMLInputElement>("opt-generations").value) || 100,
    seed: Number(el<HTMLInputElement>("opt-seed").value) || 0,
  };
}

function rebuildPairSelects(): void {
  const metricIds = metricIdsOf(state.document);
  const options = metricIds
    .map((id, i) => `<option value="${i}">${id}</option>`)
    .join("");
  const selX = el<HTMLSelectElement>("sel-x");
  const selY = el<HTMLSelectElement>("sel-y");
  selX.innerHTML = options;
  selY.innerHTML = options;
  xIndex = 0;
  yIndex = Math.min(1, metricIds.length - 1);
  selX.value = String(xIndex);
  selY.value = String(yIndex);
}

function wire(): void {
  const properties = el("properties");
  properties.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement;
    const pid = Number(target.dataset.pid);
    if (!pid) return;
    if (target.classList.contains("present")) {
      if (target.checked) state.toggleBinary(pid, true);
      else state.removeAssessment(pid);
    } else if (target.classList.contains("count")) {
      if (target.value === "") state.removeAssessment(pid);
      else state.setCount(pid, Math.max(0, Math.floor(Number(target.value))));
    }
  });
  properties.addEventListener("input", (event) => {
    const target = event.target as HTMLInputElement;
    if (!target.classList.contains("resolution")) return;
    const pid = Number(target.dataset.pid);
    if (pid) state.setResolution(pid, Number(target.value));
  });

  // Hovering a recommendation lights up the properties that enable it.
  const recommendations = el("recommendations");
  const setHighlight = (pids: string, on: boolean) => {
    for (const pid of pids.split(",")) {
      const row = properties.querySelector(`.property-row[data-pid="${pid}"]`);
      if (row) row.classList.toggle("highlight", on);
    }
  };
  recommendations.addEventListener("mouseover", (event) => {
    const item = (event.target as HTMLElement).closest<HTMLElement>(".recommendation");
    if (item?.dataset.pids) setHighlight(item.dataset.pids, true);
  });
  recommendations.addEventListener("mouseout", (event) => {
    const item = (event.target as HTMLElement).closest<HTMLElement>(".recommendation");
    if (item?.dataset.pids) setHighlight(item.dataset.pids, false);
  });

  el("tradeoffs").addEventListener("click", (event) => {
    const hit = (event.target as HTMLElement).closest<HTMLElement>("[data-index]");
    if (hit) state.selectMember(Number(hit.dataset.index));
  });

  el("btn-optimize").addEventListener("click", () => {
    void state.runOptimize(searchOptions());
  });

  for (const id of ["sel-x", "sel-y"]) {
    el<HTMLSelectElement>(id).addEventListener("change", () => {
      xIndex = Number(el<HTMLSelectElement>("sel-x").value);
      yIndex = Number(el<HTMLSelectElement>("sel-y").value);
      renderTradeoffs();
    });
  }

  el("btn-new").addEventListener("click", () => {
    state.loadText(
      JSON.stringify({
        format_version: "1",
        problem: {
          id: "untitled",
          title: "Untitled problem",
          description: "",
          action_space: { kind: "discrete", actions: [{ id: "option-a", metric_values: { outcome: 0 } }] },
          objectives: [{ id: "outcome", name: "Outcome", direction: "minimize" }],
        },
      }),
    );
    rebuildPairSelects();
  });

  el<HTMLInputElement>("file-load").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    input.value = "";
    if (!file) return;
    void file.text().then((text) => {
      try {
        state.loadText(text);
        rebuildPairSelects();
      } catch (exc) {
        const banner = el("banner");
        banner.hidden = false;
        banner.textContent =
          "Could not load file: " + (exc instanceof Error ? exc.message : String(exc));
      }
    });
  });

  el("btn-save").addEventListener("click", () => {
    void state.prepareSave().then((saved) => {
      if (!saved) return;
      const blob = new Blob([saved.text], { type: "application/json" });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = saved.name;
      link.click();
      URL.revokeObjectURL(link.href);
    });
  });
}

async function start(): Promise<void> {
  state.subscribe(render);
  wire();
  rebuildPairSelects();
  try {
    taxonomy = await api.taxonomy();
  } catch {
    taxonomy = null;
  }
  if (taxonomy === null) {
    const banner = el("banner");
    banner.hidden = false;
    banner.textContent = `Engine unreachable at ${api.baseUrl}; property catalog unavailable. Reload once the service is up.`;
  }
  render();
  await state.refreshNow();
}

void start();
