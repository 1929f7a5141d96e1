/**
 * Scenario explorer page wiring.
 *
 * Boot fetches the parameter schema and the preset catalog, then drives the
 * edit / run / read loop: up to five scenario tabs, a schema-generated form
 * per tab, run and sweep actions against the same-origin service, and result
 * panes (EU report, matrix heatmap, episode table, overlaid sweep chart).
 * Every number on screen is copied from a service response.
 */

import { ApiClient, ApiError, OfflineError } from "./api.js";
import { buildSweepChart, sweepSeriesFromPayload, type SweepSeries } from "./chart.js";
import { countBy, filterEpisodes, episodeRow, type EpisodeFilter } from "./episodes.js";
import { buildMatrixHeatmap } from "./heatmap.js";
import { TabLimitError, TabStore, type ScenarioTab } from "./store.js";
import {
  CELL_ORDER,
  type EUReportJson,
  type ScenarioDocumentJson,
  type ScenarioResultJson,
  type SchemaResponse,
  type SimulateResponse,
  type SweepResponse,
} from "./types.js";

const PALETTE = ["#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed"];

interface RunControls {
  seed: number;
  cases: number;
  samples: number;
  sweepParam: string;
  sweepValues: number[];
}

class App {
  private readonly api = new ApiClient();
  private readonly store = new TabStore();
  private schema!: SchemaResponse;
  private presets: ScenarioDocumentJson[] = [];
  private activeId: number | null = null;
  private episodeFilter: EpisodeFilter = {};

  async boot(): Promise<void> {
    try {
      this.schema = await this.api.schema();
      const presets = await this.api.presets();
      this.presets = presets.presets;
    } catch (err) {
      if (err instanceof OfflineError) {
        show("offline-banner");
        return;
      }
      throw err;
    }
    this.renderPresetOptions();
    this.renderSweepParams();
    this.bindToolbar();
    const first = this.presets[0];
    if (first) this.openDocument(first, null);
    this.renderAll();
  }

  private renderPresetOptions(): void {
    const select = el<HTMLSelectElement>("preset-select");
    select.innerHTML = this.presets
      .map((p) => `<option value="${escapeHtml(p.name)}">${escapeHtml(p.name)}</option>`)
      .join("");
  }

  private renderSweepParams(): void {
    const select = el<HTMLSelectElement>("sweep-param");
    const floats = this.schema.parameters.filter((p) => p.kind === "float");
    select.innerHTML = floats
      .map((p) => `<option value="${escapeHtml(p.path)}">${escapeHtml(p.path)}</option>`)
      .join("");
    select.value = "algorithm_complementarity";
  }

  private bindToolbar(): void {
    el<HTMLButtonElement>("open-preset").addEventListener("click", () => {
      const name = el<HTMLSelectElement>("preset-select").value;
      const doc = this.presets.find((p) => p.name === name);
      if (doc) this.openDocument(doc, null);
    });

    el<HTMLInputElement>("import-file").addEventListener("change", (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files?.[0];
      if (!file) return;
      void file.text().then((text) => {
        try {
          const doc = JSON.parse(text) as ScenarioDocumentJson;
          this.openDocument(doc, text);
        } catch {
          this.toast("import failed: file is not valid JSON");
        }
        input.value = "";
      });
    });

    el<HTMLButtonElement>("export-tab").addEventListener("click", () => {
      if (this.activeId === null) return;
      const tab = this.store.get(this.activeId);
      const blob = new Blob([this.store.exportText(tab.id)], { type: "application/json" });
      const url = URL.createObjectURL(blob);
      const link = document.createElement("a");
      link.href = url;
      link.download = `${tab.name}.json`;
      link.click();
      URL.revokeObjectURL(url);
    });

    el<HTMLButtonElement>("run-button").addEventListener("click", () => void this.runActive());
    el<HTMLButtonElement>("sweep-button").addEventListener("click", () => void this.sweepActive());
  }

  private openDocument(doc: ScenarioDocumentJson, pristineText: string | null): void {
    try {
      const tab = this.store.open(this.schema, doc, pristineText);
      this.activeId = tab.id;
      this.episodeFilter = {};
      this.renderAll();
    } catch (err) {
      if (err instanceof TabLimitError) this.toast(err.message);
      else throw err;
    }
  }

  private closeTab(id: number): void {
    this.store.close(id);
    if (this.activeId === id) {
      const remaining = this.store.list();
      this.activeId = remaining.length > 0 ? (remaining[0] as ScenarioTab).id : null;
    }
    this.renderAll();
  }

  private activeTab(): ScenarioTab | null {
    return this.activeId === null ? null : this.store.get(this.activeId);
  }

  private controls(): RunControls {
    const seed = Number(el<HTMLInputElement>("seed-input").value) || 0;
    const cases = Number(el<HTMLInputElement>("cases-input").value) || 100000;
    const samples = Number(el<HTMLInputElement>("samples-input").value) || 0;
    const sweepParam = el<HTMLSelectElement>("sweep-param").value;
    const sweepValues = el<HTMLInputElement>("sweep-values")
      .value.split(",")
      .map((piece) => Number(piece.trim()))
      .filter((v) => Number.isFinite(v));
    return { seed, cases, samples, sweepParam, sweepValues };
  }

  private async runActive(): Promise<void> {
    const tab = this.activeTab();
    if (!tab || !tab.form.isValid()) return;
    const { seed, cases, samples } = this.controls();
    const token = this.store.beginRun(tab.id);
    try {
      const resp: SimulateResponse = await this.api.simulate({
        scenario: tab.form.scenario(),
        n_cases: cases,
        seed,
        sample_limit: samples,
      });
      if (this.store.applyResult(tab.id, token, resp.result)) this.renderResults();
    } catch (err) {
      this.reportError(err);
    }
  }

  private async sweepActive(): Promise<void> {
    const tab = this.activeTab();
    if (!tab || !tab.form.isValid()) return;
    const { seed, cases, sweepParam, sweepValues } = this.controls();
    if (sweepValues.length === 0) {
      this.toast("sweep needs at least one numeric value");
      return;
    }
    const token = this.store.beginRun(tab.id);
    try {
      const resp: SweepResponse = await this.api.sweep({
        scenario: tab.form.scenario(),
        param_path: sweepParam,
        values: sweepValues,
        n_cases: cases,
        seed,
        seed_policy: "shared",
      });
      if (this.store.applySweep(tab.id, token, resp.sweep)) this.renderResults();
    } catch (err) {
      this.reportError(err);
    }
  }

  private reportError(err: unknown): void {
    if (err instanceof OfflineError) {
      show("offline-banner");
      return;
    }
    if (err instanceof ApiError) {
      const where = err.fieldPath ? ` (${err.fieldPath})` : "";
      this.toast(`${err.code}${where}: ${err.message}`);
      return;
    }
    throw err;
  }

  private toast(message: string): void {
    const node = el<HTMLDivElement>("toast");
    node.textContent = message;
    node.classList.add("visible");
    window.setTimeout(() => node.classList.remove("visible"), 6000);
  }

  // rendering

  private renderAll(): void {
    this.renderTabBar();
    this.renderForm();
    this.renderResults();
  }

  private renderTabBar(): void {
    const bar = el<HTMLDivElement>("tab-bar");
    bar.innerHTML = this.store
      .list()
      .map((tab) => {
        const active = tab.id === this.activeId ? " active" : "";
        const dirty = tab.form.dirty ? "*" : "";
        return (
          `<span class="tab${active}" data-tab="${tab.id}">` +
          `${escapeHtml(tab.name)}${dirty}` +
          `<button class="close" data-close="${tab.id}" title="close">x</button></span>`
        );
      })
      .join("");
    bar.querySelectorAll<HTMLElement>("[data-tab]").forEach((node) => {
      node.addEventListener("click", () => {
        this.activeId = Number(node.dataset["tab"]);
        this.episodeFilter = {};
        this.renderAll();
      });
    });
    bar.querySelectorAll<HTMLButtonElement>("[data-close]").forEach((node) => {
      node.addEventListener("click", (event) => {
        event.stopPropagation();
        this.closeTab(Number(node.dataset["close"]));
      });
    });
  }

  private renderForm(): void {
    const root = el<HTMLDivElement>("form-root");
    const tab = this.activeTab();
    if (!tab) {
      root.innerHTML = `<p class="placeholder">open a preset or import a file to begin</p>`;
      this.syncRunButtons();
      return;
    }
    const sections = tab.form.groups().map((group) => {
      const rows = group.fields.map((field) => {
        const meta = field.meta;
        const id = `field-${meta.path.replace(/\./g, "-")}`;
        const error = field.error
          ? `<span class="field-error">${escapeHtml(field.error)}</span>`
          : "";
        let control: string;
        if (meta.kind === "choice") {
          const options = (meta.choices ?? [])
            .map((choice) => {
              const selected = choice === field.value ? " selected" : "";
              return `<option value="${escapeHtml(choice)}"${selected}>${escapeHtml(choice)}</option>`;
            })
            .join("");
          control = `<select id="${id}" data-path="${escapeHtml(meta.path)}">${options}</select>`;
        } else {
          const bounds =
            meta.minimum != null && meta.maximum != null
              ? ` title="range ${meta.minimum} to ${meta.maximum}"`
              : "";
          control =
            `<input id="${id}" data-path="${escapeHtml(meta.path)}" ` +
            `value="${escapeHtml(field.text)}"${bounds}/>`;
        }
        return (
          `<label class="field${field.error ? " invalid" : ""}" for="${id}">` +
          `<span class="field-name" title="${escapeHtml(meta.doc)}">${escapeHtml(meta.path)}</span>` +
          `${control}${error}</label>`
        );
      });
      return (
        `<fieldset><legend>${escapeHtml(group.name)}</legend>` +
        `${rows.join("")}</fieldset>`
      );
    });
    root.innerHTML = sections.join("");

    root.querySelectorAll<HTMLInputElement>("input[data-path]").forEach((input) => {
      input.addEventListener("change", () => {
        const path = input.dataset["path"] as string;
        tab.form.setField(path, input.value);
        this.renderForm();
        this.renderTabBar();
      });
    });
    root.querySelectorAll<HTMLSelectElement>("select[data-path]").forEach((select) => {
      select.addEventListener("change", () => {
        const path = select.dataset["path"] as string;
        tab.form.setField(path, select.value);
        this.renderForm();
        this.renderTabBar();
      });
    });
    this.syncRunButtons();
  }

  private syncRunButtons(): void {
    const tab = this.activeTab();
    const enabled = tab !== null && tab.form.isValid();
    el<HTMLButtonElement>("run-button").disabled = !enabled;
    el<HTMLButtonElement>("sweep-button").disabled = !enabled;
    el<HTMLButtonElement>("export-tab").disabled = tab === null;
  }

  private renderResults(): void {
    const tab = this.activeTab();
    this.renderReport(tab?.lastResult ?? null);
    this.renderHeatmap(tab?.lastResult ?? null);
    this.renderEpisodes(tab?.lastResult ?? null);
    this.renderChart();
  }

  private renderReport(result: ScenarioResultJson | null): void {
    const root = el<HTMLDivElement>("report-root");
    if (!result) {
      root.innerHTML = `<p class="placeholder">run a scenario to see expected utilities</p>`;
      return;
    }
    const r: EUReportJson = result.report;
    const rows: [string, number | null][] = [
      ["outcome_eu", r.outcome_eu],
      ["counter_eu", r.counter_eu],
      ["usage_eu", r.usage_eu],
      ["unaided_eu", r.unaided_eu],
      ["relative_outcome_eu", r.relative_outcome_eu],
      ["relative_counter_eu", r.relative_counter_eu],
      ["relative_usage_eu", r.relative_usage_eu],
      ["sensitivity_aided", r.sensitivity_aided],
      ["specificity_aided", r.specificity_aided],
      ["sensitivity_unaided", r.sensitivity_unaided],
      ["specificity_unaided", r.specificity_unaided],
    ];
    const body = rows
      .map(
        ([name, value]) =>
          `<tr><td>${name}</td><td class="num" data-metric="${name}">` +
          `${value === null ? "n/a" : String(value)}</td></tr>`,
      )
      .join("");
    root.innerHTML =
      `<table class="report"><caption>n_cases ${result.n_cases}, seed ${result.seed}, ` +
      `mean workload ${String(result.mean_workload)}</caption>` +
      `<tbody>${body}</tbody></table>`;
  }

  private renderHeatmap(result: ScenarioResultJson | null): void {
    const root = el<HTMLDivElement>("heatmap-root");
    root.innerHTML = result ? buildMatrixHeatmap(result.matrix) : "";
  }

  private renderEpisodes(result: ScenarioResultJson | null): void {
    const root = el<HTMLDivElement>("episodes-root");
    if (!result || result.episodes.length === 0) {
      root.innerHTML = `<p class="placeholder">run with a sample limit to inspect episodes</p>`;
      return;
    }
    const cells = ["", ...CELL_ORDER];
    const branches = ["", ...Object.keys(result.branch_counts)];
    const cellOptions = cells
      .map((c) => {
        const selected = (this.episodeFilter.cell ?? "") === c ? " selected" : "";
        return `<option value="${c}"${selected}>${c === "" ? "all cells" : c}</option>`;
      })
      .join("");
    const branchOptions = branches
      .map((b) => {
        const selected = (this.episodeFilter.branch ?? "") === b ? " selected" : "";
        return `<option value="${b}"${selected}>${b === "" ? "all branches" : b}</option>`;
      })
      .join("");
    const filtered = filterEpisodes(result.episodes, this.episodeFilter);
    const tallies = countBy(result.episodes, "cell");
    const talliesText = CELL_ORDER.map((c) => `${c} ${tallies[c] ?? 0}`).join("  ");
    const rows = filtered
      .slice(0, 200)
      .map((ep) => {
        const row = episodeRow(ep);
        return (
          `<tr><td>${row.index}</td><td>${row.cell}</td><td>${row.branch}</td>` +
          `<td>${row.groundTruth}</td><td>${row.verdict}</td>` +
          `<td>${ep.base_strength.toFixed(3)}</td><td>${ep.ai_strength.toFixed(3)}</td>` +
          `<td>${ep.dm_strength.toFixed(3)}</td>` +
          `<td>${row.discovered}</td><td>${row.workload}</td></tr>`
        );
      })
      .join("");
    root.innerHTML =
      `<div class="episode-filters">` +
      `<select id="filter-cell">${cellOptions}</select>` +
      `<select id="filter-branch">${branchOptions}</select>` +
      `<label><input type="checkbox" id="filter-discovered"` +
      `${this.episodeFilter.discoveredOnly ? " checked" : ""}/> discovered only</label>` +
      `<span class="tally">${filtered.length} of ${result.episodes.length} sampled; ${talliesText}</span>` +
      `</div>` +
      `<table class="episodes"><thead><tr><th>case</th><th>cell</th><th>branch</th>` +
      `<th>gt</th><th>verdict</th><th>base</th><th>ai</th><th>dm</th>` +
      `<th>discovered</th><th>workload</th></tr></thead><tbody>${rows}</tbody></table>`;

    el<HTMLSelectElement>("filter-cell").addEventListener("change", (event) => {
      const value = (event.target as HTMLSelectElement).value;
      this.episodeFilter = { ...this.episodeFilter, cell: value || undefined };
      this.renderEpisodes(result);
    });
    el<HTMLSelectElement>("filter-branch").addEventListener("change", (event) => {
      const value = (event.target as HTMLSelectElement).value;
      this.episodeFilter = { ...this.episodeFilter, branch: value || undefined };
      this.renderEpisodes(result);
    });
    el<HTMLInputElement>("filter-discovered").addEventListener("change", (event) => {
      const checked = (event.target as HTMLInputElement).checked;
      this.episodeFilter = { ...this.episodeFilter, discoveredOnly: checked };
      this.renderEpisodes(result);
    });
  }

  private renderChart(): void {
    const root = el<HTMLDivElement>("chart-root");
    const series: SweepSeries[] = [];
    let paramLabel = "";
    this.store.list().forEach((tab, index) => {
      if (!tab.lastSweep) return;
      const color = PALETTE[index % PALETTE.length] as string;
      series.push(sweepSeriesFromPayload(tab.name, color, tab.lastSweep));
      paramLabel = tab.lastSweep.param_path;
    });
    root.innerHTML = buildSweepChart(series, paramLabel || "parameter");
    const legend = series
      .map(
        (s) =>
          `<span class="legend-item"><span class="swatch" ` +
          `style="background:${s.color}"></span>${escapeHtml(s.label)}</span>`,
      )
      .join("");
    root.innerHTML +=
      `<div class="legend">${legend}` +
      `<span class="legend-item">dashed rel_outcome_eu, dotted rel_counter_eu, solid rel_usage_eu</span></div>`;
  }
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function show(id: string): void {
  el(id).classList.add("visible");
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

document.addEventListener("DOMContentLoaded", () => {
  void new App().boot();
});
