/**
 * Tab state: up to five scenarios side by side, each with its own form,
 * last results, and an in-flight request token so a stale response can
 * never overwrite a newer run.
 */

import { serializeDocument } from "./canonical.js";
import { ScenarioForm } from "./form.js";
import type {
  ScenarioDocumentJson,
  ScenarioResultJson,
  SchemaResponse,
  SweepPayload,
} from "./types.js";

export const MAX_TABS = 5;

export class TabLimitError extends Error {
  constructor() {
    super(`at most ${MAX_TABS} scenarios can be open at once`);
    this.name = "TabLimitError";
  }
}

export interface ScenarioTab {
  id: number;
  name: string;
  form: ScenarioForm;
  /** exact bytes the document arrived as, when it came from a file or
   * preset; exports reuse them while the tab is unedited */
  pristineText: string | null;
  lastResult: ScenarioResultJson | null;
  lastSweep: SweepPayload | null;
  runToken: number;
}

export class TabStore {
  private tabs: ScenarioTab[] = [];
  private nextId = 1;

  open(
    schema: SchemaResponse,
    doc: ScenarioDocumentJson,
    pristineText: string | null = null,
  ): ScenarioTab {
    if (this.tabs.length >= MAX_TABS) throw new TabLimitError();
    const tab: ScenarioTab = {
      id: this.nextId++,
      name: doc.name || `scenario ${this.nextId - 1}`,
      form: new ScenarioForm(schema, doc),
      pristineText,
      lastResult: null,
      lastSweep: null,
      runToken: 0,
    };
    this.tabs.push(tab);
    return tab;
  }

  close(id: number): void {
    this.tabs = this.tabs.filter((tab) => tab.id !== id);
  }

  get(id: number): ScenarioTab {
    const tab = this.tabs.find((t) => t.id === id);
    if (!tab) throw new Error(`no tab ${id}`);
    return tab;
  }

  list(): readonly ScenarioTab[] {
    return this.tabs;
  }

  /** Start a run for a tab; only the newest token may deliver results. */
  beginRun(id: number): number {
    const tab = this.get(id);
    tab.runToken += 1;
    return tab.runToken;
  }

  applyResult(id: number, token: number, result: ScenarioResultJson): boolean {
    const tab = this.get(id);
    if (token !== tab.runToken) return false;
    tab.lastResult = result;
    return true;
  }

  applySweep(id: number, token: number, sweep: SweepPayload): boolean {
    const tab = this.get(id);
    if (token !== tab.runToken) return false;
    tab.lastSweep = sweep;
    return true;
  }

  /** Text for a local download: original bytes while unedited, canonical
   * serialization once the form has changed anything. */
  exportText(id: number): string {
    const tab = this.get(id);
    if (!tab.form.dirty && tab.pristineText !== null) return tab.pristineText;
    return serializeDocument(tab.form.document());
  }
}
