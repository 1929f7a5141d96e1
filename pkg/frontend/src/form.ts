/**
 * Schema-driven scenario form model.
 *
 * Controls are generated from the service's parameter schema so the form
 * always matches the engine: same parameters, same grouping, same bounds.
 * The model owns a working copy of the loaded document and writes valid
 * edits back into it by dotted path, preserving the document's key order
 * so an unedited document serializes to the same bytes it arrived with.
 */

import type {
  JsonObject,
  JsonValue,
  ParameterMeta,
  ScenarioDocumentJson,
  SchemaResponse,
} from "./types.js";

export interface FieldState {
  meta: ParameterMeta;
  /** current committed value (number for float fields, string for choices) */
  value: number | string;
  /** raw text as last entered; equals String(value) when valid */
  text: string;
  error: string | null;
}

export interface FieldGroup {
  name: string;
  fields: FieldState[];
}

function getPath(obj: JsonObject, path: string): JsonValue | undefined {
  let node: JsonValue | undefined = obj;
  for (const part of path.split(".")) {
    if (node === null || typeof node !== "object" || Array.isArray(node)) return undefined;
    node = (node as JsonObject)[part];
  }
  return node;
}

function setPath(obj: JsonObject, path: string, value: JsonValue): void {
  const parts = path.split(".");
  let node = obj;
  for (const part of parts.slice(0, -1)) {
    const next = node[part];
    if (next === undefined || next === null || typeof next !== "object" || Array.isArray(next)) {
      node[part] = {};
    }
    node = node[part] as JsonObject;
  }
  node[parts[parts.length - 1] as string] = value;
}

function deepClone<T extends JsonValue>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

export class ScenarioForm {
  private readonly doc: ScenarioDocumentJson;
  private readonly fields = new Map<string, FieldState>();
  private readonly groupOrder: string[];
  private dirtyFlag = false;

  constructor(schema: SchemaResponse, doc: ScenarioDocumentJson) {
    this.doc = deepClone(doc);
    if (this.doc["scenario"] === undefined || this.doc["scenario"] === null) {
      this.doc["scenario"] = {};
    }
    this.groupOrder = [...schema.groups];
    const scenario = this.doc["scenario"] as JsonObject;
    for (const meta of schema.parameters) {
      const present = getPath(scenario, meta.path);
      const value = (present === undefined ? meta.default : present) as number | string;
      this.fields.set(meta.path, {
        meta,
        value,
        text: String(value),
        error: null,
      });
    }
  }

  groups(): FieldGroup[] {
    const byGroup = new Map<string, FieldState[]>();
    for (const field of this.fields.values()) {
      const bucket = byGroup.get(field.meta.group);
      if (bucket) bucket.push(field);
      else byGroup.set(field.meta.group, [field]);
    }
    return this.groupOrder
      .filter((name) => byGroup.has(name))
      .map((name) => ({ name, fields: byGroup.get(name) as FieldState[] }));
  }

  field(path: string): FieldState {
    const state = this.fields.get(path);
    if (!state) throw new Error(`no such parameter: ${path}`);
    return state;
  }

  /** Parse and commit one edit. Invalid input records a field error and
   * leaves the document untouched. */
  setField(path: string, text: string): FieldState {
    const state = this.field(path);
    state.text = text;
    const meta = state.meta;

    if (meta.kind === "choice") {
      const choices = meta.choices ?? [];
      if (!choices.includes(text)) {
        state.error = `must be one of ${choices.join(", ")}`;
        return state;
      }
      state.error = null;
      this.commit(state, text);
      return state;
    }

    const trimmed = text.trim();
    const parsed = trimmed === "" ? NaN : Number(trimmed);
    if (!Number.isFinite(parsed)) {
      state.error = "must be a number";
      return state;
    }
    if (meta.minimum != null && parsed < meta.minimum) {
      state.error = `must be at least ${meta.minimum}`;
      return state;
    }
    if (meta.maximum != null && parsed > meta.maximum) {
      state.error = `must be at most ${meta.maximum}`;
      return state;
    }
    state.error = null;
    this.commit(state, parsed);
    return state;
  }

  private commit(state: FieldState, value: number | string): void {
    if (state.value !== value) {
      state.value = value;
      setPath(this.doc["scenario"] as JsonObject, state.meta.path, value);
      this.dirtyFlag = true;
    }
  }

  isValid(): boolean {
    for (const field of this.fields.values()) {
      if (field.error !== null) return false;
    }
    return true;
  }

  get dirty(): boolean {
    return this.dirtyFlag;
  }

  errors(): Map<string, string> {
    const out = new Map<string, string>();
    for (const [path, field] of this.fields) {
      if (field.error !== null) out.set(path, field.error);
    }
    return out;
  }

  /** The working document, key order preserved from the loaded source. */
  document(): ScenarioDocumentJson {
    return this.doc;
  }

  scenario(): JsonObject {
    return this.doc["scenario"] as JsonObject;
  }
}
