import { describe, expect, it } from "vitest";

import { serializeDocument } from "../src/canonical.js";
import { ScenarioForm } from "../src/form.js";
import type {
  PresetsResponse,
  ScenarioDocumentJson,
  SchemaResponse,
} from "../src/types.js";
import { fixture, fixtureText } from "./helpers.js";

const schema = fixture<SchemaResponse>("schema.json");
const presets = fixture<PresetsResponse>("presets.json").presets;

function presetDoc(name: string): ScenarioDocumentJson {
  const doc = presets.find((p) => p.name === name);
  if (!doc) throw new Error(`missing preset fixture ${name}`);
  return doc;
}

describe("ScenarioForm", () => {
  it("covers every schema parameter, grouped in schema order", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    const groups = form.groups();
    expect(groups.map((g) => g.name)).toEqual(schema.groups);
    const total = groups.reduce((n, g) => n + g.fields.length, 0);
    expect(total).toBe(schema.parameters.length);
    expect(total).toBe(40);
  });

  it("initializes field values from the loaded document", () => {
    const form = new ScenarioForm(schema, presetDoc("sim3"));
    expect(form.field("use_pattern").value).toBe("UP2");
    expect(form.field("ai_neg_threshold").value).toBe(-1.0);
    expect(form.dirty).toBe(false);
  });

  it("serializes an unedited document back to its exact bytes", () => {
    const texts = fixture<Record<string, string>>("presets_text.json");
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    expect(serializeDocument(form.document())).toBe(texts["sim1"]);
  });

  it("commits a choice edit and serializes to the backend's bytes", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    const state = form.setField("use_pattern", "UP2");
    expect(state.error).toBeNull();
    expect(form.dirty).toBe(true);
    expect(serializeDocument(form.document())).toBe(fixtureText("edited_config.json"));
  });

  it("rejects an out-of-range prior with an inline error", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    const before = serializeDocument(form.document());
    const state = form.setField("prior", "1.5");
    expect(state.error).toMatch(/at most 1/);
    expect(form.isValid()).toBe(false);
    expect(form.errors().get("prior")).toMatch(/at most/);
    expect(serializeDocument(form.document())).toBe(before);
  });

  it("rejects values below a parameter's minimum", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    expect(form.setField("prior", "-0.1").error).toMatch(/at least 0/);
  });

  it("allows negative values for unbounded utility parameters", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    const state = form.setField("utilities.outcome.FN", "-45.5");
    expect(state.error).toBeNull();
    expect(form.isValid()).toBe(true);
    expect(form.field("utilities.outcome.FN").value).toBe(-45.5);
  });

  it("rejects non-numeric float input", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    expect(form.setField("prior", "abc").error).toBe("must be a number");
    expect(form.setField("prior", "").error).toBe("must be a number");
    expect(form.isValid()).toBe(false);
  });

  it("rejects a choice outside the schema's list", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    const state = form.setField("use_pattern", "UP9");
    expect(state.error).toMatch(/UP1, UP2, UP3, UP4, UP5/);
    expect(form.isValid()).toBe(false);
  });

  it("clears a field error once valid input arrives", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    form.setField("prior", "1.5");
    expect(form.isValid()).toBe(false);
    form.setField("prior", "0.4");
    expect(form.isValid()).toBe(true);
    expect(form.field("prior").value).toBe(0.4);
    expect(form.scenario()["prior"]).toBe(0.4);
  });

  it("does not mark the form dirty when the committed value is unchanged", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    form.setField("prior", "0.25");
    expect(form.dirty).toBe(false);
    form.setField("use_pattern", "UP1");
    expect(form.dirty).toBe(false);
  });

  it("throws on an unknown parameter path", () => {
    const form = new ScenarioForm(schema, presetDoc("sim1"));
    expect(() => form.field("nope")).toThrow(/no such parameter/);
  });
});
