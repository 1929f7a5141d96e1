import { describe, expect, it } from "vitest";

import { pythonFloatRepr, serializeDocument } from "../src/canonical.js";
import type { ScenarioDocumentJson } from "../src/types.js";
import { fixture } from "./helpers.js";

describe("pythonFloatRepr", () => {
  it("keeps a trailing .0 on integral floats", () => {
    expect(pythonFloatRepr(2)).toBe("2.0");
    expect(pythonFloatRepr(0)).toBe("0.0");
    expect(pythonFloatRepr(-0)).toBe("-0.0");
    expect(pythonFloatRepr(-30)).toBe("-30.0");
    expect(pythonFloatRepr(1e15)).toBe("1000000000000000.0");
  });

  it("prints mid-range values positionally with shortest digits", () => {
    expect(pythonFloatRepr(0.35)).toBe("0.35");
    expect(pythonFloatRepr(-0.24825)).toBe("-0.24825");
    expect(pythonFloatRepr(0.15175000000000002)).toBe("0.15175000000000002");
    expect(pythonFloatRepr(0.1 + 0.2)).toBe("0.30000000000000004");
    expect(pythonFloatRepr(0.0001)).toBe("0.0001");
    expect(pythonFloatRepr(123.456)).toBe("123.456");
  });

  it("switches to exponent notation below 1e-04 and at 1e+16", () => {
    expect(pythonFloatRepr(0.00001)).toBe("1e-05");
    expect(pythonFloatRepr(1e-7)).toBe("1e-07");
    expect(pythonFloatRepr(2.5e-5)).toBe("2.5e-05");
    expect(pythonFloatRepr(1e16)).toBe("1e+16");
    expect(pythonFloatRepr(1.5e22)).toBe("1.5e+22");
  });

  it("rejects non-finite input", () => {
    expect(() => pythonFloatRepr(Number.POSITIVE_INFINITY)).toThrow();
    expect(() => pythonFloatRepr(Number.NaN)).toThrow();
  });
});

describe("serializeDocument", () => {
  const texts = fixture<Record<string, string>>("presets_text.json");

  for (const name of Object.keys(texts)) {
    it(`round-trips preset ${name} byte for byte`, () => {
      const text = texts[name] as string;
      const doc = JSON.parse(text) as ScenarioDocumentJson;
      expect(serializeDocument(doc)).toBe(text);
    });
  }

  it("writes counter and seed fields as integers, all other numbers as floats", () => {
    const doc = {
      schema_version: 1,
      name: "t",
      scenario: { prior: 0.25 },
      run: { n_cases: 1000, seed: 0 },
    } as unknown as ScenarioDocumentJson;
    const text = serializeDocument(doc);
    expect(text).toContain('"schema_version": 1,');
    expect(text).toContain('"n_cases": 1000,');
    expect(text).toContain('"seed": 0');
    expect(text).toContain('"prior": 0.25');
    expect(text).not.toContain("1000.0");
  });

  it("formats array elements under their parent path", () => {
    const doc = {
      schema_version: 1,
      name: "t",
      sweep: { param_path: "prior", values: [0, 0.25, 1] },
    } as unknown as ScenarioDocumentJson;
    const text = serializeDocument(doc);
    expect(text).toContain("0.0,");
    expect(text).toContain("0.25,");
    expect(text).toContain("1.0");
  });

  it("ends with a single newline", () => {
    const doc = { schema_version: 1, name: "t" } as ScenarioDocumentJson;
    const text = serializeDocument(doc);
    expect(text.endsWith("\n")).toBe(true);
    expect(text.endsWith("\n\n")).toBe(false);
  });
});
