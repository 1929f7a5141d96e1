/**
 * Canonical document serialization.
 *
 * Exported scenario files must byte-match what the backend writes for the
 * same document: two-space indent, declaration key order, and Python float
 * formatting (integral floats keep a ".0", tiny magnitudes switch to
 * exponent notation at 1e-4 with a two-digit signed exponent). JavaScript
 * and Python both print shortest round-trip digits, so reproducing the
 * placement rules is enough for byte equality.
 */

import type { JsonObject, JsonValue } from "./types.js";

// document fields that are integers server-side; every other number is a float
const INT_PATHS = new Set(["schema_version", "run.n_cases", "run.seed"]);

export function pythonFloatRepr(v: number): string {
  if (!Number.isFinite(v)) {
    throw new Error(`cannot serialize non-finite number: ${v}`);
  }
  if (Number.isInteger(v) && Math.abs(v) < 1e16) {
    const sign = Object.is(v, -0) ? "-" : "";
    return `${sign}${String(v)}.0`;
  }

  // shortest unique digits, normalized as d.ddd e exp
  const [mantissa, expText] = v.toExponential().split("e") as [string, string];
  const exp = parseInt(expText, 10);

  if (exp < -4 || exp >= 16) {
    const expAbs = Math.abs(exp).toString().padStart(2, "0");
    return `${mantissa}e${exp < 0 ? "-" : "+"}${expAbs}`;
  }

  const neg = mantissa.startsWith("-");
  const digits = mantissa.replace("-", "").replace(".", "");
  let body: string;
  if (exp >= 0) {
    const intLen = exp + 1;
    const padded = digits.padEnd(intLen + 1, "0");
    body = `${padded.slice(0, intLen)}.${padded.slice(intLen)}`;
  } else {
    body = `0.${"0".repeat(-exp - 1)}${digits}`;
  }
  return neg ? `-${body}` : body;
}

function formatNumber(v: number, path: string): string {
  if (INT_PATHS.has(path)) {
    if (!Number.isInteger(v)) {
      throw new Error(`${path} must be an integer, got ${v}`);
    }
    return String(v);
  }
  return pythonFloatRepr(v);
}

function serializeValue(value: JsonValue, path: string, indent: string): string {
  if (value === null) return "null";
  switch (typeof value) {
    case "boolean":
      return value ? "true" : "false";
    case "number":
      return formatNumber(value, path);
    case "string":
      return JSON.stringify(value);
  }
  const inner = indent + "  ";
  if (Array.isArray(value)) {
    if (value.length === 0) return "[]";
    const items = value.map((item) => inner + serializeValue(item, path, inner));
    return `[\n${items.join(",\n")}\n${indent}]`;
  }
  const keys = Object.keys(value);
  if (keys.length === 0) return "{}";
  const entries = keys.map((key) => {
    const childPath = path === "" ? key : `${path}.${key}`;
    const child = (value as JsonObject)[key] as JsonValue;
    return `${inner}${JSON.stringify(key)}: ${serializeValue(child, childPath, inner)}`;
  });
  return `{\n${entries.join(",\n")}\n${indent}}`;
}

/** Serialize a scenario document to the backend's canonical text form. */
export function serializeDocument(doc: JsonObject): string {
  return serializeValue(doc, "", "") + "\n";
}
