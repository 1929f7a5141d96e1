/**
 * Fixture loading. All fixtures under tests/fixtures are real backend
 * outputs regenerated by fixtures/generate.py; tests read them as raw text
 * when byte equality matters and as parsed JSON otherwise.
 */

import { readFileSync } from "node:fs";

export function fixtureText(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}
