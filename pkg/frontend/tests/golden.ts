/** Load golden fixtures produced by the backend test suite. */

import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import type { ResultDocument } from "../src/model.js";

// vitest runs with cwd = frontend/; the goldens live in the backend suite.
const GOLDEN_DIR = resolve(process.cwd(), "../tests/fixtures/golden") + "/";

export function goldenDocument(name: string): ResultDocument {
  return JSON.parse(readFileSync(`${GOLDEN_DIR}evaluate_${name}.json`, "utf-8"));
}

export function goldenAbstractDocument(): ResultDocument {
  return JSON.parse(readFileSync(`${GOLDEN_DIR}abstract_alpha.json`, "utf-8"));
}

export interface GoldenEvent {
  event: string;
  stage: string;
  percent: number;
  message: string;
}

export function goldenEvents(name: string): GoldenEvent[] {
  return JSON.parse(readFileSync(`${GOLDEN_DIR}events_${name}.json`, "utf-8"));
}
