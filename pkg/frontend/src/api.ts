/** REST/SSE client. The server contract is the only network surface. */

import type {
  EvaluateBody,
  LibrarySummary,
  PaperRecord,
  ProgressFrame,
  ResultDocument,
} from "./model.js";

const BASE = "";

async function getJson<T>(path: string): Promise<T> {
  const response = await fetch(`${BASE}${path}`);
  if (!response.ok) {
    throw new Error(`${path} failed: ${response.status}`);
  }
  return (await response.json()) as T;
}

export function searchArxiv(query: string, limit = 10): Promise<PaperRecord[]> {
  const params = new URLSearchParams({ q: query, limit: String(limit) });
  return getJson<PaperRecord[]>(`/search?${params}`);
}

export function fetchLibrary(): Promise<LibrarySummary[]> {
  return getJson<LibrarySummary[]>("/library");
}

export function fetchLibraryItem(key: string): Promise<ResultDocument> {
  return getJson<ResultDocument>(`/library/${encodeURIComponent(key)}`);
}

export async function evaluateAbstract(body: {
  title: string;
  abstract: string;
  k_recommended: number;
  k_related: number;
  model_id: string;
  k_samples: number;
}): Promise<ResultDocument> {
  const response = await fetch(`${BASE}/abstract`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    throw new Error(`abstract evaluation failed: ${response.status}`);
  }
  return (await response.json()) as ResultDocument;
}

export async function cancelEvaluation(evaluationId: string): Promise<void> {
  await fetch(`${BASE}/cancel/${encodeURIComponent(evaluationId)}`, {
    method: "POST",
  });
}

/**
 * Split SSE frames out of a text buffer.
 * Returns the parsed frames and whatever trailing partial frame remains.
 */
export function parseSseChunk(buffer: string): {
  frames: ProgressFrame[];
  rest: string;
} {
  const frames: ProgressFrame[] = [];
  let rest = buffer;
  for (;;) {
    const cut = rest.indexOf("\n\n");
    if (cut < 0) {
      break;
    }
    const block = rest.slice(0, cut);
    rest = rest.slice(cut + 2);
    const lines = block.split("\n");
    const eventLine = lines.find((l) => l.startsWith("event: "));
    const dataLine = lines.find((l) => l.startsWith("data: "));
    if (!eventLine || !dataLine) {
      continue;
    }
    frames.push({
      event: eventLine.slice("event: ".length) as ProgressFrame["event"],
      data: JSON.parse(dataLine.slice("data: ".length)),
    });
  }
  return { frames, rest };
}

/**
 * POST /evaluate and feed each SSE frame to the callback as it arrives.
 * Resolves with the result document on done, null on cancel/error.
 */
export async function streamEvaluate(
  body: EvaluateBody,
  onFrame: (frame: ProgressFrame) => void,
): Promise<ResultDocument | null> {
  const response = await fetch(`${BASE}/evaluate`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok || response.body === null) {
    throw new Error(`evaluation failed: ${response.status}`);
  }
  const reader = response.body.getReader();
  const decoder = new TextDecoder();
  let buffer = "";
  let result: ResultDocument | null = null;
  for (;;) {
    const { done, value } = await reader.read();
    if (done) {
      break;
    }
    buffer += decoder.decode(value, { stream: true });
    const { frames, rest } = parseSseChunk(buffer);
    buffer = rest;
    for (const frame of frames) {
      onFrame(frame);
      if (frame.event === "done" && frame.data.result) {
        result = frame.data.result;
      }
    }
  }
  return result;
}
