/** Detail page: metadata, structure graph, assessment, related papers. */

import { fetchLibraryItem } from "./api.js";
import type { ResultDocument } from "./model.js";
import { renderDetail } from "./render.js";
import { loadStoredResult } from "./state.js";

export function wireGraphInteraction(root: HTMLElement, doc: ResultDocument): void {
  if (doc.graph === null) {
    return;
  }
  const excerpts = new Map(doc.graph.nodes.map((n) => [n.id, n]));
  const panel = root.querySelector<HTMLElement>("#excerpt-panel");
  for (const nodeEl of root.querySelectorAll<SVGGElement>(".graph-node")) {
    nodeEl.addEventListener("click", () => {
      const node = excerpts.get(nodeEl.dataset.nodeId ?? "");
      if (!node || !panel) {
        return;
      }
      const repaired = node.excerpt_repaired
        ? ` <span class="repaired-flag" title="excerpt was not verbatim and was
replaced by the closest sentence">&#9888;</span>`
        : "";
      panel.hidden = false;
      panel.innerHTML = `<h4>${node.kind}: ${node.label}${repaired}</h4>
<blockquote>${node.excerpt || "(no excerpt for this node)"}</blockquote>`;
    });
  }
}

export function showDetail(root: HTMLElement, doc: ResultDocument): void {
  root.innerHTML = renderDetail(doc);
  wireGraphInteraction(root, doc);
}

async function loadDocument(): Promise<ResultDocument | null> {
  const key = new URLSearchParams(window.location.search).get("key");
  if (key) {
    return fetchLibraryItem(key);
  }
  return loadStoredResult<ResultDocument>();
}

export async function initDetailPage(): Promise<void> {
  const root = document.getElementById("detail-root");
  if (!root) {
    return;
  }
  const doc = await loadDocument();
  if (doc === null) {
    root.innerHTML = `<p class="empty">No report loaded.
      <a href="index.html">Back to search</a></p>`;
    return;
  }
  showDetail(root, doc);
}

if (typeof document !== "undefined" && document.getElementById("detail-root")) {
  void initDetailPage();
}
