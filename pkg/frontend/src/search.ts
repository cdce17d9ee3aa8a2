/** Search page: library browsing, arXiv search + evaluation, abstract entry. */

import {
  evaluateAbstract,
  fetchLibrary,
  fetchLibraryItem,
  searchArxiv,
  streamEvaluate,
} from "./api.js";
import { EVALUATE_DEFAULTS, type EvaluateBody } from "./model.js";
import { ProgressView } from "./progress.js";
import {
  renderConfigPanel,
  renderHelpOverlay,
  renderLibraryCard,
  renderSearchResult,
} from "./render.js";
import { dismissHelp, helpDismissed, storeResult } from "./state.js";

type Tab = "library" | "arxiv" | "abstract";

function el<T extends HTMLElement>(selector: string): T {
  const found = document.querySelector<T>(selector);
  if (!found) {
    throw new Error(`missing element ${selector}`);
  }
  return found;
}

function showError(message: string, retry?: () => void): void {
  const banner = el<HTMLElement>("#error-banner");
  banner.hidden = false;
  banner.innerHTML = "";
  banner.append(message);
  if (retry) {
    const button = document.createElement("button");
    button.textContent = "Retry";
    button.addEventListener("click", () => {
      banner.hidden = true;
      retry();
    });
    banner.append(" ", button);
  }
}

function clearError(): void {
  el<HTMLElement>("#error-banner").hidden = true;
}

function switchTab(tab: Tab): void {
  for (const name of ["library", "arxiv", "abstract"] as Tab[]) {
    el(`#tab-${name}`).classList.toggle("active", name === tab);
    el(`#panel-${name}`).hidden = name !== tab;
  }
}

async function loadLibrary(): Promise<void> {
  const container = el<HTMLElement>("#library-cards");
  try {
    const summaries = await fetchLibrary();
    container.innerHTML =
      summaries.length === 0
        ? `<p class="empty">No pre-computed papers yet.</p>`
        : summaries.map(renderLibraryCard).join("\n");
    for (const card of container.querySelectorAll<HTMLElement>(".library-card")) {
      card.addEventListener("click", async () => {
        const key = card.dataset.key ?? "";
        try {
          storeResult(await fetchLibraryItem(key));
          window.location.href = "detail.html";
        } catch (error) {
          showError(`Could not load the report: ${error}`);
        }
      });
    }
  } catch (error) {
    showError(`Library unavailable: ${error}`, () => void loadLibrary());
  }
}

async function runSearch(): Promise<void> {
  clearError();
  const query = el<HTMLInputElement>("#search-input").value;
  const container = el<HTMLElement>("#search-results");
  try {
    const records = await searchArxiv(query, 10);
    container.innerHTML =
      records.length === 0
        ? `<p class="empty">No matches on arXiv.</p>`
        : records.map(renderSearchResult).join("\n");
    for (const card of container.querySelectorAll<HTMLElement>(".search-result")) {
      const button = card.querySelector<HTMLButtonElement>(".evaluate-btn");
      button?.addEventListener("click", () =>
        openConfig(card.dataset.arxivId ?? "", card.dataset.title ?? ""),
      );
    }
  } catch (error) {
    showError(`Search failed: ${error}`, () => void runSearch());
  }
}

function openConfig(arxivId: string, title: string): void {
  const host = el<HTMLElement>("#config-host");
  host.innerHTML = renderConfigPanel(title);
  const form = el<HTMLFormElement>("#config-form");
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const body: EvaluateBody = {
      arxiv_id: arxivId,
      title,
      k_citations: Number(data.get("k_citations") ?? EVALUATE_DEFAULTS.k_citations),
      k_recommended: Number(
        data.get("k_recommended") ?? EVALUATE_DEFAULTS.k_recommended,
      ),
      k_related: Number(data.get("k_related") ?? EVALUATE_DEFAULTS.k_related),
      model_id: String(data.get("model_id") ?? EVALUATE_DEFAULTS.model_id),
      filter_by_date: data.get("filter_by_date") === "on",
      k_samples: Number(data.get("k_samples") ?? EVALUATE_DEFAULTS.k_samples),
    };
    const notify = data.get("notify") === "on";
    void runEvaluation(body, notify);
  });
}

async function runEvaluation(body: EvaluateBody, notify: boolean): Promise<void> {
  clearError();
  if (notify && "Notification" in window && Notification.permission === "default") {
    await Notification.requestPermission();
  }
  const host = el<HTMLElement>("#config-host");
  const progress = new ProgressView(host);
  try {
    const result = await streamEvaluate(body, (frame) => progress.apply(frame));
    if (progress.terminal === "cancelled" || result === null) {
      host.innerHTML = "";
      return; // back to search on cancel or error
    }
    if (notify && "Notification" in window && Notification.permission === "granted") {
      new Notification("Evaluation complete", { body: body.title });
    }
    storeResult(result);
    window.location.href = "detail.html";
  } catch (error) {
    showError(`Evaluation failed: ${error}`);
    host.innerHTML = "";
  }
}

async function runAbstract(): Promise<void> {
  clearError();
  const title = el<HTMLInputElement>("#abstract-title").value.trim();
  const abstract = el<HTMLTextAreaElement>("#abstract-text").value.trim();
  if (!title || !abstract) {
    showError("Both title and abstract are required.");
    return;
  }
  try {
    const result = await evaluateAbstract({
      title,
      abstract,
      k_recommended: EVALUATE_DEFAULTS.k_recommended,
      k_related: EVALUATE_DEFAULTS.k_related,
      model_id: EVALUATE_DEFAULTS.model_id,
      k_samples: EVALUATE_DEFAULTS.k_samples,
    });
    storeResult(result);
    window.location.href = "detail.html";
  } catch (error) {
    showError(`Abstract evaluation failed: ${error}`, () => void runAbstract());
  }
}

export function initSearchPage(): void {
  if (!helpDismissed()) {
    document.body.insertAdjacentHTML("beforeend", renderHelpOverlay());
    el("#help-dismiss").addEventListener("click", () => {
      dismissHelp();
      el("#help-overlay").remove();
    });
  }
  for (const tab of ["library", "arxiv", "abstract"] as Tab[]) {
    el(`#tab-${tab}`).addEventListener("click", () => switchTab(tab));
  }
  el<HTMLFormElement>("#search-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void runSearch();
  });
  el<HTMLFormElement>("#abstract-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void runAbstract();
  });
  switchTab("library");
  void loadLibrary();
}

if (typeof document !== "undefined" && document.getElementById("panel-library")) {
  initSearchPage();
}
