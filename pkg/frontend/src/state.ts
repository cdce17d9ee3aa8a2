/** Local view state: the help-dismissed flag and the last opened report. */

const HELP_KEY = "novelscope:help-dismissed";
const LAST_RESULT_KEY = "novelscope:last-result";

export function helpDismissed(): boolean {
  return localStorage.getItem(HELP_KEY) === "1";
}

export function dismissHelp(): void {
  localStorage.setItem(HELP_KEY, "1");
}

export function storeResult(document: unknown): void {
  sessionStorage.setItem(LAST_RESULT_KEY, JSON.stringify(document));
}

export function loadStoredResult<T>(): T | null {
  const raw = sessionStorage.getItem(LAST_RESULT_KEY);
  return raw === null ? null : (JSON.parse(raw) as T);
}
