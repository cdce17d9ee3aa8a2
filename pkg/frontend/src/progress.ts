/** Progress bar driven by the /evaluate SSE stream. */

import type { ProgressFrame } from "./model.js";
import { renderProgress } from "./render.js";
import { cancelEvaluation } from "./api.js";

export class ProgressView {
  readonly root: HTMLElement;
  evaluationId: string | null = null;
  stagesSeen: string[] = [];
  terminal: string | null = null;

  constructor(container: HTMLElement) {
    this.root = container;
    this.root.innerHTML = renderProgress("starting", 0, "contacting server");
    this.wireCancel();
  }

  private wireCancel(): void {
    const button = this.root.querySelector<HTMLButtonElement>("#cancel-btn");
    button?.addEventListener("click", () => {
      if (this.evaluationId !== null) {
        void cancelEvaluation(this.evaluationId);
      }
    });
  }

  apply(frame: ProgressFrame): void {
    if (frame.data.evaluation_id) {
      this.evaluationId = frame.data.evaluation_id;
    }
    this.stagesSeen.push(frame.data.stage);
    if (frame.event !== "progress") {
      this.terminal = frame.event;
    }
    this.root.innerHTML = renderProgress(
      frame.data.stage,
      frame.data.percent,
      frame.data.message,
    );
    this.wireCancel();
  }

  currentStage(): string | null {
    const el = this.root.querySelector<HTMLElement>(".progress-stage");
    return el?.dataset.stage ?? null;
  }

  fillPercent(): number {
    const fill = this.root.querySelector<HTMLElement>(".progress-fill");
    return fill ? parseFloat(fill.style.width) : 0;
  }
}
