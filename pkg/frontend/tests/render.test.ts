import { describe, expect, it } from "vitest";

import { showDetail } from "../src/detail.js";
import {
  renderDetail,
  renderLibraryCard,
  renderRelatedPaper,
  similarityPercent,
} from "../src/render.js";
import { goldenAbstractDocument, goldenDocument } from "./golden.js";

function mount(html: string): HTMLElement {
  const root = document.createElement("main");
  root.innerHTML = html;
  document.body.append(root);
  return root;
}

describe("detail page from the golden full report", () => {
  const doc = goldenDocument("alpha");

  it("matches the DOM snapshot", () => {
    expect(renderDetail(doc)).toMatchSnapshot();
  });

  it("renders all four sections", () => {
    const root = mount(renderDetail(doc));
    expect(root.querySelector("#metadata-section")).not.toBeNull();
    expect(root.querySelector("#graph-section")).not.toBeNull();
    expect(root.querySelector("#assessment-section")).not.toBeNull();
    expect(root.querySelector("#related-section")).not.toBeNull();
    root.remove();
  });

  it("shows the novelty percentage from the report score", () => {
    const root = mount(renderDetail(doc));
    const scoreText = root.querySelector(".novelty-score")?.textContent ?? "";
    expect(scoreText).toContain(`${Math.round(100 * doc.report.score)}%`);
    root.remove();
  });

  it("links every resolvable evidence item to its related-paper card", () => {
    const root = mount(renderDetail(doc));
    const links = root.querySelectorAll<HTMLAnchorElement>(".evidence-link");
    expect(links.length).toBe(
      doc.report.supporting.length + doc.report.contradictory.length,
    );
    for (const link of links) {
      const target = link.getAttribute("href")!.slice(1);
      expect(root.querySelector(`[id="${target}"]`)).not.toBeNull();
    }
    root.remove();
  });

  it("shows citation contexts with their polarities", () => {
    const citation = doc.related.find((r) => r.source === "citation")!;
    const html = renderRelatedPaper(citation);
    for (const context of citation.contexts) {
      expect(html).toContain(context.polarity);
    }
  });

  it("clicking a graph node reveals its verbatim excerpt", () => {
    const root = mount("");
    showDetail(root, doc);
    const claim = doc.graph!.nodes.find((n) => n.kind === "claim")!;
    const nodeEl = root.querySelector<SVGGElement>(
      `.graph-node[data-node-id="${claim.id}"]`,
    )!;
    nodeEl.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    const panel = root.querySelector<HTMLElement>("#excerpt-panel")!;
    expect(panel.hidden).toBe(false);
    expect(panel.textContent).toContain(claim.excerpt);
    root.remove();
  });
});

describe("detail page from the golden abstract-only report", () => {
  const doc = goldenAbstractDocument();

  it("matches the DOM snapshot", () => {
    expect(renderDetail(doc)).toMatchSnapshot();
  });

  it("hides the graph and citation sections", () => {
    const root = mount(renderDetail(doc));
    expect(root.querySelector("#graph-section")).toBeNull();
    expect(root.querySelector("#citation-related")).toBeNull();
    expect(root.querySelector("#semantic-related")).not.toBeNull();
    expect(root.querySelector(".mode-notice")).not.toBeNull();
    root.remove();
  });
});

describe("similarity display rule", () => {
  it("is round(100 x clamped similarity), always within [0, 100]", () => {
    expect(similarityPercent(0.734)).toBe(73);
    expect(similarityPercent(-0.4)).toBe(0);
    expect(similarityPercent(1.7)).toBe(100);
    for (const value of [-1, -0.01, 0, 0.005, 0.4949, 0.5, 0.995, 1, 2]) {
      const pct = similarityPercent(value);
      expect(pct).toBeGreaterThanOrEqual(0);
      expect(pct).toBeLessThanOrEqual(100);
      expect(pct).toBe(Math.round(100 * Math.max(0, Math.min(1, value))));
    }
  });

  it("appears in related-paper cards with a proportional bar", () => {
    const doc = goldenDocument("alpha");
    const related = doc.related[0];
    const html = renderRelatedPaper(related);
    const pct = similarityPercent(related.similarity);
    expect(html).toContain(`Similarity: ${pct}%`);
    expect(html).toContain(`width: ${pct}%`);
  });
});

describe("library cards", () => {
  it("show title, abstract, and venue", () => {
    const html = renderLibraryCard({
      key: "k1",
      title: "A Paper",
      abstract: "What it says.",
      venue: "ICML",
      year: 2024,
      score: 0.6,
      label: "novel",
      mode: "full",
    });
    expect(html).toContain("A Paper");
    expect(html).toContain("What it says.");
    expect(html).toContain("ICML");
    expect(html).toContain("60%");
  });
});
