/** Pure HTML builders: every page section renders from data alone. */

import type {
  EvidenceItem,
  LibrarySummary,
  PaperRecord,
  RelatedPaper,
  ResultDocument,
} from "./model.js";
import { renderGraphSvg } from "./graph_view.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Displayed similarity: clamp into [0, 1], then round to a percentage. */
export function similarityPercent(similarity: number): number {
  const clamped = Math.max(0, Math.min(1, similarity));
  return Math.round(100 * clamped);
}

export function formatAuthors(authors: string[]): string {
  if (authors.length === 0) {
    return "Unknown authors";
  }
  if (authors.length <= 3) {
    return authors.join(", ");
  }
  return `${authors[0]} et al.`;
}

// --- search page -------------------------------------------------------------

export function renderHelpOverlay(): string {
  return `<div class="help-overlay" id="help-overlay">
  <div class="help-box">
    <h2>Getting started</h2>
    <p>Pick a paper from the <strong>Library</strong> of pre-computed reports,
    search <strong>arXiv</strong> by title to run a fresh evaluation, or paste a
    title and abstract under <strong>Abstract</strong> to assess a draft.</p>
    <button id="help-dismiss" class="primary">Got it</button>
  </div>
</div>`;
}

export function renderLibraryCard(summary: LibrarySummary): string {
  const venue = summary.venue ? escapeHtml(summary.venue) : "unpublished";
  return `<article class="card library-card" data-key="${escapeHtml(summary.key)}">
  <h3>${escapeHtml(summary.title)}</h3>
  <p class="meta">${venue}${summary.year ? ` · ${summary.year}` : ""} ·
    <span class="label label-${summary.label}">${escapeHtml(summary.label)}</span>
    <span class="score">${similarityPercent(summary.score)}%</span></p>
  <p class="abstract">${escapeHtml(summary.abstract)}</p>
</article>`;
}

export function renderSearchResult(record: PaperRecord): string {
  return `<article class="card search-result" data-arxiv-id="${escapeHtml(record.arxiv_id ?? "")}"
  data-title="${escapeHtml(record.title)}">
  <h3>${escapeHtml(record.title)}</h3>
  <p class="meta">${escapeHtml(formatAuthors(record.authors))}${
    record.year ? ` · ${record.year}` : ""
  }</p>
  <p class="abstract">${escapeHtml(record.abstract)}</p>
  <button class="evaluate-btn primary">Evaluate</button>
</article>`;
}

export function renderConfigPanel(title: string): string {
  return `<div class="config-panel" id="config-panel">
  <h3>Evaluate: ${escapeHtml(title)}</h3>
  <form id="config-form">
    <label>Citations to include
      <input type="number" name="k_citations" value="20" min="1" max="50"></label>
    <label>Recommended papers to retrieve
      <input type="number" name="k_recommended" value="30" min="1" max="100"></label>
    <label>Related papers to keep
      <input type="number" name="k_related" value="10" min="1" max="50"></label>
    <label>Scoring samples
      <input type="number" name="k_samples" value="5" min="1" max="20"></label>
    <label>Model
      <select name="model_id">
        <option value="gemini-2.0-flash">gemini-2.0-flash</option>
        <option value="gpt-4o">gpt-4o</option>
        <option value="gpt-4o-mini">gpt-4o-mini</option>
      </select></label>
    <label class="checkbox">
      <input type="checkbox" name="filter_by_date" checked>
      Only papers published before this one</label>
    <label class="checkbox">
      <input type="checkbox" name="notify">
      Notify me when the evaluation completes</label>
    <button type="submit" class="primary" id="config-confirm">Start evaluation</button>
  </form>
</div>`;
}

export function renderProgress(stage: string, percent: number, message: string): string {
  return `<div class="progress" id="progress">
  <div class="progress-bar"><div class="progress-fill" style="width: ${percent}%"></div></div>
  <p class="progress-stage" data-stage="${escapeHtml(stage)}">
    <strong>${escapeHtml(stage)}</strong> · ${Math.round(percent)}% · ${escapeHtml(message)}</p>
  <button id="cancel-btn" class="danger">Cancel</button>
</div>`;
}

// --- detail page -------------------------------------------------------------

export function renderMetadata(doc: ResultDocument): string {
  const paper = doc.paper;
  const report = doc.report;
  const keywords = report.keywords
    .map((k) => `<span class="keyword">${escapeHtml(k)}</span>`)
    .join(" ");
  const arxivLink = paper.arxiv_id
    ? `<a href="https://arxiv.org/abs/${escapeHtml(paper.arxiv_id)}">arXiv:${escapeHtml(paper.arxiv_id)}</a>`
    : "";
  return `<section class="metadata" id="metadata-section">
  <h2>${escapeHtml(paper.title)}</h2>
  <p class="meta">${escapeHtml(formatAuthors(paper.authors))}${
    paper.year ? ` · ${paper.year}` : ""
  }${paper.venue ? ` · ${escapeHtml(paper.venue)}` : ""} ${arxivLink}</p>
  <p class="novelty-score">Novelty:
    <strong>${similarityPercent(report.score)}%</strong>
    <span class="label label-${report.label}">${escapeHtml(report.label)}</span></p>
  <p class="keywords">${keywords}</p>
  <p class="abstract">${escapeHtml(paper.abstract)}</p>
</section>`;
}

export function renderGraphSection(doc: ResultDocument): string {
  if (doc.graph === null) {
    return "";
  }
  return `<section class="graph" id="graph-section">
  <h2>Paper Structure</h2>
  <p class="hint">Click a node to see the supporting text extracted from the paper.</p>
  ${renderGraphSvg(doc.graph)}
  <div class="excerpt-panel" id="excerpt-panel" hidden></div>
</section>`;
}

function renderEvidenceList(items: EvidenceItem[], related: RelatedPaper[]): string {
  if (items.length === 0) {
    return `<p class="empty">None identified.</p>`;
  }
  const known = new Set(related.map((r) => r.record.id));
  const rows = items.map((item) => {
    const resolvable = known.has(item.related_id);
    const link = resolvable
      ? `<a href="#related-${escapeHtml(item.related_id)}" class="evidence-link">${escapeHtml(item.related_id)}</a>`
      : `<span class="evidence-unresolved" title="related paper not found">${escapeHtml(item.related_id)} &#9888;</span>`;
    return `<li class="evidence-item">${escapeHtml(item.explanation)} ${link}</li>`;
  });
  return `<ul>${rows.join("\n")}</ul>`;
}

export function renderAssessment(doc: ResultDocument): string {
  const report = doc.report;
  return `<section class="assessment" id="assessment-section">
  <h2>Novelty Assessment</h2>
  <p class="summary">${escapeHtml(report.summary)}</p>
  <div class="evidence">
    <div class="evidence-col" id="supporting-evidence">
      <h3>Supporting Evidence</h3>
      ${renderEvidenceList(report.supporting, doc.related)}
    </div>
    <div class="evidence-col" id="contradictory-evidence">
      <h3>Contradictory Evidence</h3>
      ${renderEvidenceList(report.contradictory, doc.related)}
    </div>
  </div>
</section>`;
}

export function renderRelatedPaper(paper: RelatedPaper): string {
  const percent = similarityPercent(paper.similarity);
  const detail =
    paper.source === "citation"
      ? `<ul class="contexts">${paper.contexts
          .map(
            (c) =>
              `<li class="context context-${c.polarity}">
                 <span class="polarity">${escapeHtml(c.polarity)}</span>
                 ${escapeHtml(c.sentence)}</li>`,
          )
          .join("\n")}</ul>`
      : `<p class="matched-text"><em>Matched ${escapeHtml(paper.class)}:</em>
           ${escapeHtml(paper.matched_text)}</p>`;
  return `<article class="card related-paper source-${paper.source}"
  id="related-${escapeHtml(paper.record.id)}">
  <h3>${escapeHtml(paper.record.title)}</h3>
  <p class="meta">
    <span class="class class-${paper.class}">${escapeHtml(paper.class)}</span> ·
    ${escapeHtml(paper.source)}${paper.record.year ? ` · ${paper.record.year}` : ""}</p>
  <p class="similarity">Similarity: ${percent}%</p>
  <div class="similarity-bar"><div class="similarity-fill" style="width: ${percent}%"></div></div>
  <p class="abstract">${escapeHtml(paper.record.abstract)}</p>
  <p class="relation-summary">${escapeHtml(paper.summary)}</p>
  ${detail}
</article>`;
}

export function renderRelatedSection(doc: ResultDocument): string {
  const citations = doc.related.filter((r) => r.source === "citation");
  const semantic = doc.related.filter((r) => r.source === "semantic");
  const citationBlock =
    citations.length > 0
      ? `<div id="citation-related">
  <h3>From the citation network</h3>
  ${citations.map(renderRelatedPaper).join("\n")}
</div>`
      : "";
  const semanticBlock =
    semantic.length > 0
      ? `<div id="semantic-related">
  <h3>Semantically related</h3>
  ${semantic.map(renderRelatedPaper).join("\n")}
</div>`
      : "";
  return `<section class="related" id="related-section">
  <h2>Related Papers</h2>
  ${citationBlock}
  ${semanticBlock}
</section>`;
}

export function renderDetail(doc: ResultDocument): string {
  const notice =
    doc.report.mode === "abstract_only"
      ? `<p class="mode-notice">Evaluated from the abstract only: the structure
    graph and citation-based entries are unavailable.</p>`
      : "";
  return `${renderMetadata(doc)}
${notice}
${renderGraphSection(doc)}
${renderAssessment(doc)}
${renderRelatedSection(doc)}`;
}
