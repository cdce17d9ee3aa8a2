/** Types mirroring the server's documented REST/SSE contract. */

export interface PaperRecord {
  id: string;
  title: string;
  abstract: string;
  authors: string[];
  year: number | null;
  arxiv_id: string | null;
  venue: string | null;
  url: string | null;
  citation_count: number | null;
}

export interface GraphNode {
  id: string;
  kind: "title" | "claim" | "method" | "experiment";
  label: string;
  excerpt: string;
  excerpt_repaired: boolean;
}

export interface PaperGraph {
  nodes: GraphNode[];
  edges: [string, string][];
}

export interface CitationContextEntry {
  citation_key: string;
  sentence: string;
  section_heading: string;
  position: [number, number, number];
  polarity: "positive" | "negative";
}

export interface RelatedPaper {
  record: PaperRecord;
  source: "citation" | "semantic";
  class: "supporting" | "contrasting" | "background" | "target";
  similarity: number;
  similarity_raw: number;
  summary: string;
  contexts: CitationContextEntry[];
  matched_text: string;
}

export interface EvidenceItem {
  related_id: string;
  explanation: string;
  polarity: "supports" | "contradicts";
}

export interface NoveltyReport {
  paper_id: string;
  score: number;
  samples: number[];
  label: "novel" | "not_novel";
  summary: string;
  supporting: EvidenceItem[];
  contradictory: EvidenceItem[];
  keywords: string[];
  cost: { total_usd?: number };
  mode: "full" | "abstract_only";
  warnings: string[];
}

export interface ResultDocument {
  version: string;
  paper: PaperRecord;
  graph: PaperGraph | null;
  related: RelatedPaper[];
  report: NoveltyReport;
}

export interface LibrarySummary {
  key: string;
  title: string;
  abstract: string;
  venue: string | null;
  year: number | null;
  score: number;
  label: string;
  mode: string;
}

export interface EvaluateBody {
  arxiv_id: string;
  title: string;
  k_citations: number;
  k_recommended: number;
  k_related: number;
  model_id: string;
  filter_by_date: boolean;
  k_samples: number;
}

export const EVALUATE_DEFAULTS: Omit<EvaluateBody, "arxiv_id" | "title"> = {
  k_citations: 20,
  k_recommended: 30,
  k_related: 10,
  model_id: "gemini-2.0-flash",
  filter_by_date: true,
  k_samples: 5,
};

export const MODEL_CHOICES = ["gemini-2.0-flash", "gpt-4o", "gpt-4o-mini"];

export interface ProgressFrame {
  event: "progress" | "done" | "error" | "cancelled";
  data: {
    stage: string;
    percent: number;
    message: string;
    evaluation_id?: string;
    result?: ResultDocument;
    cached?: boolean;
  };
}
