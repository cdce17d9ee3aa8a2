/** Layered DAG rendering: title on top, then claims, methods, experiments. */

import type { GraphNode, PaperGraph } from "./model.js";

const LAYER_ORDER: GraphNode["kind"][] = ["title", "claim", "method", "experiment"];
const NODE_WIDTH = 150;
const NODE_HEIGHT = 44;
const LAYER_GAP = 90;
const CANVAS_WIDTH = 760;

interface Placed {
  node: GraphNode;
  x: number;
  y: number;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function truncate(text: string, limit = 22): string {
  return text.length <= limit ? text : `${text.slice(0, limit - 1)}…`;
}

export function layoutGraph(graph: PaperGraph): Placed[] {
  const placed: Placed[] = [];
  LAYER_ORDER.forEach((kind, layerIndex) => {
    const layer = graph.nodes.filter((n) => n.kind === kind);
    const step = CANVAS_WIDTH / (layer.length + 1);
    layer.forEach((node, i) => {
      placed.push({
        node,
        x: step * (i + 1),
        y: 40 + layerIndex * LAYER_GAP,
      });
    });
  });
  return placed;
}

export function renderGraphSvg(graph: PaperGraph): string {
  const placed = layoutGraph(graph);
  const byId = new Map(placed.map((p) => [p.node.id, p]));
  const height = 40 + LAYER_GAP * (LAYER_ORDER.length - 1) + NODE_HEIGHT + 20;

  const edges = graph.edges
    .map(([from, to]) => {
      const a = byId.get(from);
      const b = byId.get(to);
      if (!a || !b) {
        return "";
      }
      return `<line x1="${a.x}" y1="${a.y + NODE_HEIGHT / 2}" x2="${b.x}" y2="${
        b.y - NODE_HEIGHT / 2
      }" class="graph-edge" />`;
    })
    .join("\n  ");

  const nodes = placed
    .map(
      (p) => `<g class="graph-node kind-${p.node.kind}" data-node-id="${escapeXml(p.node.id)}"
    transform="translate(${p.x - NODE_WIDTH / 2}, ${p.y - NODE_HEIGHT / 2})">
    <rect width="${NODE_WIDTH}" height="${NODE_HEIGHT}" rx="8"></rect>
    <text x="${NODE_WIDTH / 2}" y="18" text-anchor="middle" class="node-kind">${p.node.kind}</text>
    <text x="${NODE_WIDTH / 2}" y="34" text-anchor="middle" class="node-label">${escapeXml(
      truncate(p.node.label),
    )}</text>
  </g>`,
    )
    .join("\n  ");

  return `<svg viewBox="0 0 ${CANVAS_WIDTH} ${height}" class="paper-graph" role="img">
  ${edges}
  ${nodes}
</svg>`;
}
