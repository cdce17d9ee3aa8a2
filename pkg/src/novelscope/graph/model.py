"""Paper structure graph: data model, validation, and linearization.

The graph is a DAG rooted at a single title node. Edges step down the
hierarchy only (title→claim→method→experiment), and every non-title node must
be reachable from the title, so claims are substantiated by methods and
methods validated by experiments.
"""

from dataclasses import dataclass, field
from typing import Any

from novelscope.errors import CyclicGraph

KIND_RANK = {"title": 0, "claim": 1, "method": 2, "experiment": 3}
_ALLOWED_STEP = {("title", "claim"), ("claim", "method"), ("method", "experiment")}


@dataclass(frozen=True)
class GraphNode:
    id: str
    kind: str  # title | claim | method | experiment
    label: str
    excerpt: str = ""
    excerpt_repaired: bool = False  # set when the model's excerpt was not verbatim

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind,
            "label": self.label,
            "excerpt": self.excerpt,
            "excerpt_repaired": self.excerpt_repaired,
        }


@dataclass(frozen=True)
class PaperGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[tuple[str, str], ...] = ()

    def node_map(self) -> dict[str, GraphNode]:
        return {n.id: n for n in self.nodes}

    def to_dict(self) -> dict[str, Any]:
        return {
            "nodes": [n.to_dict() for n in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "PaperGraph":
        nodes = tuple(
            GraphNode(
                id=n["id"],
                kind=n["kind"],
                label=n["label"],
                excerpt=n.get("excerpt", ""),
                excerpt_repaired=n.get("excerpt_repaired", False),
            )
            for n in d["nodes"]
        )
        return cls(nodes=nodes, edges=tuple((a, b) for a, b in d["edges"]))


@dataclass
class Violation:
    rule: str  # acyclicity | kind-hierarchy | reachability | excerpt | structure
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.detail}"


def validate_graph(graph: PaperGraph) -> list[Violation]:
    """Every violated invariant, not just the first. Empty list means valid."""
    violations: list[Violation] = []
    nodes = graph.node_map()

    if len(nodes) != len(graph.nodes):
        violations.append(Violation("structure", "duplicate node ids"))
    for node in graph.nodes:
        if node.kind not in KIND_RANK:
            violations.append(Violation("structure", f"unknown kind {node.kind!r} on {node.id}"))

    titles = [n for n in graph.nodes if n.kind == "title"]
    if len(titles) != 1:
        violations.append(
            Violation("structure", f"expected exactly one title node, found {len(titles)}")
        )

    for node in graph.nodes:
        if node.kind in ("claim", "method", "experiment") and not node.excerpt:
            violations.append(Violation("excerpt", f"node {node.id} has an empty excerpt"))

    known_edges: list[tuple[str, str]] = []
    for a, b in graph.edges:
        if a not in nodes or b not in nodes:
            violations.append(Violation("structure", f"edge ({a}, {b}) references a missing node"))
            continue
        known_edges.append((a, b))
        step = (nodes[a].kind, nodes[b].kind)
        if step not in _ALLOWED_STEP:
            violations.append(
                Violation(
                    "kind-hierarchy",
                    f"edge {a}->{b} goes {step[0]}->{step[1]}; only "
                    "title->claim, claim->method, method->experiment are allowed",
                )
            )

    cycle = _find_cycle(set(nodes), known_edges)
    if cycle:
        violations.append(Violation("acyclicity", "cycle through " + " -> ".join(cycle)))

    if len(titles) == 1 and not cycle:
        reachable = _reachable(titles[0].id, known_edges)
        for node in graph.nodes:
            if node.kind != "title" and node.id not in reachable:
                violations.append(
                    Violation("reachability", f"node {node.id} is not reachable from the title")
                )

    return violations


def _adjacency(edges: list[tuple[str, str]]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
    return adj


def _find_cycle(ids: set[str], edges: list[tuple[str, str]]) -> list[str] | None:
    adj = _adjacency(edges)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {i: WHITE for i in ids}
    stack: list[str] = []

    def visit(u: str) -> list[str] | None:
        color[u] = GRAY
        stack.append(u)
        for v in adj.get(u, ()):
            if color[v] == GRAY:
                return stack[stack.index(v) :] + [v]
            if color[v] == WHITE:
                found = visit(v)
                if found:
                    return found
        stack.pop()
        color[u] = BLACK
        return None

    for start in sorted(ids):
        if color[start] == WHITE:
            found = visit(start)
            if found:
                return found
    return None


def _reachable(root: str, edges: list[tuple[str, str]]) -> set[str]:
    adj = _adjacency(edges)
    seen = {root}
    frontier = [root]
    while frontier:
        u = frontier.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return seen


def topological_order(graph: PaperGraph) -> list[GraphNode]:
    """Kahn's algorithm with a deterministic tie-break.

    Among ready nodes we pick the smallest by (kind rank, id), so equal graphs
    linearize identically regardless of node-list order.
    """
    nodes = graph.node_map()
    indegree = {i: 0 for i in nodes}
    adj: dict[str, list[str]] = {i: [] for i in nodes}
    for a, b in graph.edges:
        adj[a].append(b)
        indegree[b] += 1

    def rank(node_id: str) -> tuple[int, str]:
        return (KIND_RANK.get(nodes[node_id].kind, 99), node_id)

    ready = sorted((i for i in nodes if indegree[i] == 0), key=rank)
    order: list[GraphNode] = []
    while ready:
        current = ready.pop(0)
        order.append(nodes[current])
        changed = False
        for nxt in adj[current]:
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                ready.append(nxt)
                changed = True
        if changed:
            ready.sort(key=rank)
    if len(order) != len(nodes):
        raise CyclicGraph("graph contains a cycle; run validate_graph first")
    return order


def linearize(graph: PaperGraph) -> str:
    """Flatten the graph into one paragraph per node, topologically ordered."""
    paragraphs = []
    for node in topological_order(graph):
        if node.kind == "title":
            paragraphs.append(f"Title: {node.label}")
        elif node.excerpt:
            paragraphs.append(f"{node.kind.capitalize()}: {node.label}\n{node.excerpt}")
        else:
            paragraphs.append(f"{node.kind.capitalize()}: {node.label}")
    return "\n\n".join(paragraphs)
