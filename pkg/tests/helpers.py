"""Shared test utilities: graph generators and brute-force oracles."""

import itertools
import random

from novelscope.graph.model import KIND_RANK, GraphNode, PaperGraph


def random_valid_graph(rng: random.Random, max_nodes: int = 50) -> PaperGraph:
    """A random graph satisfying every structural invariant."""

    def fresh_id() -> str:
        return f"n{rng.randrange(16**6):06x}"

    used: set[str] = set()

    def new_id() -> str:
        while True:
            candidate = fresh_id()
            if candidate not in used:
                used.add(candidate)
                return candidate

    title = GraphNode(id=new_id(), kind="title", label="Paper title")
    nodes = [title]
    edges: list[tuple[str, str]] = []

    claims = []
    for _ in range(rng.randint(0, 6)):
        node = GraphNode(id=new_id(), kind="claim", label="c", excerpt="claim text")
        claims.append(node)
        edges.append((title.id, node.id))
    methods = []
    for _ in range(rng.randint(0, 8)):
        if not claims:
            break
        node = GraphNode(id=new_id(), kind="method", label="m", excerpt="method text")
        methods.append(node)
        for parent in rng.sample(claims, rng.randint(1, min(2, len(claims)))):
            edges.append((parent.id, node.id))
    experiments = []
    for _ in range(rng.randint(0, 8)):
        if not methods:
            break
        node = GraphNode(id=new_id(), kind="experiment", label="e", excerpt="exp text")
        experiments.append(node)
        for parent in rng.sample(methods, rng.randint(1, min(2, len(methods)))):
            edges.append((parent.id, node.id))

    nodes = nodes + claims + methods + experiments
    nodes = nodes[:max_nodes]
    kept = {n.id for n in nodes}
    edges = [(a, b) for a, b in edges if a in kept and b in kept]
    return PaperGraph(nodes=tuple(nodes), edges=tuple(dict.fromkeys(edges)))


def random_arbitrary_graph(rng: random.Random, max_nodes: int = 8) -> PaperGraph:
    """A random graph that may violate any invariant."""
    n = rng.randint(1, max_nodes)
    kinds = ["title", "claim", "method", "experiment"]
    nodes = tuple(
        GraphNode(
            id=f"n{i}",
            kind=rng.choice(kinds),
            label="x",
            excerpt=rng.choice(["", "some excerpt"]),
        )
        for i in range(n)
    )
    edges = []
    for _ in range(rng.randint(0, 2 * n)):
        a, b = rng.choice(nodes).id, rng.choice(nodes).id
        if a != b:
            edges.append((a, b))
    return PaperGraph(nodes=nodes, edges=tuple(dict.fromkeys(edges)))


def brute_force_is_valid(graph: PaperGraph) -> bool:
    """Independent validity check: explicit cycle search plus BFS reachability."""
    nodes = {n.id: n for n in graph.nodes}
    if len(nodes) != len(graph.nodes):
        return False
    titles = [n for n in graph.nodes if n.kind == "title"]
    if len(titles) != 1:
        return False
    for node in graph.nodes:
        if node.kind in ("claim", "method", "experiment") and not node.excerpt:
            return False
    allowed = {("title", "claim"), ("claim", "method"), ("method", "experiment")}
    for a, b in graph.edges:
        if a not in nodes or b not in nodes:
            return False
        if (nodes[a].kind, nodes[b].kind) not in allowed:
            return False

    # Cycle search: repeated DFS over every simple path from every start node.
    adjacency: dict[str, list[str]] = {i: [] for i in nodes}
    for a, b in graph.edges:
        adjacency[a].append(b)

    def has_cycle_from(start: str, path: list[str]) -> bool:
        for nxt in adjacency[path[-1]]:
            if nxt == start:
                return True
            if nxt not in path and has_cycle_from(start, path + [nxt]):
                return True
        return False

    if any(has_cycle_from(i, [i]) for i in nodes):
        return False

    # BFS reachability from the title.
    seen = {titles[0].id}
    frontier = [titles[0].id]
    while frontier:
        current = frontier.pop()
        for nxt in adjacency[current]:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return all(n.id in seen for n in graph.nodes)


def all_topological_orders(graph: PaperGraph) -> list[list[str]]:
    """Every valid topological order (exponential; small graphs only)."""
    ids = [n.id for n in graph.nodes]
    orders = []
    for perm in itertools.permutations(ids):
        position = {node_id: i for i, node_id in enumerate(perm)}
        if all(position[a] < position[b] for a, b in graph.edges):
            orders.append(list(perm))
    return orders


def respects_edges(order: list[str], graph: PaperGraph) -> bool:
    position = {node_id: i for i, node_id in enumerate(order)}
    return all(position[a] < position[b] for a, b in graph.edges)


def kind_rank_tiebreak_ok(order: list[str], graph: PaperGraph) -> bool:
    """Verify the documented tie-break via greedy reconstruction."""
    nodes = graph.node_map()
    indegree = {i: 0 for i in nodes}
    for _, b in graph.edges:
        indegree[b] += 1
    remaining = dict(indegree)
    adjacency: dict[str, list[str]] = {i: [] for i in nodes}
    for a, b in graph.edges:
        adjacency[a].append(b)
    ready = {i for i in nodes if remaining[i] == 0}
    for node_id in order:
        expected = min(ready, key=lambda i: (KIND_RANK[nodes[i].kind], i))
        if node_id != expected:
            return False
        ready.remove(node_id)
        for nxt in adjacency[node_id]:
            remaining[nxt] -= 1
            if remaining[nxt] == 0:
                ready.add(nxt)
    return True
