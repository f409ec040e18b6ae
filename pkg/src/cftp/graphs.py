"""Undirected simple graphs and the edge-list file format.

File format: optional comment lines starting with '#', a header line
"n m", then exactly m lines "u v" with 0 <= u, v < n and u != v.
Whitespace separated, LF or CRLF line endings; blank lines are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Malformed graph text; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    node_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    incident: tuple[tuple[int, ...], ...] = field(repr=False)  # edge ids per node
    max_degree: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        if node_count < 1:
            raise ValueError("graph needs at least one node")
        edges = tuple((int(u), int(v)) for u, v in edges)
        seen = set()
        adj: list[list[int]] = [[] for _ in range(node_count)]
        inc: list[list[int]] = [[] for _ in range(node_count)]
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) out of range for n={node_count}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if (min(u, v), max(u, v)) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((min(u, v), max(u, v)))
            adj[u].append(v)
            adj[v].append(u)
            inc[u].append(eid)
            inc[v].append(eid)
        return cls(
            node_count=node_count,
            edges=edges,
            adjacency=tuple(tuple(sorted(a)) for a in adj),
            incident=tuple(tuple(i) for i in inc),
            max_degree=max((len(a) for a in adj), default=0),
        )

    def is_connected(self) -> bool:
        if self.node_count == 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.node_count


def load_graph(text: str) -> Graph:
    """Parse edge-list text into a validated Graph.

    Errors (bad header, out-of-range node, self-loop, duplicate edge, wrong
    edge count) are reported with the offending line number.
    """
    header: tuple[int, int] | None = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError(f"expected header 'n m', got {line!r}", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"non-integer header {line!r}", lineno) from None
            if n < 1:
                raise GraphFormatError(f"node count must be >= 1, got {n}", lineno)
            if m < 0:
                raise GraphFormatError(f"edge count must be >= 0, got {m}", lineno)
            header = (n, m)
            header_line = lineno
            continue
        if len(edges) == header[1]:
            raise GraphFormatError(
                f"unexpected extra line {line!r} after {header[1]} edges", lineno
            )
        if len(parts) != 2:
            raise GraphFormatError(f"expected edge 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer edge {line!r}", lineno) from None
        edges.append((u, v))
        edge_lines.append(lineno)
    if header is None:
        raise GraphFormatError("empty graph file (missing 'n m' header)")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(
            f"header declares {m} edges but file has {len(edges)}", header_line
        )
    seen: set[tuple[int, int]] = set()
    for (u, v), lineno in zip(edges, edge_lines):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"node index out of range in edge ({u}, {v})", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at node {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add(key)
    return Graph.from_edges(n, edges)


def graph_text(graph: Graph) -> str:
    lines = [f"{graph.node_count} {graph.edge_count}"]
    lines += [f"{u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 nodes")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def single_node_graph() -> Graph:
    return Graph.from_edges(1, [])
