"""Heat-bath recoloring chain for proper k-colorings.

A step draws a node v (draw 0) and then candidate colors at draws 1, 2, ...
until one is unused by v's neighbors; that color is uniform over the
allowed set.  Well-defined for k >= max_degree + 1.

The bounding step rebuilds v's candidate set from the same color stream: a
drawn color joins the set unless some neighbor is pinned to exactly that
color.  The loop stops when the drawn color lies outside the union of the
neighbor sets (every bounded coloring has accepted it, or an earlier draw)
or when the set exceeds u_v, the number of non-pinned neighbors.  The u_v
cap is sound because a bounded coloring can reject an added color only by
matching one of its u_v uncertain neighbors, and distinct added colors
rejected by one coloring identify distinct such neighbors; it also keeps
the stepped set no larger than u_v + 1 <= max_degree + 1.  A cap of
max_degree alone would never be reachable next to full neighbor sets when
k <= max_degree + 1.
"""

from __future__ import annotations

from math import ceil, log

from ..bounds import Form1Bound, NotCoalescedError, extract_unique
from ..graphs import Graph
from ..rng import index_at
from .base import Model


class ColoringModel(Model):
    name = "coloring"

    def __init__(self, graph: Graph, k: int):
        if k < graph.max_degree + 1:
            raise ValueError(
                f"k={k} leaves no available color at some node; "
                f"need k >= max_degree + 1 = {graph.max_degree + 1}"
            )
        self.graph = graph
        self.k = k

    def default_t0(self) -> int:
        n = self.graph.node_count
        return ceil(4 * n * log(n + 1))

    def greedy_state(self) -> list[int]:
        """Some proper coloring, for starting forward experiments."""
        x = [-1] * self.graph.node_count
        for v in range(self.graph.node_count):
            used = {x[w] for w in self.graph.adjacency[v] if x[w] >= 0}
            x[v] = next(c for c in range(self.k) if c not in used)
        return x

    # state ------------------------------------------------------------

    def forward_step(self, x: list[int], base: int) -> list[int]:
        v = index_at(base, 0, self.graph.node_count)
        return self.move(x, v, self._color_stream(base))

    def _color_stream(self, base: int):
        i = 1
        while True:
            yield index_at(base, i, self.k)
            i += 1

    def move(self, x: list[int], v: int, colors) -> list[int]:
        blocked = {x[w] for w in self.graph.adjacency[v]}
        for c in colors:
            if c not in blocked:
                x[v] = c
                return x
        raise RuntimeError("color stream exhausted before an allowed color")

    def copy_state(self, x):
        return list(x)

    def canonical(self, x):
        return tuple(x)

    def state_jsonable(self, x):
        return list(x)

    # bound ------------------------------------------------------------

    def initial_bound(self) -> Form1Bound:
        return Form1Bound.full(self.graph.node_count, self.k)

    def bounding_step(self, bound: Form1Bound, base: int) -> Form1Bound:
        v = index_at(base, 0, self.graph.node_count)
        return self.bound_move(bound, v, self._color_stream(base))

    def bound_move(self, bound: Form1Bound, v: int, colors) -> Form1Bound:
        sets = bound.sets
        nbr_sets = [sets[w] for w in self.graph.adjacency[v]]
        pinned = {next(iter(s)) for s in nbr_sets if len(s) == 1}
        union = set().union(*nbr_sets) if nbr_sets else set()
        u_v = sum(1 for s in nbr_sets if len(s) > 1)
        collected: set[int] = set()
        for c in colors:
            if c not in pinned:
                collected.add(c)
            if c not in union or len(collected) > u_v:
                break
        else:
            raise RuntimeError("color stream exhausted before loop exit")
        sets[v] = collected
        return bound

    def bound_metric(self, bound: Form1Bound) -> int:
        return sum(1 for s in bound.sets if len(s) > 1)

    def extract_unique(self, bound: Form1Bound) -> list[int]:
        if any(len(s) != 1 for s in bound.sets):
            raise NotCoalescedError("some nodes still hold several colors")
        return list(extract_unique(bound))
