"""Heat-bath chain for the antiferromagnetic k-color lattice model at
temperature T.  A configuration x (any node coloring, clashes allowed) has
weight gamma**(-M(x)) with gamma = exp(2/T) and M(x) the number of
monochromatic edges; the chain's node update keeps that distribution
invariant.

A step draws node v (draw 0), then proposal pairs: color c at draw i and
acceptance value U at draw ACCEPT_DRAW_OFFSET + i, for i = 1, 2, ...  The
proposal is accepted when U <= gamma**(-a_c) with a_c the number of
neighbors currently colored c, so the accepted color follows the heat-bath
conditional.  Acceptance draws live on their own index range so the color
stream occupies the same draw indices as the proper-coloring chain; in the
T -> 0 limit the two chains then agree step for step on shared keys.

The bounding step scores each proposal against the pessimistic and
optimistic neighbor counts: b_c counts neighbors pinned to exactly c, d_c
counts neighbors that might be c.  A color joins the candidate set when
U <= gamma**(-b_c) (some bounded configuration accepts it) and the loop
exits when U <= gamma**(-d_c) (every bounded configuration has accepted by
now) or when the set exceeds min(max_degree, u_v), the same cap argument as
the coloring chain.  For k <= max_degree the cap may be unreachable and
termination rests on the probabilistic exit, which fires with probability
at least gamma**(-max_degree) per proposal.
"""

from __future__ import annotations

from math import ceil, exp, log

from ..bounds import Form1Bound, NotCoalescedError, extract_unique
from ..graphs import Graph
from ..rng import index_at, uniform_at
from .base import Model

ACCEPT_DRAW_OFFSET = 1 << 32


class PottsModel(Model):
    name = "potts"

    def __init__(self, graph: Graph, k: int, temperature: float):
        if k < 2:
            raise ValueError("k must be >= 2")
        if temperature <= 0:
            raise ValueError("temperature must be positive")
        self.graph = graph
        self.k = k
        self.temperature = temperature
        self.gamma = exp(2.0 / temperature)
        # gamma**(-j) for j = 0..max_degree, the only exponents a step needs
        self._gpow = [self.gamma ** (-j) for j in range(graph.max_degree + 1)]

    def default_t0(self) -> int:
        n = self.graph.node_count
        return ceil(4 * n * log(n + 1))

    # state ------------------------------------------------------------

    def forward_step(self, x: list[int], base: int) -> list[int]:
        v = index_at(base, 0, self.graph.node_count)
        return self.move(x, v, self._pair_stream(base))

    def _pair_stream(self, base: int):
        i = 1
        while True:
            yield index_at(base, i, self.k), uniform_at(base, ACCEPT_DRAW_OFFSET + i)
            i += 1

    def move(self, x: list[int], v: int, pairs) -> list[int]:
        nbrs = self.graph.adjacency[v]
        gpow = self._gpow
        for c, u in pairs:
            a_c = sum(1 for w in nbrs if x[w] == c)
            if u <= gpow[a_c]:
                x[v] = c
                return x
        raise RuntimeError("proposal stream exhausted before acceptance")

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
        return self.bound_move(bound, v, self._pair_stream(base))

    def bound_move(self, bound: Form1Bound, v: int, pairs) -> Form1Bound:
        sets = bound.sets
        nbr_sets = [sets[w] for w in self.graph.adjacency[v]]
        cap = min(self.graph.max_degree, sum(1 for s in nbr_sets if len(s) > 1))
        gpow = self._gpow
        collected: set[int] = set()
        for c, u in pairs:
            b_c = sum(1 for s in nbr_sets if len(s) == 1 and c in s)
            d_c = sum(1 for s in nbr_sets if c in s)
            if u <= gpow[b_c]:
                collected.add(c)
            if u <= gpow[d_c] or len(collected) > cap:
                break
        else:
            raise RuntimeError("proposal stream exhausted before loop exit")
        sets[v] = collected
        return bound

    def bound_metric(self, bound: Form1Bound) -> int:
        return sum(1 for s in bound.sets if len(s) > 1)

    def extract_unique(self, bound: Form1Bound) -> list[int]:
        if any(len(s) != 1 for s in bound.sets):
            raise NotCoalescedError("some nodes still hold several colors")
        return list(extract_unique(bound))
