"""Occupancy chain for the hard-core gas (independent sets weighted by
fugacity**|A|), with single-site insert/delete moves plus a swap move.

A step draws a node v (draw 0) and a uniform U (draw 1).  With
alpha = fugacity / (fugacity + 1):

  U > alpha                                   remove v,
  U < alpha, no occupied neighbor             insert v,
  U < p_swap * alpha, one occupied neighbor   swap: insert v, evict it,
  otherwise                                   hold.

The bound is the (known_in B, uncertain D) pair.  The bounding step mirrors
the move table on neighbor counts in B and D; the case guards below are
mutually exclusive by construction even where the prose cases overlap:

  I     U > alpha                              v out of B and D
  IIa   U < alpha,        nB=0, nD=0           v into B
  IIb   pa <= U < alpha,  nB=0, nD=1           v uncertain
  IIc   U < pa,           nB=0, nD=1           v into B, the D-neighbor out
  IId   U < alpha,        nB=0, nD>=2          v uncertain
  IIIa  U < pa,           nB=1, nD=0           v into B, the B-neighbor out
  IIIb  U < pa,           nB=1, nD>=1          v and the B-neighbor uncertain
  else                                         unchanged

with pa = p_swap * alpha.
"""

from __future__ import annotations

from math import ceil, log

from ..bounds import Form2Bound, NotCoalescedError
from ..graphs import Graph
from ..rng import index_at, uniform_at
from .base import Model

CASE_I = 0
CASE_IIA = 1
CASE_IIB = 2
CASE_IIC = 3
CASE_IID = 4
CASE_IIIA = 5
CASE_IIIB = 6
CASE_NONE = 7


def classify(u: float, n_b: int, n_d: int, alpha: float, pa: float) -> int:
    """Which bounding-step case fires for draw value u and neighbor counts."""
    if u > alpha:
        return CASE_I
    if u >= alpha:  # u == alpha, a null event kept deterministic
        return CASE_NONE
    if n_b == 0:
        if n_d == 0:
            return CASE_IIA
        if n_d == 1:
            return CASE_IIC if u < pa else CASE_IIB
        return CASE_IID
    if n_b == 1 and u < pa:
        return CASE_IIIA if n_d == 0 else CASE_IIIB
    return CASE_NONE


class HardcoreModel(Model):
    name = "hardcore"

    def __init__(self, graph: Graph, fugacity: float, p_swap: float = 0.25):
        if fugacity <= 0:
            raise ValueError("fugacity must be positive")
        if not 0.0 <= p_swap <= 1.0:
            raise ValueError("p_swap must lie in [0, 1]")
        self.graph = graph
        self.fugacity = fugacity
        self.p_swap = p_swap
        self.alpha = fugacity / (fugacity + 1.0)
        self.pa = p_swap * self.alpha

    def default_t0(self) -> int:
        n = self.graph.node_count
        return ceil(4 * n * log(n + 1))

    # state ------------------------------------------------------------

    def forward_step(self, occupied: set, base: int) -> set:
        v = index_at(base, 0, self.graph.node_count)
        u = uniform_at(base, 1)
        return self.move(occupied, v, u)

    def move(self, occupied: set, v: int, u: float) -> set:
        if u > self.alpha:
            occupied.discard(v)
        elif u < self.alpha:
            occ_nbrs = [w for w in self.graph.adjacency[v] if w in occupied]
            if not occ_nbrs:
                occupied.add(v)
            elif len(occ_nbrs) == 1 and u < self.pa:
                occupied.discard(occ_nbrs[0])
                occupied.add(v)
        return occupied

    def copy_state(self, occupied):
        return set(occupied)

    def canonical(self, occupied):
        return tuple(sorted(occupied))

    def state_jsonable(self, occupied):
        return sorted(occupied)

    # bound ------------------------------------------------------------

    def initial_bound(self) -> Form2Bound:
        return Form2Bound(set(), range(self.graph.node_count))

    def bounding_step(self, bound: Form2Bound, base: int) -> Form2Bound:
        v = index_at(base, 0, self.graph.node_count)
        u = uniform_at(base, 1)
        return self.bound_move(bound, v, u)

    def bound_move(self, bound: Form2Bound, v: int, u: float) -> Form2Bound:
        b, d = bound.known_in, bound.uncertain
        nbrs = self.graph.adjacency[v]
        n_b = sum(1 for w in nbrs if w in b)
        n_d = sum(1 for w in nbrs if w in d)
        case = classify(u, n_b, n_d, self.alpha, self.pa)
        if case == CASE_I:
            b.discard(v)
            d.discard(v)
        elif case == CASE_IIA:
            b.add(v)
            d.discard(v)
        elif case in (CASE_IIB, CASE_IID):
            b.discard(v)
            d.add(v)
        elif case == CASE_IIC:
            b.add(v)
            d.discard(v)
            for w in nbrs:
                d.discard(w)
        elif case == CASE_IIIA:
            bn = next(w for w in nbrs if w in b)
            b.discard(bn)
            b.add(v)
            d.discard(v)
        elif case == CASE_IIIB:
            bn = next(w for w in nbrs if w in b)
            b.discard(v)
            b.discard(bn)
            d.add(v)
            d.add(bn)
        return bound

    def bound_metric(self, bound: Form2Bound) -> int:
        return len(bound.uncertain)

    def extract_unique(self, bound: Form2Bound) -> set:
        if bound.uncertain:
            raise NotCoalescedError("some nodes still uncertain")
        return set(bound.known_in)
