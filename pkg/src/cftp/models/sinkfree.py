"""Edge-flip chain on sink-free orientations, with the three-phase
coalescence protocol.

States assign each edge a direction: x[e] = 0 keeps the stored endpoint
order (tail, head), 1 reverses it.  A step draws an edge index (draw 0) and
U (draw 1); U < 1/2 proposes the stored direction, U >= 1/2 the reverse
(the tie at exactly 1/2 is a null event, resolved to the reverse so replay
stays deterministic).  The proposal is applied unless it would leave the
new head with no outgoing edge.

The bounding step keeps a set of possible directions per edge (here coded
0, 1, or 2 for "either").  For a proposal into head w it looks only at w's
other edges: a known edge leaving w means every bounded state applies the
move (edge becomes known); otherwise an unknown edge at w means the guard
may go either way (edge becomes unknown); otherwise all of w's other edges
are known to enter w and the move is rejected in every bounded state
(bound unchanged).  The chosen edge itself never counts as w's outgoing
edge: the proposal would redirect it, so treating it as an out-edge would
certify moves that some bounded states reject.

The all-unknown bound is absorbing, so block detection splits the state
space instead of bounding it directly:

  Phase I    one shared-stream step; the drawn edge and proposal direction
             split all states into "applied" (class 1, edge known in the
             proposal direction, everything else unknown) and "rejected"
             (class 2, edge known opposite and all other edges at the
             proposal's head known to enter it).
  Phase II   the two class bounds advance in lockstep on branch-1 and
             branch-2 draws; if either falls back to all-unknown the
             machine runs a fresh Phase I at the next step; when both
             coalesce their states continue to
  Phase III  a pairwise coupling on shared branch-0 draws; when the two
             states meet, the block map is constant.

The phase schedule is a function of the block's draws alone, so replaying
an arbitrary state re-runs the machine, classifies the state after each
Phase I step by its own split-edge direction, and advances it on its
class branch during Phase II and the shared branch otherwise.
"""

from __future__ import annotations

from ..bounds import NotCoalescedError
from ..graphs import Graph
from ..rng import index_at, stream_base, uniform_at
from .base import BlockOutcome, Model

UNKNOWN = 2

PHASE_I, PHASE_II, PHASE_III = 1, 2, 3


class SinkFreeModel(Model):
    name = "sinkfree"

    def __init__(self, graph: Graph):
        if graph.edge_count < 1:
            raise ValueError("sink-free orientation needs at least one edge")
        low = [v for v in range(graph.node_count) if graph.degree(v) < 2]
        if low:
            raise ValueError(
                f"nodes {low} have degree < 2; prune leaves (their edge is forced "
                "outward) and isolated nodes before sampling"
            )
        if not graph.is_connected():
            raise ValueError(
                "graph is disconnected; sample each connected component separately"
            )
        self.graph = graph
        self.m = graph.edge_count

    def default_t0(self) -> int:
        return self.m * self.m

    # state ------------------------------------------------------------

    def _tail(self, eid: int, d: int) -> int:
        return self.graph.edges[eid][d]

    def _has_other_out(self, x: list[int], node: int, skip_edge: int) -> bool:
        edges = self.graph.edges
        for eid in self.graph.incident[node]:
            if eid != skip_edge and edges[eid][x[eid]] == node:
                return True
        return False

    def forward_step(self, x: list[int], base: int) -> list[int]:
        e = index_at(base, 0, self.m)
        d = 0 if uniform_at(base, 1) < 0.5 else 1
        return self.move(x, e, d)

    def move(self, x: list[int], e: int, d: int) -> list[int]:
        head = self.graph.edges[e][1 - d]
        if self._has_other_out(x, head, e):
            x[e] = d
        return x

    def copy_state(self, x):
        return list(x)

    def canonical(self, x):
        return tuple(x)

    def state_jsonable(self, x):
        edges = self.graph.edges
        return [[edges[e][d], edges[e][1 - d]] for e, d in enumerate(x)]

    def is_sink_free(self, x: list[int]) -> bool:
        edges = self.graph.edges
        return all(
            any(edges[eid][x[eid]] == v for eid in self.graph.incident[v])
            for v in range(self.graph.node_count)
        )

    def base_state(self) -> list[int]:
        """Deterministic sink-free orientation: orient a cycle, then point
        every off-cycle node toward the cycle along a BFS tree."""
        g = self.graph
        parent: dict[int, int | None] = {0: None}
        visited = {0}
        stack = [(0, iter(g.adjacency[0]))]
        cyc = None
        while stack and cyc is None:
            u, it = stack[-1]
            for w in it:
                if w not in visited:
                    visited.add(w)
                    parent[w] = u
                    stack.append((w, iter(g.adjacency[w])))
                    break
                if w != parent[u]:
                    cyc = (u, w)
                    break
            else:
                stack.pop()
        assert cyc is not None  # min degree >= 2 guarantees a cycle
        u, w = cyc
        path = [u]
        while path[-1] != w:
            path.append(parent[path[-1]])
        x = [0] * self.m
        eid_of = {frozenset(edge): i for i, edge in enumerate(g.edges)}

        def orient(a, b):  # a -> b
            eid = eid_of[frozenset((a, b))]
            x[eid] = 0 if g.edges[eid][0] == a else 1

        for a, b in zip(path, path[1:]):
            orient(a, b)
        orient(w, u)
        on_cycle = set(path)
        frontier = list(on_cycle)
        seen = set(on_cycle)
        while frontier:
            nxt = []
            for b in frontier:
                for a in g.adjacency[b]:
                    if a not in seen:
                        seen.add(a)
                        orient(a, b)
                        nxt.append(a)
            frontier = nxt
        assert self.is_sink_free(x)
        return x

    def random_state(self, rng) -> list[int]:
        """A varied (not stationary) sink-free orientation."""
        x = self.base_state()
        for _ in range(10 * self.m):
            self.move(x, rng.randrange(self.m), rng.randrange(2))
        return x

    # bound ------------------------------------------------------------

    def initial_bound(self) -> list[int]:
        return [UNKNOWN] * self.m

    def bounding_step(self, y: list[int], base: int) -> list[int]:
        e = index_at(base, 0, self.m)
        d = 0 if uniform_at(base, 1) < 0.5 else 1
        return self.bound_move(y, e, d)

    def bound_move(self, y: list[int], e: int, d: int) -> list[int]:
        head = self.graph.edges[e][1 - d]
        edges = self.graph.edges
        known_out = False
        any_unknown = False
        for eid in self.graph.incident[head]:
            if eid == e:
                continue
            dd = y[eid]
            if dd == UNKNOWN:
                any_unknown = True
            elif edges[eid][dd] == head:
                known_out = True
                break
        if known_out:
            y[e] = d
        elif any_unknown:
            y[e] = UNKNOWN
        # else: every bounded state rejects the move; bound unchanged
        return y

    def bound_metric(self, y: list[int]) -> int:
        return y.count(UNKNOWN)

    def extract_unique(self, y: list[int]) -> list[int]:
        if UNKNOWN in y:
            raise NotCoalescedError("some edges still unknown")
        return list(y)

    # three-phase protocol ----------------------------------------------

    def _split_bounds(self, e: int, d: int) -> tuple[list[int], list[int]]:
        """Class bounds right after a Phase I step proposing direction d on e."""
        y1 = [UNKNOWN] * self.m
        y1[e] = d
        y2 = [UNKNOWN] * self.m
        y2[e] = 1 - d
        head = self.graph.edges[e][1 - d]
        for eid in self.graph.incident[head]:
            if eid != e:
                # known to enter head
                y2[eid] = 0 if self.graph.edges[eid][1] == head else 1
        return y1, y2

    def _phase_run(
        self,
        root_seed: int,
        block_id: int,
        length: int | None = None,
        t_cap: int | None = None,
        passengers=None,
        record_trajectory: bool = False,
        record_schedule: bool = False,
    ) -> dict:
        """Drive the phase machine; the one code path shared by detection,
        replay and coupling-time runs (the schedule is recomputed from the
        keyed draws every time, never cached)."""
        m = self.m
        passengers = [list(p) for p in passengers] if passengers else []
        classes = [0] * len(passengers)
        phase = PHASE_I
        y1 = y2 = None
        x1 = x2 = merged = None
        restarts = -1  # the opening Phase I is not a restart
        coupled_at = None
        trajectory = [] if record_trajectory else None
        schedule = [] if record_schedule else None
        s = 0
        while True:
            if length is not None and s >= length:
                break
            if t_cap is not None and (s >= t_cap or merged is not None):
                break
            if phase == PHASE_I:
                base = stream_base(root_seed, block_id, 0, s)
                e = index_at(base, 0, m)
                d = 0 if uniform_at(base, 1) < 0.5 else 1
                for p in passengers:
                    self.move(p, e, d)
                classes = [1 if p[e] == d else 2 for p in passengers]
                y1, y2 = self._split_bounds(e, d)
                x1 = x2 = merged = None
                restarts += 1
                if schedule is not None:
                    schedule.append((PHASE_I, e, d, tuple(classes)))
                phase = PHASE_II
                w = y1.count(UNKNOWN) + y2.count(UNKNOWN)
            elif phase == PHASE_II:
                self.bounding_step(y1, stream_base(root_seed, block_id, 1, s))
                self.bounding_step(y2, stream_base(root_seed, block_id, 2, s))
                for i, p in enumerate(passengers):
                    self.forward_step(p, stream_base(root_seed, block_id, classes[i], s))
                if schedule is not None:
                    schedule.append((PHASE_II,))
                u1 = y1.count(UNKNOWN)
                u2 = y2.count(UNKNOWN)
                if u1 == m or u2 == m:
                    phase = PHASE_I
                    w = u1 + u2
                elif u1 == 0 and u2 == 0:
                    x1 = list(y1)
                    x2 = list(y2)
                    phase = PHASE_III
                    w = sum(1 for a, b in zip(x1, x2) if a != b)
                    if w == 0:
                        merged = list(x1)
                        coupled_at = s
                else:
                    w = u1 + u2
            else:  # PHASE_III
                base = stream_base(root_seed, block_id, 0, s)
                if merged is None:
                    self.forward_step(x1, base)
                    self.forward_step(x2, base)
                    if x1 == x2:
                        merged = list(x1)
                        coupled_at = s
                else:
                    self.forward_step(merged, base)
                for p in passengers:
                    self.forward_step(p, base)
                if schedule is not None:
                    schedule.append((PHASE_III,))
                w = 0 if merged is not None else sum(
                    1 for a, b in zip(x1, x2) if a != b
                )
            if trajectory is not None:
                trajectory.append((s + 1, w))
            s += 1
        return {
            "coupled_at": coupled_at,
            "value": merged,
            "restarts": restarts,
            "final_metric": w if s > 0 else 2 * m,
            "steps": s,
            "passengers": passengers,
            "trajectory": trajectory,
            "schedule": schedule,
        }

    # block hooks --------------------------------------------------------

    def run_block_detection(self, root_seed: int, block_id: int, length: int) -> BlockOutcome:
        info = self._phase_run(root_seed, block_id, length=length)
        if info["value"] is None:
            return BlockOutcome(
                False, None, info["final_metric"], length, restarts=info["restarts"]
            )
        return BlockOutcome(True, info["value"], 0, length, restarts=info["restarts"])

    def replay_block(self, state, root_seed: int, block_id: int, length: int):
        info = self._phase_run(root_seed, block_id, length=length, passengers=[state])
        return info["passengers"][0]

    def couple_run(self, root_seed: int, t_cap: int, record: bool = False):
        info = self._phase_run(
            root_seed, 0, t_cap=t_cap, record_trajectory=record
        )
        tau = None if info["coupled_at"] is None else info["coupled_at"] + 1
        return tau, info["restarts"], info["trajectory"]
