"""Shared model contract: a forward step and a bounding step on one stream.

Each model pairs a forward step (one transition of the underlying chain)
with a bounding step (one transition of the set-valued chain) that read the
same keyed draws.  Stepping any bounded state and the bound with the same
stream base keeps the state inside the bound; once the bound holds exactly
one state, the composed map over the block is constant.

Block detection, block replay and forward coupling-time runs are generic
over that contract; the sink-free model overrides them with its three-phase
protocol.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..rng import step_base, stream_prefix


@dataclass
class BlockOutcome:
    """Result of running block detection over one randomness block."""

    constant: bool
    value: object
    final_metric: int
    steps: int
    restarts: int = 0


class Model:
    name: str = "?"

    # Subclasses implement: forward_step(state, base), bounding_step(bound, base),
    # initial_bound(), bound_metric(bound), extract_unique(bound),
    # copy_state(state), canonical(state), state_jsonable(state), default_t0().

    def run_block_detection(self, root_seed: int, block_id: int, length: int) -> BlockOutcome:
        """Step the bounding chain from the full bound through the block.

        Once the bound coalesces, the remaining steps advance the unique
        state with the forward step, which consumes the same keyed stream
        and is transition-for-transition identical to stepping a coalesced
        bound.  The final state is the constant value of the block map.
        """
        bound = self.initial_bound()
        state = None
        prefix = stream_prefix(root_seed, block_id, 0)
        for s in range(length):
            base = step_base(prefix, s)
            if state is None:
                self.bounding_step(bound, base)
                if self.bound_metric(bound) == 0:
                    state = self.extract_unique(bound)
            else:
                state = self.forward_step(state, base)
        if state is None:
            return BlockOutcome(False, None, self.bound_metric(bound), length)
        return BlockOutcome(True, state, 0, length)

    def replay_block(self, state, root_seed: int, block_id: int, length: int):
        """Push a state forward through the block's recorded randomness."""
        state = self.copy_state(state)
        prefix = stream_prefix(root_seed, block_id, 0)
        forward = self.forward_step
        for s in range(length):
            state = forward(state, step_base(prefix, s))
        return state

    def couple_run(self, root_seed: int, t_cap: int, record: bool = False):
        """Run the bounding chain forward from the full bound.

        Returns (tau, restarts, trajectory): tau is the first t >= 1 with
        metric zero after t steps, or None if t_cap is hit first.
        """
        bound = self.initial_bound()
        trajectory: list[tuple[int, int]] | None = [] if record else None
        prefix = stream_prefix(root_seed, 0, 0)
        for t in range(1, t_cap + 1):
            self.bounding_step(bound, step_base(prefix, t - 1))
            w = self.bound_metric(bound)
            if record:
                trajectory.append((t, w))
            if w == 0:
                return t, 0, trajectory
        return None, 0, trajectory
