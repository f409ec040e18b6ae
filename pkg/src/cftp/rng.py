"""Keyed, counter-based randomness.

Every random draw in this package is addressed by a five-part key
(root_seed, block_id, branch_id, step_index, draw_index) and computed as a
pure function of that key.  Coupling from the past has to replay the draws
of earlier time blocks bit-exactly, and single steps of the rejection-loop
samplers consume a variable number of draws, so a stateful generator would
force fragile stream-position bookkeeping.  Key-addressed draws make replay
trivial: evaluating the same key twice always gives the same value, and
skipping keys costs nothing.

The mixer is the splitmix64 finalizer chained over the key fields.  It uses
only 64-bit integer arithmetic, so sequences are identical across platforms
and Python builds.

Layout for hot loops: `stream_prefix` folds (root_seed, block_id,
branch_id) once per block, `step_base` adds the step index with a single
mix, and `uniform_at` / `index_at` combine the result with the draw index.
`draw_uniform(DrawKey(...))` is defined by composing these, so the two
entry points agree by construction.  The mixing arithmetic is written out
inline here because these functions account for most of the sampler's
runtime.
"""

from __future__ import annotations

from dataclasses import dataclass

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_SALT = 0x243F6A8885A308D3
_TWO_NEG53 = 1.1102230246251565e-16  # 2**-53


@dataclass(frozen=True)
class DrawKey:
    """Address of a single uniform draw.

    branch_id 0 is the shared stream; nonzero branches carry independent
    randomness for the two bounding processes of the sink-free protocol.
    """

    root_seed: int
    block_id: int
    branch_id: int
    step_index: int
    draw_index: int


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def stream_prefix(root_seed: int, block_id: int, branch_id: int) -> int:
    """Fold the per-block part of the key into one 64-bit value."""
    z = (root_seed & MASK64) ^ _SALT
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    z = (z ^ (z >> 31)) ^ (block_id * _GOLDEN & MASK64)
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    z = (z ^ (z >> 31)) ^ (branch_id * _GOLDEN & MASK64)
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def step_base(prefix: int, step_index: int) -> int:
    """Per-step stream base from a block prefix."""
    z = (prefix + step_index * _GOLDEN) & MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def stream_base(root_seed: int, block_id: int, branch_id: int, step_index: int) -> int:
    """Fold (root_seed, block_id, branch_id, step_index) into one value."""
    return step_base(stream_prefix(root_seed, block_id, branch_id), step_index)


def uniform_at(base: int, draw_index: int) -> float:
    """Uniform value in [0, 1) with 53 random bits."""
    z = (base + draw_index * _GOLDEN) & MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return ((z ^ (z >> 31)) >> 11) * _TWO_NEG53


def index_at(base: int, draw_index: int, bound: int) -> int:
    """Uniform integer in [0, bound), exactly (rejection, no modulo bias)."""
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    z = (base + draw_index * _GOLDEN) & MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    z ^= z >> 31
    if bound & (bound - 1) == 0:
        return z & (bound - 1)
    limit = (MASK64 + 1) - (MASK64 + 1) % bound
    while z >= limit:
        # Deterministic re-roll inside the same keyed draw; the mixer is a
        # bijection, so this walks a fixed pseudorandom orbit of the key.
        z = _mix64(z)
    return z % bound


def draw_uniform(key: DrawKey) -> float:
    """Uniform in [0, 1), a pure function of the key."""
    return uniform_at(
        stream_base(key.root_seed, key.block_id, key.branch_id, key.step_index),
        key.draw_index,
    )


def draw_index(key: DrawKey, bound: int) -> int:
    """Uniform integer in [0, bound), a pure function of the key."""
    return index_at(
        stream_base(key.root_seed, key.block_id, key.branch_id, key.step_index),
        key.draw_index,
        bound,
    )
