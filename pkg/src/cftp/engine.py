"""Coupling-from-the-past driver and coupling-time experiments.

`cftp_sample` examines randomness blocks reaching further into the past:
block L has length t0 * 2**L and its own key namespace, so its draws never
change once examined.  If block L's map is certified constant, that value
is pushed forward through blocks L-1, ..., 0 with the identical draws; the
composed map over all examined blocks is then constant as well, and its
value is distributed exactly according to the chain's stationary law.  Per-
level doubling keeps the recursion depth logarithmic when t0 is guessed too
small; correctness never depends on t0.

The forward experiments run the bounding chain from the full bound and
report the detection time tau.  The fraction of independent runs not yet
coalesced by time t is a provable upper-bound estimate for the total
variation distance of the underlying chain after t steps, which is what
`mixing_bound_curve` tabulates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log

from .models.base import BlockOutcome, Model
from .models.coloring import ColoringModel
from .models.hardcore import HardcoreModel
from .models.potts import PottsModel


@dataclass(frozen=True)
class BlockPlan:
    level: int
    length: int
    block_id: int


@dataclass
class SampleResult:
    state: object
    levels_used: int
    total_steps: int
    root_seed: int


@dataclass
class CoupleTimeResult:
    tau: int | None
    coalesced: bool
    restarts: int = 0
    trajectory: list[tuple[int, int]] | None = None


class MaxLevelsExceededError(RuntimeError):
    """CFTP gave up before certifying a constant map.

    Carries the per-level outcomes so slow coalescence can be told apart
    from a bounding chain that keeps falling back to the all-unknown state
    (visible as a high restart count for the sink-free model).
    """

    def __init__(self, root_seed: int, levels: list[tuple[BlockPlan, BlockOutcome]]):
        self.root_seed = root_seed
        self.levels = levels
        lines = [
            f"no constant block map within {len(levels)} levels (root_seed={root_seed})"
        ]
        for plan, out in levels:
            extra = f", restarts={out.restarts}" if out.restarts else ""
            lines.append(
                f"  level {plan.level}: length {plan.length}, "
                f"final W={out.final_metric}{extra}"
            )
        super().__init__("\n".join(lines))


def cftp_sample(
    model: Model,
    root_seed: int,
    t0: int | None = None,
    max_levels: int = 40,
) -> SampleResult:
    """One exact draw from the model's stationary distribution."""
    if t0 is None:
        t0 = model.default_t0()
    if t0 < 1:
        raise ValueError("t0 must be >= 1")
    if max_levels < 1:
        raise ValueError("max_levels must be >= 1")
    outcomes: list[tuple[BlockPlan, BlockOutcome]] = []
    total_steps = 0
    for level in range(max_levels):
        plan = BlockPlan(level=level, length=t0 << level, block_id=level)
        out = model.run_block_detection(root_seed, plan.block_id, plan.length)
        outcomes.append((plan, out))
        total_steps += plan.length
        if out.constant:
            value = out.value
            for lower in range(level - 1, -1, -1):
                length = t0 << lower
                value = model.replay_block(value, root_seed, lower, length)
                total_steps += length
            return SampleResult(
                state=value,
                levels_used=level + 1,
                total_steps=total_steps,
                root_seed=root_seed,
            )
    raise MaxLevelsExceededError(root_seed, outcomes)


def forward_couple_time(
    model: Model,
    root_seed: int,
    t_cap: int,
    record_trajectory: bool = False,
) -> CoupleTimeResult:
    """Run the bounding chain forward until it certifies coalescence."""
    if t_cap < 1:
        raise ValueError("t_cap must be >= 1")
    tau, restarts, trajectory = model.couple_run(root_seed, t_cap, record_trajectory)
    return CoupleTimeResult(
        tau=tau, coalesced=tau is not None, restarts=restarts, trajectory=trajectory
    )


def curve_from_taus(taus: list[int | None], t_max: int) -> list[tuple[int, float]]:
    """Fraction of runs not yet coalesced at each t, from detection times."""
    reps = len(taus)
    finite = [t for t in taus if t is not None]
    top = t_max if len(finite) < reps else min(t_max, max(finite))
    curve = []
    for t in range(top + 1):
        not_done = sum(1 for tau in taus if tau is None or tau > t)
        curve.append((t, not_done / reps))
    return curve


def mixing_bound_curve(
    model: Model,
    reps: int,
    t_max: int,
    root_seed: int,
) -> list[tuple[int, float]]:
    """Empirical upper-bound curve for distance to stationarity.

    Row (t, f): fraction f of `reps` independent forward runs (seeds
    root_seed, root_seed + 1, ...) whose bounding chain had not coalesced
    after t steps.  Non-increasing in t by construction.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    taus = [
        forward_couple_time(model, root_seed + i, t_max).tau for i in range(reps)
    ]
    return curve_from_taus(taus, t_max)


def theoretical_beta(model: Model) -> float | None:
    """Published contraction rate for the model's bounding chain, or None
    when no analyzed regime applies.

    Hard-core (swap probability 1/4, fugacity f < 2/(D-2) or D <= 2, with D
    the maximum degree): D*f / (2*(f+1)), a contraction per sweep of n
    steps.  Colorings (k >= D*(D+2)) and the antiferromagnetic model's
    three regimes give per-step rates:

      k >= D*(D+2), any T:   1 - (1 - (D+1)*D/(k-D+1)) / n
      D < k < D*(D+2), T with (D+1)*D*(1-1/g) < k-D-1, g = exp(2/T):
                             1 - (1 - (D+1)*D*(1-1/g)/(k-D-1)) / n
      k <= D, g < D*k/(D*k-1):
                             1 - (1 - D*k*(1-1/g)) / n
    """
    if isinstance(model, HardcoreModel):
        d = model.graph.max_degree
        lam = model.fugacity
        if d <= 2 or lam < 2.0 / (d - 2):
            return d * lam / (2.0 * (lam + 1.0))
        return None
    if isinstance(model, ColoringModel):
        d = model.graph.max_degree
        n = model.graph.node_count
        k = model.k
        if k >= d * (d + 2):
            return 1.0 - (1.0 - (d + 1) * d / (k - d + 1)) / n
        return None
    if isinstance(model, PottsModel):
        d = model.graph.max_degree
        n = model.graph.node_count
        k = model.k
        g_inv = 1.0 / model.gamma
        if k >= d * (d + 2):
            return 1.0 - (1.0 - (d + 1) * d / (k - d + 1)) / n
        if d < k and k > d + 1 and (d + 1) * d * (1.0 - g_inv) < k - d - 1:
            return 1.0 - (1.0 - (d + 1) * d * (1.0 - g_inv) / (k - d - 1)) / n
        if k <= d and d * k > 1 and model.gamma < d * k / (d * k - 1.0):
            return 1.0 - (1.0 - d * k * (1.0 - g_inv)) / n
        return None
    return None


def contraction_time(n: int, beta: float, theta: int) -> int:
    """ceil(ln n / ln(1/beta)) + theta steps, for 0 < beta < 1."""
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")
    return (ceil(log(n) / log(1.0 / beta)) if n > 1 else 0) + theta


# re-exported for callers that only import the engine
__all__ = [
    "BlockPlan",
    "CoupleTimeResult",
    "MaxLevelsExceededError",
    "SampleResult",
    "cftp_sample",
    "contraction_time",
    "curve_from_taus",
    "forward_couple_time",
    "mixing_bound_curve",
    "theoretical_beta",
]
