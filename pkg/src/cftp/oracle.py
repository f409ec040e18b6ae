"""Brute-force ground truth for desk-scale instances.

Enumerates whole state spaces, computes the exact target distribution from
the model's unnormalized weights, and provides goodness-of-fit machinery
(total variation distance and a chi-square test at significance 0.001,
with the chi-square quantile computed locally, no tables).

States are keyed by the same canonical forms the samplers and the CLI use:
permutations and colorings as tuples in node order, occupied sets as sorted
tuples, orientations as direction tuples in edge order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import exp, factorial, lgamma, log

from .models import (
    ColoringModel,
    HardcoreModel,
    Model,
    PermutationModel,
    PottsModel,
    SinkFreeModel,
)

STATE_SPACE_LIMIT = 10**7
SIGNIFICANCE = 0.001


class StateSpaceTooLargeError(ValueError):
    pass


class ImpossibleStateError(ValueError):
    """A sample fell outside the target support: a sampler bug, never noise."""


@dataclass
class ExactDistribution:
    states: tuple
    probabilities: tuple
    partition_value: float

    def __post_init__(self):
        assert abs(sum(self.probabilities) - 1.0) < 1e-12
        self.index = {s: i for i, s in enumerate(self.states)}

    def prob(self, state) -> float:
        return self.probabilities[self.index[state]]


@dataclass
class GoodnessReport:
    tv_distance: float
    chi_square_statistic: float
    dof: int
    threshold: float
    passed: bool


def _guard(size: int):
    if size > STATE_SPACE_LIMIT:
        raise StateSpaceTooLargeError(
            f"state space has {size} states, above the {STATE_SPACE_LIMIT} guard"
        )


def enumerate_states(model: Model) -> list:
    """All valid states in canonical order."""
    if isinstance(model, PermutationModel):
        _guard(factorial(model.n))
        return sorted(itertools.permutations(range(model.n)))
    if isinstance(model, HardcoreModel):
        g = model.graph
        _guard(2 ** g.node_count)
        states = []
        for bits in itertools.product((0, 1), repeat=g.node_count):
            occ = tuple(v for v in range(g.node_count) if bits[v])
            if all(not (bits[u] and bits[v]) for u, v in g.edges):
                states.append(occ)
        return sorted(states)
    if isinstance(model, ColoringModel):
        g = model.graph
        _guard(model.k ** g.node_count)
        return sorted(
            x
            for x in itertools.product(range(model.k), repeat=g.node_count)
            if all(x[u] != x[v] for u, v in g.edges)
        )
    if isinstance(model, PottsModel):
        g = model.graph
        _guard(model.k ** g.node_count)
        return sorted(itertools.product(range(model.k), repeat=g.node_count))
    if isinstance(model, SinkFreeModel):
        g = model.graph
        _guard(2 ** g.edge_count)
        return sorted(
            x
            for x in itertools.product((0, 1), repeat=g.edge_count)
            if model.is_sink_free(list(x))
        )
    raise ValueError(f"no enumerator for model {model.name!r}")


def _weight(model: Model, state) -> float:
    if isinstance(model, HardcoreModel):
        return model.fugacity ** len(state)
    if isinstance(model, PottsModel):
        mono = sum(1 for u, v in model.graph.edges if state[u] == state[v])
        return model.gamma ** (-mono)
    return 1.0  # permutations, proper colorings, sink-free orientations


def exact_distribution(model: Model) -> ExactDistribution:
    states = tuple(enumerate_states(model))
    weights = [_weight(model, s) for s in states]
    z = sum(weights)
    return ExactDistribution(
        states=states,
        probabilities=tuple(w / z for w in weights),
        partition_value=z,
    )


def tv_distance(counts, exact: ExactDistribution) -> float:
    """(1/2) sum over states of |empirical frequency - exact probability|."""
    total = sum(counts.values())
    if total == 0:
        raise ValueError("empty sample")
    for state in counts:
        if state not in exact.index:
            raise ImpossibleStateError(f"sampled state {state!r} has probability zero")
    return 0.5 * sum(
        abs(counts.get(s, 0) / total - p)
        for s, p in zip(exact.states, exact.probabilities)
    )


def chi_square(counts, exact: ExactDistribution, significance: float = SIGNIFICANCE) -> GoodnessReport:
    """Goodness-of-fit report; cells with expected count < 5 are pooled."""
    tv = tv_distance(counts, exact)  # also rejects impossible states
    total = sum(counts.values())
    cells = sorted(
        ((p * total, counts.get(s, 0)) for s, p in zip(exact.states, exact.probabilities)),
        key=lambda cell: cell[0],
    )
    pooled: list[tuple[float, int]] = []
    acc_e, acc_o = 0.0, 0
    for e, o in cells:
        acc_e += e
        acc_o += o
        if acc_e >= 5.0:
            pooled.append((acc_e, acc_o))
            acc_e, acc_o = 0.0, 0
    if acc_e > 0:
        if pooled:
            e, o = pooled[-1]
            pooled[-1] = (e + acc_e, o + acc_o)
        else:
            pooled.append((acc_e, acc_o))
    if len(pooled) < 2:
        raise ValueError("fewer than two cells after pooling; sample too small")
    stat = sum((o - e) ** 2 / e for e, o in pooled)
    dof = len(pooled) - 1
    threshold = chi_square_quantile(1.0 - significance, dof)
    return GoodnessReport(
        tv_distance=tv,
        chi_square_statistic=stat,
        dof=dof,
        threshold=threshold,
        passed=stat <= threshold,
    )


def analytic_kernel(model: Model, state) -> ExactDistribution:
    """Exact one-step transition row at `state` (canonical successor keys)."""
    if isinstance(model, PermutationModel):
        n = model.n
        x = list(state)
        probs: dict[tuple, float] = {tuple(x): 1.0 / n}
        for p in range(n):
            for q in range(p + 1, n):
                y = list(x)
                y[p], y[q] = y[q], y[p]
                probs[tuple(y)] = probs.get(tuple(y), 0.0) + 2.0 / (n * n)
        states = tuple(sorted(probs))
        return ExactDistribution(
            states=states,
            probabilities=tuple(probs[s] for s in states),
            partition_value=1.0,
        )
    if isinstance(model, ColoringModel):
        g = model.graph
        n = g.node_count
        x = list(state)
        probs = {}
        hold = 0.0
        for v in range(n):
            blocked = {x[w] for w in g.adjacency[v]}
            allowed = [c for c in range(model.k) if c not in blocked]
            for c in allowed:
                if c == x[v]:
                    hold += 1.0 / (n * len(allowed))
                else:
                    y = list(x)
                    y[v] = c
                    key = tuple(y)
                    probs[key] = probs.get(key, 0.0) + 1.0 / (n * len(allowed))
        probs[tuple(x)] = probs.get(tuple(x), 0.0) + hold
        states = tuple(sorted(probs))
        return ExactDistribution(
            states=states,
            probabilities=tuple(probs[s] for s in states),
            partition_value=1.0,
        )
    raise ValueError(f"no analytic kernel for model {model.name!r}")


# chi-square quantile, via the regularized lower incomplete gamma ---------


def _gammp(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if x < 0 or a <= 0:
        raise ValueError("invalid incomplete gamma arguments")
    if x == 0:
        return 0.0
    if x < a + 1.0:
        # series expansion
        term = 1.0 / a
        total = term
        denom = a
        for _ in range(1000):
            denom += 1.0
            term *= x / denom
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
        return total * exp(-x + a * log(x) - lgamma(a))
    # continued fraction for Q(a, x), modified Lentz
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    q = exp(-x + a * log(x) - lgamma(a)) * h
    return 1.0 - q


def chi_square_cdf(x: float, dof: int) -> float:
    if x <= 0:
        return 0.0
    return _gammp(dof / 2.0, x / 2.0)


def chi_square_quantile(p: float, dof: int) -> float:
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    hi = float(max(dof, 1))
    while chi_square_cdf(hi, dof) < p:
        hi *= 2.0
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi_square_cdf(mid, dof) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-10 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)
