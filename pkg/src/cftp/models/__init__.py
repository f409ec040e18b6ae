"""Model construction and the shared stepper contract."""

from __future__ import annotations

from ..graphs import Graph
from .base import BlockOutcome, Model
from .coloring import ColoringModel
from .hardcore import HardcoreModel
from .permutation import PermutationModel
from .potts import PottsModel
from .sinkfree import SinkFreeModel

MODEL_NAMES = ("perm", "hardcore", "coloring", "potts", "sinkfree")


def build_model(
    name: str,
    *,
    graph: Graph | None = None,
    n: int | None = None,
    k: int | None = None,
    fugacity: float | None = None,
    p_swap: float = 0.25,
    temperature: float | None = None,
) -> Model:
    if name == "perm":
        if n is None:
            raise ValueError("perm needs n")
        return PermutationModel(n)
    if graph is None:
        raise ValueError(f"{name} needs a graph")
    if name == "hardcore":
        if fugacity is None:
            raise ValueError("hardcore needs fugacity")
        return HardcoreModel(graph, fugacity, p_swap)
    if name == "coloring":
        if k is None:
            raise ValueError("coloring needs k")
        return ColoringModel(graph, k)
    if name == "potts":
        if k is None or temperature is None:
            raise ValueError("potts needs k and temperature")
        return PottsModel(graph, k, temperature)
    if name == "sinkfree":
        return SinkFreeModel(graph)
    raise ValueError(f"unknown model {name!r}; expected one of {MODEL_NAMES}")


__all__ = [
    "BlockOutcome",
    "ColoringModel",
    "HardcoreModel",
    "MODEL_NAMES",
    "Model",
    "PermutationModel",
    "PottsModel",
    "SinkFreeModel",
    "build_model",
]
