"""The two bounding-state forms and their coalescence metric.

Form 1 keeps a non-empty set of possible colors per dimension; it bounds a
state x when x(v) is in the set for every dimension v.  Form 2 keeps a pair
of disjoint node sets (known_in, uncertain) for a single occupied color; it
bounds an occupied set A when known_in <= A <= known_in | uncertain.

The metric W counts non-singleton dimensions (Form 1) or |uncertain|
(Form 2); W == 0 exactly when the bound pins down one state, at which point
`extract_unique` recovers it.
"""

from __future__ import annotations


class NotCoalescedError(ValueError):
    pass


class Form1Bound:
    """Per-dimension candidate color sets."""

    __slots__ = ("sets",)

    def __init__(self, sets):
        self.sets = [set(s) for s in sets]
        if any(not s for s in self.sets):
            raise ValueError("every candidate set must be non-empty")

    @classmethod
    def full(cls, dimensions: int, colors: int) -> "Form1Bound":
        return cls([range(colors)] * dimensions)

    def copy(self) -> "Form1Bound":
        out = object.__new__(Form1Bound)
        out.sets = [set(s) for s in self.sets]
        return out

    def __eq__(self, other):
        return isinstance(other, Form1Bound) and self.sets == other.sets

    def __repr__(self):
        return f"Form1Bound({self.sets!r})"


class Form2Bound:
    """Known-occupied / possibly-occupied node sets for one color."""

    __slots__ = ("known_in", "uncertain")

    def __init__(self, known_in, uncertain):
        self.known_in = set(known_in)
        self.uncertain = set(uncertain)
        if self.known_in & self.uncertain:
            raise ValueError("known_in and uncertain must be disjoint")

    def copy(self) -> "Form2Bound":
        out = object.__new__(Form2Bound)
        out.known_in = set(self.known_in)
        out.uncertain = set(self.uncertain)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Form2Bound)
            and self.known_in == other.known_in
            and self.uncertain == other.uncertain
        )

    def __repr__(self):
        return f"Form2Bound(known_in={self.known_in!r}, uncertain={self.uncertain!r})"


def metric(bound: Form1Bound | Form2Bound) -> int:
    """Coalescence progress W; zero exactly when one state remains."""
    if isinstance(bound, Form1Bound):
        return sum(1 for s in bound.sets if len(s) > 1)
    if isinstance(bound, Form2Bound):
        return len(bound.uncertain)
    raise TypeError(f"unsupported bound type {type(bound).__name__}")


def extract_unique(bound: Form1Bound | Form2Bound):
    """The single bounded state; raises NotCoalescedError when W > 0."""
    if isinstance(bound, Form1Bound):
        if any(len(s) != 1 for s in bound.sets):
            raise NotCoalescedError("bound still holds more than one state")
        return tuple(next(iter(s)) for s in bound.sets)
    if isinstance(bound, Form2Bound):
        if bound.uncertain:
            raise NotCoalescedError("bound still holds more than one state")
        return set(bound.known_in)
    raise TypeError(f"unsupported bound type {type(bound).__name__}")
