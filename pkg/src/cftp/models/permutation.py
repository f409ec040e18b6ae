"""Random-transposition chain on permutations.

States map positions to items, both 0-based.  A step draws an item i and a
position j (draw indices 0 and 1) and moves item i to position j, swapping
it with whatever was there: with p the current position of i, the new state
has x'(p) = x(j) and x'(j) = i.  This walks to each of the n(n-1)/2
two-position neighbors with probability 2/n^2 and holds with probability
1/n.

The bound stores, per position, either a known item or an "anything"
marker (None); unknown positions are never narrowed below the full item
set, which keeps updates O(1).  Drawing (i, j) with i known at position p
moves the entry at j to p and pins item i at j; with i unknown, position j
is pinned to i and a previously known item at j loses its position.  The
unknown-position count drops by one exactly when both i and j are unknown.
"""

from __future__ import annotations

from math import ceil

from ..bounds import NotCoalescedError
from ..rng import index_at
from .base import Model


class PermutationBound:
    """Per-position entry: a known item, or None meaning any item."""

    __slots__ = ("known", "rev")

    def __init__(self, known):
        self.known = list(known)
        self.rev = {item: pos for pos, item in enumerate(self.known) if item is not None}
        if len(self.rev) != sum(1 for k in self.known if k is not None):
            raise ValueError("two positions known to hold the same item")

    def copy(self) -> "PermutationBound":
        out = object.__new__(PermutationBound)
        out.known = list(self.known)
        out.rev = dict(self.rev)
        return out

    def metric(self) -> int:
        return self.known.count(None)

    def __eq__(self, other):
        return isinstance(other, PermutationBound) and self.known == other.known

    def __repr__(self):
        return f"PermutationBound({self.known!r})"


class PermutationModel(Model):
    name = "perm"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n

    def default_t0(self) -> int:
        return ceil(2 * self.n * self.n)

    # state ------------------------------------------------------------

    def identity_state(self) -> list[int]:
        return list(range(self.n))

    def forward_step(self, x: list[int], base: int) -> list[int]:
        i = index_at(base, 0, self.n)
        j = index_at(base, 1, self.n)
        return self.move(x, i, j)

    @staticmethod
    def move(x: list[int], i: int, j: int) -> list[int]:
        p = x.index(i)
        x[p] = x[j]
        x[j] = i
        return x

    def copy_state(self, x):
        return list(x)

    def canonical(self, x):
        return tuple(x)

    def state_jsonable(self, x):
        return list(x)

    # bound ------------------------------------------------------------

    def initial_bound(self) -> PermutationBound:
        if self.n == 1:
            return PermutationBound([0])  # the full item set is already a singleton
        return PermutationBound([None] * self.n)

    def bounding_step(self, bound: PermutationBound, base: int) -> PermutationBound:
        i = index_at(base, 0, self.n)
        j = index_at(base, 1, self.n)
        return self.bound_move(bound, i, j)

    @staticmethod
    def bound_move(bound: PermutationBound, i: int, j: int) -> PermutationBound:
        known, rev = bound.known, bound.rev
        i_pos = rev.get(i)
        if i_pos is not None:
            if i_pos != j:
                displaced = known[j]
                known[i_pos] = displaced
                if displaced is not None:
                    rev[displaced] = i_pos
                known[j] = i
                rev[i] = j
            # i already at j: the step fixes every bounded state
        else:
            displaced = known[j]
            if displaced is not None:
                del rev[displaced]  # item at j lands on some unknown position
            known[j] = i
            rev[i] = j
        return bound

    def bound_metric(self, bound: PermutationBound) -> int:
        return bound.metric()

    def extract_unique(self, bound: PermutationBound) -> list[int]:
        if None in bound.known:
            raise NotCoalescedError("some positions still unknown")
        return list(bound.known)
