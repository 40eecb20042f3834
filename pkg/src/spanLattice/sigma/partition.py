"""Finite sigma-algebras represented as partitions of the state set."""

from __future__ import annotations
from typing import Hashable, Iterable, Sequence

import numpy as np

from ..errors import ArgumentError, DimensionError
from ..lattice import Payoff, StateSpace


class Partition:
    """
    Partition of ``{0, ..., n-1}`` into disjoint nonempty blocks.

    Blocks are stored canonically: each block sorted, blocks ordered by their
    smallest state, so two partitions are equal iff they have the same blocks.

    Parameters
    ----------
    space : StateSpace
        State space being partitioned.
    blocks : iterable of iterables of int
        The blocks.

    Examples
    --------
    >>> space = StateSpace.uniform(3)
    >>> Partition(space, [[2], [0, 1]]).blocks
    ((0, 1), (2,))
    """

    __slots__ = ("space", "blocks", "_labels")

    def __init__(self, space: StateSpace, blocks: Iterable[Iterable[int]]):
        canon = [tuple(sorted(int(i) for i in b)) for b in blocks]
        if any(len(b) == 0 for b in canon):
            raise ArgumentError("Partition blocks must be nonempty")
        canon.sort(key=lambda b: b[0])

        seen = [s for b in canon for s in b]
        if len(seen) != len(set(seen)):
            raise ArgumentError("Partition blocks must be pairwise disjoint")
        if sorted(seen) != list(range(space.n)):
            raise ArgumentError(
                f"Partition blocks must cover states 0..{space.n - 1} exactly"
            )

        labels = np.empty(space.n, dtype=int)
        for idx, b in enumerate(canon):
            labels[list(b)] = idx
        labels.flags.writeable = False

        self.space = space
        self.blocks: tuple[tuple[int, ...], ...] = tuple(canon)
        self._labels = labels

    @classmethod
    def from_labels(cls, space: StateSpace, labels: Sequence[Hashable]) -> Partition:
        """Group states carrying equal labels."""
        if len(labels) != space.n:
            raise DimensionError(f"Expected {space.n} labels, got {len(labels)}")
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(space, groups.values())

    @classmethod
    def discrete(cls, space: StateSpace) -> Partition:
        """Every state in its own block (the full power set)."""
        return cls(space, [[i] for i in range(space.n)])

    @classmethod
    def trivial(cls, space: StateSpace) -> Partition:
        """One block holding every state."""
        return cls(space, [range(space.n)])

    @property
    def labels(self) -> np.ndarray:
        """Block index of each state."""
        return self._labels

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, state: int) -> tuple[int, ...]:
        return self.blocks[self._labels[state]]

    def indicators(self, exact: bool = False) -> list[Payoff]:
        """Indicator payoff of each block, in block order."""
        return [Payoff.indicator(self.space, b, exact=exact) for b in self.blocks]

    def refines(self, other: Partition) -> bool:
        """Every block of ``self`` lies inside a block of ``other``."""
        self._check(other)
        return all(len({int(other.labels[i]) for i in b}) == 1 for b in self.blocks)

    def join(self, other: Partition) -> Partition:
        """Common refinement (the sigma-algebra generated by both)."""
        self._check(other)
        pairs = list(zip(self._labels.tolist(), other.labels.tolist()))
        return Partition.from_labels(self.space, pairs)

    def _check(self, other: Partition) -> None:
        if not self.space.same_as(other.space):
            raise DimensionError("Partitions live on different state spaces")

    def to_list(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.space.n == other.space.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.space.n, self.blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Partition({inner})"
