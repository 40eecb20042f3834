"""Expression trees over named generators with +, scalar·, ∧, ∨ and (·)⁺."""

from __future__ import annotations
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Hashable, Mapping, Sequence

import numpy as np

from ..errors import ArgumentError, UnknownGeneratorError


class LatticeExpr(ABC):
    """
    Abstract base for lattice expressions.

    Leaves are :class:`Generator` nodes naming an element; evaluation needs a
    mapping from generator names to elements that support ``+``, scalar
    ``*``, ``meet``, ``join`` and ``pos_part`` (``Payoff`` and
    ``DoubleArray`` both do).

    Examples
    --------
    >>> u, v = Generator("u"), Generator("v")
    >>> expr = (v - 0.5 * u).pos() & u
    >>> sorted(expr.generators())
    ['u', 'v']
    """

    @abstractmethod
    def evaluate(self, assignment: Mapping[Hashable, Any]) -> Any:
        """Evaluate against concrete elements."""

    @abstractmethod
    def generators(self) -> frozenset:
        """Names of the generators used by the expression."""

    @property
    @abstractmethod
    def depth(self) -> int:
        """Height of the tree (0 for a generator)."""

    def __add__(self, other: LatticeExpr) -> LatticeExpr:
        return Sum(self, other)

    def __sub__(self, other: LatticeExpr) -> LatticeExpr:
        return Sum(self, Scale(-1, other))

    def __neg__(self) -> LatticeExpr:
        return Scale(-1, self)

    def __mul__(self, factor: Any) -> LatticeExpr:
        if isinstance(factor, LatticeExpr):
            return NotImplemented
        return Scale(factor, self)

    __rmul__ = __mul__

    def __and__(self, other: LatticeExpr) -> LatticeExpr:
        return Meet(self, other)

    def __or__(self, other: LatticeExpr) -> LatticeExpr:
        return Join(self, other)

    def pos(self) -> LatticeExpr:
        return PositivePart(self)


class Generator(LatticeExpr):
    def __init__(self, name: Hashable):
        self.name = name

    def evaluate(self, assignment: Mapping[Hashable, Any]) -> Any:
        try:
            return assignment[self.name]
        except KeyError:
            raise UnknownGeneratorError(
                f"Expression uses generator {self.name!r} with no assigned element"
            ) from None

    def generators(self) -> frozenset:
        return frozenset([self.name])

    @property
    def depth(self) -> int:
        return 0

    def __repr__(self) -> str:
        return str(self.name)


class Sum(LatticeExpr):
    def __init__(self, left: LatticeExpr, right: LatticeExpr):
        self.left = left
        self.right = right

    def evaluate(self, assignment):
        return self.left.evaluate(assignment) + self.right.evaluate(assignment)

    def generators(self) -> frozenset:
        return self.left.generators() | self.right.generators()

    @property
    def depth(self) -> int:
        return 1 + max(self.left.depth, self.right.depth)

    def __repr__(self) -> str:
        return f"({self.left!r} + {self.right!r})"


class Scale(LatticeExpr):
    def __init__(self, factor: Any, operand: LatticeExpr):
        self.factor = factor
        self.operand = operand

    def evaluate(self, assignment):
        return self.operand.evaluate(assignment) * self.factor

    def generators(self) -> frozenset:
        return self.operand.generators()

    @property
    def depth(self) -> int:
        return 1 + self.operand.depth

    def __repr__(self) -> str:
        return f"{self.factor}*{self.operand!r}"


class Meet(LatticeExpr):
    def __init__(self, left: LatticeExpr, right: LatticeExpr):
        self.left = left
        self.right = right

    def evaluate(self, assignment):
        return self.left.evaluate(assignment).meet(self.right.evaluate(assignment))

    def generators(self) -> frozenset:
        return self.left.generators() | self.right.generators()

    @property
    def depth(self) -> int:
        return 1 + max(self.left.depth, self.right.depth)

    def __repr__(self) -> str:
        return f"({self.left!r} ∧ {self.right!r})"


class Join(LatticeExpr):
    def __init__(self, left: LatticeExpr, right: LatticeExpr):
        self.left = left
        self.right = right

    def evaluate(self, assignment):
        return self.left.evaluate(assignment).join(self.right.evaluate(assignment))

    def generators(self) -> frozenset:
        return self.left.generators() | self.right.generators()

    @property
    def depth(self) -> int:
        return 1 + max(self.left.depth, self.right.depth)

    def __repr__(self) -> str:
        return f"({self.left!r} ∨ {self.right!r})"


class PositivePart(LatticeExpr):
    def __init__(self, operand: LatticeExpr):
        self.operand = operand

    def evaluate(self, assignment):
        return self.operand.evaluate(assignment).pos_part()

    def generators(self) -> frozenset:
        return self.operand.generators()

    @property
    def depth(self) -> int:
        return 1 + self.operand.depth

    def __repr__(self) -> str:
        return f"({self.operand!r})⁺"


_NODE_KINDS = ("leaf", "sum", "scale", "meet", "join", "pos")


def random_lattice_expr(
    rng: np.random.Generator,
    depth: int,
    generators: Sequence[Hashable] = ("u", "v"),
    exact: bool = False,
) -> LatticeExpr:
    """
    Random expression tree of height at most ``depth``.

    Scalars are small signed rationals (Fractions when ``exact``).

    Parameters
    ----------
    rng : np.random.Generator
        Source of randomness.
    depth : int
        Maximum tree height.
    generators : sequence, optional
        Leaf names.
    exact : bool, optional
        Draw scale factors as Fractions.

    Returns
    -------
    LatticeExpr
        The expression.
    """
    if depth < 0:
        raise ArgumentError(f"depth must be >= 0, got {depth}")
    if not generators:
        raise ArgumentError("random_lattice_expr needs at least one generator")

    kind = "leaf" if depth == 0 else _NODE_KINDS[int(rng.integers(len(_NODE_KINDS)))]
    if kind == "leaf":
        return Generator(generators[int(rng.integers(len(generators)))])
    if kind == "scale":
        num = int(rng.integers(-6, 7))
        den = int(rng.integers(1, 4))
        factor = Fraction(num, den) if exact else num / den
        return Scale(factor, random_lattice_expr(rng, depth - 1, generators, exact))
    if kind == "pos":
        return PositivePart(random_lattice_expr(rng, depth - 1, generators, exact))

    left = random_lattice_expr(rng, depth - 1, generators, exact)
    right = random_lattice_expr(rng, depth - 1, generators, exact)
    return {"sum": Sum, "meet": Meet, "join": Join}[kind](left, right)
