"""Exact quantities and validated instances for the pizza race game."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"(-?)(\d+)(?:/(\d+))?")


class InstanceError(ValueError):
    """Raised for malformed rationals and invalid instances."""


def parse_rational(text: str) -> Fraction:
    """Parse ``['-'] digits ['/' digits]`` into a canonical Fraction.

    >>> parse_rational("3/6")
    Fraction(1, 2)
    """
    if not isinstance(text, str):
        raise InstanceError(f"expected a rational string, got {text!r}")
    match = _RATIONAL_RE.fullmatch(text)
    if match is None:
        raise InstanceError(f"malformed rational: {text!r}")
    sign, num, den = match.groups()
    if den is not None and int(den) == 0:
        raise InstanceError(f"zero denominator: {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(value: Fraction | int) -> str:
    # Fraction.__str__ already omits "/1" and keeps the sign on the numerator.
    return str(Fraction(value))


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are rejected."""
    if isinstance(value, bool):
        raise InstanceError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InstanceError(f"not an exact rational: {value!r}")


class Player(enum.Enum):
    ALICE = "A"
    BOB = "B"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE

    @property
    def index(self) -> int:
        return 0 if self is Player.ALICE else 1


def _lcm_of_denominators(values: Iterable[Fraction]) -> int:
    scale = 1
    for v in values:
        scale = math.lcm(scale, v.denominator)
    return scale


@dataclass(frozen=True)
class CycleInstance:
    """A sliced pizza: piece sizes in cyclic order."""

    sizes: tuple[Fraction, ...]
    total: Fraction = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(as_rational(s) for s in self.sizes))
        if not self.sizes:
            raise InstanceError("a pizza needs at least one piece")
        for i, s in enumerate(self.sizes):
            if s <= 0:
                raise InstanceError(f"piece {i} has nonpositive size {s}")
        object.__setattr__(self, "total", sum(self.sizes, Fraction(0)))

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return self.sizes

    def neighbors(self, i: int) -> set[int]:
        if self.n == 1:
            return set()
        return {(i - 1) % self.n, (i + 1) % self.n}

    def edges(self) -> list[tuple[int, int]]:
        """Edge list of the underlying cycle graph (a single edge when n = 2)."""
        if self.n == 1:
            return []
        if self.n == 2:
            return [(0, 1)]
        return [(i, (i + 1) % self.n) for i in range(self.n)]

    def integer_sizes(self) -> tuple[int, tuple[int, ...]]:
        """Return ``(scale, sizes * scale)`` with every scaled size an integer."""
        scale = _lcm_of_denominators(self.sizes)
        return scale, tuple(int(s * scale) for s in self.sizes)

    def to_graph(self) -> "GraphInstance":
        return GraphInstance(self.sizes, self.edges())


def make_cycle_instance(sizes: Sequence) -> CycleInstance:
    return CycleInstance(tuple(sizes))


@dataclass(frozen=True)
class GraphInstance:
    """A weighted connected graph; a move deletes one vertex."""

    weights: tuple[Fraction, ...]
    edges: tuple[tuple[int, int], ...]
    total: Fraction = field(init=False, compare=False)
    adjacency: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        weights = tuple(as_rational(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        n = len(weights)
        if n == 0:
            raise InstanceError("a graph needs at least one vertex")
        for i, w in enumerate(weights):
            if w <= 0:
                raise InstanceError(f"vertex {i} has nonpositive weight {w}")
        seen = set()
        edges = []
        adj = [0] * n
        for edge in self.edges:
            if len(edge) != 2:
                raise InstanceError(f"edge must be a pair: {edge!r}")
            i, j = (int(v) for v in edge)
            if not (0 <= i < n and 0 <= j < n):
                raise InstanceError(f"edge {edge!r} references a missing vertex")
            if i == j:
                raise InstanceError(f"self-loop at vertex {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InstanceError(f"duplicate edge {key}")
            seen.add(key)
            edges.append((i, j))
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "adjacency", tuple(adj))
        object.__setattr__(self, "total", sum(weights, Fraction(0)))
        if not induces_connected(self.adjacency, (1 << n) - 1):
            raise InstanceError("graph is disconnected")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def sizes(self) -> tuple[Fraction, ...]:
        return self.weights

    def integer_sizes(self) -> tuple[int, tuple[int, ...]]:
        scale = _lcm_of_denominators(self.weights)
        return scale, tuple(int(w * scale) for w in self.weights)


def make_graph_instance(weights: Sequence, edges: Sequence) -> GraphInstance:
    return GraphInstance(tuple(weights), tuple(tuple(e) for e in edges))


def induces_connected(adjacency: Sequence[int], mask: int) -> bool:
    """True when the vertices in ``mask`` induce a connected subgraph (or none)."""
    if mask == 0:
        return True
    seen = mask & -mask
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = adjacency[low.bit_length() - 1] & mask & ~seen
        seen |= fresh
        frontier |= fresh
    return seen == mask


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


Instance = CycleInstance | GraphInstance
