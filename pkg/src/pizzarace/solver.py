"""Exact optimal play by memoized minimax over decision events.

Sizes are scaled to integers by the common denominator, so every delta is an
integer and memo keys hash cheaply; results are scaled back to Fractions.
Under ``TiePolicy.ERROR`` a pick that would end in a contested simultaneous
finish is not available; a decider left with no other pick raises
``TieError``.  ``Solution.generic`` records whether any two finishes could coincide at all,
including the harmless case where both players run out together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import (
    IllegalMoveError,
    RaceState,
    TieError,
    TiePolicy,
    Trace,
    is_contiguous_arc,
    open_game,
    run_with_policies,
)
from .model import CycleInstance, Player, format_rational


@dataclass
class Solution:
    alice_total: Fraction
    total: Fraction
    best_first_pieces: tuple[int, ...]
    principal_variation: Trace
    generic: bool = True

    @property
    def alice_share(self) -> Fraction:
        return self.alice_total / self.total

    def to_json(self) -> dict:
        return {
            "alice_total": format_rational(self.alice_total),
            "alice_share": format_rational(self.alice_share),
            "best_first_pieces": list(self.best_first_pieces),
            "pv": self.principal_variation.to_json(),
            "generic": self.generic,
        }


class RaceSolver:
    """Topology-independent core; subclasses supply regions and moves."""

    def __init__(self, instance, policy: TiePolicy = TiePolicy.ERROR):
        self.instance = instance
        self.policy = policy
        self.scale, self.sizes = instance.integer_sizes()
        self.contested = 0
        self.simultaneous = 0
        self._memo: dict = {}
        # Role symmetry only holds when ties never get resolved by identity.
        self._keyed = policy is not TiePolicy.ERROR

    # -- topology hooks ---------------------------------------------------
    def _moves(self, region):
        """List of ``(piece, next_region, next_is_empty)`` in ascending piece order."""
        raise NotImplementedError

    def _region_from_mask(self, mask: int):
        raise NotImplementedError

    def _full_region(self):
        raise NotImplementedError

    # -- core -------------------------------------------------------------
    def _evaluate(self, region, delta: int, decider: Player):
        out = []
        sizes = self.sizes
        for piece, nxt, empty in self._moves(region):
            s = sizes[piece]
            if empty:
                if s == delta:
                    self.simultaneous += 1
                pair = (s, 0)
            elif s < delta:
                d, o = self._future(nxt, delta - s, decider)
                pair = (s + d, o)
            elif s > delta:
                d, o = self._future(nxt, s - delta, decider.other)
                pair = (s + o, d)
            else:
                self.contested += 1
                first = self.policy.priority
                if first is None:
                    continue
                d, o = self._future(nxt, 0, first)
                pair = (s + d, o) if first is decider else (s + o, d)
            out.append((piece, pair))
        return out

    def _future(self, region, delta: int, decider: Player) -> tuple[int, int]:
        """Scaled future intake ``(decider, other)`` under optimal play."""
        key = (region, delta, decider) if self._keyed else (region, delta)
        hit = self._memo.get(key)
        if hit is not None:
            return hit[0]
        best = None
        for piece, pair in self._evaluate(region, delta, decider):
            if best is None or pair[0] > best[1][0]:
                best = (piece, pair)
        if best is None:
            raise TieError(
                "every available pick ends in a contested simultaneous finish",
                {"region": self._describe(region), "delta": format_rational(Fraction(delta, self.scale)),
                 "decider": decider.value},
            )
        self._memo[key] = (best[1], best[0])
        return best[1]

    def _describe(self, region):
        return repr(region)

    def _internal(self, state: RaceState):
        if state.finished:
            raise IllegalMoveError("game is over")
        scaled = state.delta * self.scale
        assert scaled.denominator == 1
        return self._region_from_mask(state.region), int(scaled.numerator)

    # -- public -----------------------------------------------------------
    def value(self, state: RaceState) -> tuple[Fraction, Fraction]:
        """(Alice, Bob) final totals from ``state`` under optimal play."""
        alice, bob = state.consumed
        if state.finished:
            return alice, bob
        region, delta = self._internal(state)
        d, o = self._future(region, delta, state.decider)
        d, o = Fraction(d, self.scale), Fraction(o, self.scale)
        if state.decider is Player.ALICE:
            return alice + d, bob + o
        return alice + o, bob + d

    def move_values(self, state: RaceState) -> dict[int, Fraction]:
        """Decider's final total for every available pick from ``state``."""
        region, delta = self._internal(state)
        own = state.consumed[state.decider.index]
        return {
            piece: own + Fraction(pair[0], self.scale)
            for piece, pair in self._evaluate(region, delta, state.decider)
        }

    def optimal_move(self, state: RaceState) -> int:
        """Lowest-index pick achieving the decider's optimal value."""
        region, delta = self._internal(state)
        self._future(region, delta, state.decider)
        key = (region, delta, state.decider) if self._keyed else (region, delta)
        return self._memo[key][1]

    def race_value(self, x: int, y: int) -> tuple[Fraction, Fraction]:
        """Totals of the holders of ``x`` and ``y`` after both are taken at t = 0."""
        if x == y:
            raise IllegalMoveError("opening pieces must differ")
        return self.value(open_game(self.instance, x, y, self.policy))

    def solve(self) -> Solution:
        n = self.instance.n
        root = RaceState((1 << n) - 1, Player.ALICE, Fraction(0), (Fraction(0), Fraction(0)), Fraction(0))
        values = self.move_values(root)
        if not values:
            raise TieError("every opening ends in a contested simultaneous finish", {})
        best = max(values.values())
        firsts = tuple(sorted(p for p, v in values.items() if v == best))
        pv = run_with_policies(self.instance, firsts[0], self.optimal_move, self.optimal_move, self.policy)
        return Solution(best, self.instance.total, firsts, pv, generic=self.contested == 0 and self.simultaneous == 0)


class CycleSolver(RaceSolver):
    """Regions are arcs ``(start, length)``; the full pizza is ``(0, n)``."""

    def __init__(self, instance: CycleInstance, policy: TiePolicy = TiePolicy.ERROR):
        if not isinstance(instance, CycleInstance):
            raise TypeError("CycleSolver needs a CycleInstance")
        super().__init__(instance, policy)
        self.n = instance.n
        self._move_cache: dict = {}

    def _full_region(self):
        return (0, self.n)

    def _moves(self, region):
        moves = self._move_cache.get(region)
        if moves is not None:
            return moves
        start, length = region
        n = self.n
        if length == n:
            moves = [(i, ((i + 1) % n, n - 1), n == 1) for i in range(n)]
        elif length == 1:
            moves = [(start, (0, 0), True)]
        else:
            end = (start + length - 1) % n
            moves = sorted([
                (start, ((start + 1) % n, length - 1), False),
                (end, (start, length - 1), False),
            ])
        self._move_cache[region] = moves
        return moves

    def _region_from_mask(self, mask: int):
        n = self.n
        full = (1 << n) - 1
        if mask == full:
            return (0, n)
        if not is_contiguous_arc(n, mask):
            raise IllegalMoveError("region is not a contiguous arc")
        length = bin(mask).count("1")
        start = next(i for i in range(n) if (mask >> i) & 1 and not (mask >> ((i - 1) % n)) & 1)
        return (start, length)


def solve(instance: CycleInstance, policy: TiePolicy = TiePolicy.ERROR) -> Solution:
    return CycleSolver(instance, policy).solve()


def race_value(instance: CycleInstance, x: int, y: int, policy: TiePolicy = TiePolicy.ERROR):
    if y not in instance.neighbors(x):
        raise IllegalMoveError(f"piece {y} is not adjacent to piece {x}")
    return CycleSolver(instance, policy).race_value(x, y)


def optimal_move(instance, state: RaceState, policy: TiePolicy = TiePolicy.ERROR) -> int:
    if isinstance(instance, CycleInstance):
        return CycleSolver(instance, policy).optimal_move(state)
    from .graph import GraphSolver

    return GraphSolver(instance, policy).optimal_move(state)
