"""Real-time race semantics shared by the cycle and graph games.

Both players eat at unit rate. A player whose hand is empty (the *decider*)
must pick immediately; the other player still has ``delta`` left of the piece
in hand. A pick is credited to its taker at pick time.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .model import (
    CycleInstance,
    InstanceError,
    Player,
    format_rational,
    induces_connected,
    iter_bits,
    parse_rational,
)


class TiePolicy(enum.Enum):
    ERROR = "error"
    ALICE_FIRST = "alice-first"
    BOB_FIRST = "bob-first"

    @property
    def priority(self) -> Player | None:
        if self is TiePolicy.ALICE_FIRST:
            return Player.ALICE
        if self is TiePolicy.BOB_FIRST:
            return Player.BOB
        return None


class IllegalMoveError(InstanceError):
    pass


class TieError(RuntimeError):
    """Two players would finish at the same instant with pieces still left."""

    def __init__(self, message: str, event: dict | None = None):
        super().__init__(message)
        self.event = event or {}


@dataclass(frozen=True)
class Event:
    time: Fraction
    player: Player
    kind: str  # pick | finish | idle | end
    piece: int | None = None

    def to_json(self) -> dict:
        record = {"t": format_rational(self.time), "player": self.player.value, "event": self.kind}
        if self.piece is not None:
            record["piece"] = self.piece
        return record

    @classmethod
    def from_json(cls, record: dict) -> "Event":
        return cls(
            parse_rational(record["t"]),
            Player(record["player"]),
            record["event"],
            record.get("piece"),
        )


@dataclass
class Trace:
    events: list[Event] = field(default_factory=list)

    def picks(self) -> list[Event]:
        return [e for e in self.events if e.kind == "pick"]

    def totals(self, instance) -> tuple[Fraction, Fraction]:
        """(Alice, Bob) totals recomputed from the pick events alone."""
        totals = [Fraction(0), Fraction(0)]
        for e in self.picks():
            totals[e.player.index] += instance.sizes[e.piece]
        return totals[0], totals[1]

    def idle_remainder(self, instance) -> Fraction:
        """In-hand remainder of the still-eating player when the other goes idle.

        Zero if both players run out at the same instant.
        """
        last_pick: dict[Player, Event] = {}
        for e in self.events:
            if e.kind == "pick":
                last_pick[e.player] = e
            elif e.kind == "idle":
                other = e.player.other
                if other not in last_pick:
                    return Fraction(0)
                p = last_pick[other]
                return max(Fraction(0), p.time + instance.sizes[p.piece] - e.time)
        raise ValueError("trace has no idle event")

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.events]

    @classmethod
    def from_json(cls, records: Iterable[dict]) -> "Trace":
        return cls([Event.from_json(r) for r in records])


@dataclass(frozen=True)
class RaceState:
    """Snapshot at a decision event (or the terminal state when region == 0).

    ``region`` is a bitmask of uneaten pieces; ``consumed`` is indexed by
    ``Player.index``.
    """

    region: int
    decider: Player
    delta: Fraction
    consumed: tuple[Fraction, Fraction]
    clock: Fraction

    @property
    def finished(self) -> bool:
        return self.region == 0

    def remaining(self) -> list[int]:
        return list(iter_bits(self.region))


def initial_state(instance) -> RaceState:
    return RaceState((1 << instance.n) - 1, Player.ALICE, Fraction(0), (Fraction(0), Fraction(0)), Fraction(0))


def legal_moves(instance, state: RaceState) -> list[int]:
    """Pieces the decider may take, in ascending order."""
    region = state.region
    if region == 0:
        raise IllegalMoveError("no pieces left")
    if isinstance(instance, CycleInstance):
        return _cycle_moves(instance.n, region)
    return graph_moves(instance.adjacency, region)


def _cycle_moves(n: int, region: int) -> list[int]:
    if region == (1 << n) - 1:
        return list(range(n))
    moves = []
    for i in iter_bits(region):
        left = (i - 1) % n
        right = (i + 1) % n
        if not (region >> left) & 1 or not (region >> right) & 1:
            moves.append(i)
    return moves


def graph_moves(adjacency, region: int) -> list[int]:
    return [v for v in iter_bits(region) if induces_connected(adjacency, region & ~(1 << v))]


def is_contiguous_arc(n: int, region: int) -> bool:
    if region in (0, (1 << n) - 1):
        return True
    starts = sum(1 for i in iter_bits(region) if not (region >> ((i - 1) % n)) & 1)
    return starts == 1


def advance(instance, state: RaceState, piece: int, policy: TiePolicy = TiePolicy.ERROR):
    """Apply one pick and run the clock to the next decision event.

    Returns ``(new_state, events)``.
    """
    if state.finished:
        raise IllegalMoveError("game is over")
    if piece not in legal_moves(instance, state):
        raise IllegalMoveError(f"piece {piece} is not a legal move")
    size = instance.sizes[piece]
    me, other = state.decider, state.decider.other
    t, d = state.clock, state.delta
    region = state.region & ~(1 << piece)
    consumed = list(state.consumed)
    consumed[me.index] += size
    consumed = tuple(consumed)
    events = [Event(t, me, "pick", piece)]

    if region == 0:
        mine, theirs = t + size, t + d
        if mine < theirs:
            events += [Event(mine, me, "idle"), Event(theirs, other, "end")]
        else:
            events += [Event(theirs, other, "idle"), Event(mine, me, "end")]
        return RaceState(0, me, Fraction(0), consumed, max(mine, theirs)), events

    if size < d:
        events.append(Event(t + size, me, "finish"))
        return RaceState(region, me, d - size, consumed, t + size), events
    if size > d:
        if d > 0:
            events.append(Event(t + d, other, "finish"))
        return RaceState(region, other, size - d, consumed, t + d), events

    first = policy.priority
    if first is None:
        raise TieError(
            f"contested simultaneous finish at t={t + size}",
            {"t": format_rational(t + size), "player": me.value, "event": "pick", "piece": piece,
             "remaining": sorted(iter_bits(region))},
        )
    events += [Event(t + size, first, "finish"), Event(t + size, first.other, "finish")]
    return RaceState(region, first, Fraction(0), consumed, t + size), events


def apply_pick(instance, state: RaceState, piece: int, policy: TiePolicy = TiePolicy.ERROR) -> RaceState:
    return advance(instance, state, piece, policy)[0]


def open_game(instance, alice_piece: int, bob_piece: int | None, policy: TiePolicy = TiePolicy.ERROR) -> RaceState:
    """Alice takes her first piece and Bob replies at the same instant."""
    state = apply_pick(instance, initial_state(instance), alice_piece, policy)
    if state.finished:
        if bob_piece is not None:
            raise IllegalMoveError("no piece is left for Bob")
        return state
    if bob_piece is None:
        raise IllegalMoveError("Bob must reply immediately")
    return apply_pick(instance, state, bob_piece, policy)


Strategy = Callable[[RaceState], int]


def run_with_policies(
    instance,
    first_a: int | None,
    strategy_a: Strategy,
    strategy_b: Strategy,
    policy: TiePolicy = TiePolicy.ERROR,
) -> Trace:
    """Play one full game and return its transcript.

    ``first_a`` fixes Alice's opening; ``None`` lets ``strategy_a`` choose it.
    """
    state = initial_state(instance)
    trace = Trace()
    strategies = {Player.ALICE: strategy_a, Player.BOB: strategy_b}
    first = True
    while not state.finished:
        if first and first_a is not None:
            piece = first_a
        else:
            piece = strategies[state.decider](state)
        first = False
        state, events = advance(instance, state, piece, policy)
        trace.events.extend(events)
    return trace


def check_conservation(instance, state: RaceState) -> bool:
    left = sum((instance.sizes[i] for i in iter_bits(state.region)), Fraction(0))
    return state.consumed[0] + state.consumed[1] + left == instance.total


def replay(instance, picks: Iterable[int], policy: TiePolicy = TiePolicy.ERROR) -> RaceState:
    state = initial_state(instance)
    for p in picks:
        state = apply_pick(instance, state, p, policy)
    return state
