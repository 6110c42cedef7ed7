"""Line-based terminal play against the optimal strategy."""

from __future__ import annotations

import sys

from .engine import IllegalMoveError, TieError, TiePolicy, advance, initial_state, legal_moves
from .graph import GraphSolver
from .model import CycleInstance, Player, format_rational
from .solver import CycleSolver

HELP = "commands: pick <id> | hint | undo | quit"


class PlaySession:
    def __init__(self, instance, human: Player = Player.ALICE, policy: TiePolicy = TiePolicy.ERROR):
        self.instance = instance
        self.human = human
        self.policy = policy
        solver_cls = CycleSolver if isinstance(instance, CycleInstance) else GraphSolver
        self.solver = solver_cls(instance, policy)
        self.history: list[int] = []
        self.events = []
        self.state = initial_state(instance)
        self._autoplay()

    def _push(self, piece: int):
        self.state, events = advance(self.instance, self.state, piece, self.policy)
        self.history.append(piece)
        self.events.extend(events)

    def _autoplay(self):
        while not self.state.finished and self.state.decider is not self.human:
            self._push(self.solver.optimal_move(self.state))

    def _rebuild(self, picks):
        self.state = initial_state(self.instance)
        self.history, self.events = [], []
        for p in picks:
            self._push(p)

    @property
    def finished(self) -> bool:
        return self.state.finished

    def pick(self, piece: int) -> None:
        self._push(piece)
        self._autoplay()

    def undo(self) -> bool:
        """Roll back to the human's previous decision; False if there is none."""
        deciders = []
        state = initial_state(self.instance)
        for p in self.history:
            deciders.append(state.decider)
            state = advance(self.instance, state, p, self.policy)[0]
        mine = [k for k, who in enumerate(deciders) if who is self.human]
        if not mine:
            return False
        self._rebuild(self.history[: mine[-1]])
        return True

    def hint(self) -> tuple[int, object]:
        move = self.solver.optimal_move(self.state)
        return move, self.solver.move_values(self.state)[move]

    def describe(self) -> str:
        st = self.state
        sizes = self.instance.sizes
        left = ", ".join(f"{i}:{format_rational(sizes[i])}" for i in st.remaining())
        lines = [
            f"t={format_rational(st.clock)}  Alice {format_rational(st.consumed[0])}  "
            f"Bob {format_rational(st.consumed[1])}",
            f"remaining: {left or '-'}",
        ]
        if not st.finished:
            hand = f"opponent has {format_rational(st.delta)} left in hand" if st.delta else "opponent's hand is empty"
            lines.append(f"{st.decider.name.title()} to pick; {hand}")
            lines.append("legal: " + " ".join(str(m) for m in legal_moves(self.instance, st)))
        return "\n".join(lines)

    def handle(self, line: str) -> str:
        parts = line.split()
        if not parts:
            return HELP
        cmd = parts[0].lower()
        if cmd == "pick":
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                return "usage: pick <id>"
            try:
                self.pick(int(parts[1]))
            except (IllegalMoveError, TieError) as exc:
                return f"error: {exc}"
            return self.describe()
        if cmd == "hint":
            move, value = self.hint()
            return f"hint: pick {move} (value {format_rational(value)})"
        if cmd == "undo":
            return self.describe() if self.undo() else "error: nothing to undo"
        return HELP

    def summary(self) -> str:
        a, b = self.state.consumed
        w = self.instance.total
        return f"final: Alice {format_rational(a)} ({format_rational(a / w)})  " \
               f"Bob {format_rational(b)} ({format_rational(b / w)})"


def repl(session: PlaySession, stdin=None, stdout=None) -> bool:
    """Drive a session from text lines; returns True if the game was finished."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    print(session.describe(), file=stdout)
    print(HELP, file=stdout)
    while not session.finished:
        print("> ", end="", file=stdout, flush=True)
        line = stdin.readline()
        if not line or line.strip().lower() == "quit":
            return False
        print(session.handle(line), file=stdout)
    print(session.summary(), file=stdout)
    return True
