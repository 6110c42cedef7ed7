"""The connected-vertex-deletion race on arbitrary graphs."""

from __future__ import annotations

from .engine import TiePolicy, graph_moves
from .model import GraphInstance, InstanceError
from .solver import RaceSolver, Solution

MAX_VERTICES = 24


def legal_first_moves(instance: GraphInstance) -> list[int]:
    """Non-cut vertices of the full graph."""
    return graph_moves(instance.adjacency, (1 << instance.n) - 1)


class GraphSolver(RaceSolver):
    """Regions are vertex bitmasks; a vertex is removable iff the rest stays connected."""

    def __init__(self, instance: GraphInstance, policy: TiePolicy = TiePolicy.ERROR):
        if instance.n > MAX_VERTICES:
            raise InstanceError(f"graph has {instance.n} vertices; the limit is {MAX_VERTICES}")
        super().__init__(instance, policy)
        self._move_cache: dict[int, list] = {}

    def _full_region(self):
        return (1 << self.instance.n) - 1

    def _moves(self, mask: int):
        moves = self._move_cache.get(mask)
        if moves is None:
            moves = []
            for v in graph_moves(self.instance.adjacency, mask):
                rest = mask & ~(1 << v)
                moves.append((v, rest, rest == 0))
            self._move_cache[mask] = moves
        return moves

    def _region_from_mask(self, mask: int) -> int:
        return mask

    def _describe(self, mask):
        return [v for v in range(self.instance.n) if (mask >> v) & 1]


def solve_graph(instance: GraphInstance, policy: TiePolicy = TiePolicy.ERROR) -> Solution:
    return GraphSolver(instance, policy).solve()
