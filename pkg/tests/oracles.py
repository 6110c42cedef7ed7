"""Independent brute-force references for the race game.

Nothing here imports the engine or the solvers. Play is simulated with an
explicit free-at clock per player over plain Python sets, and Alice's total
is computed by max/min over the full game tree with no memoization.
"""

from fractions import Fraction
from itertools import product


class OracleTie(Exception):
    pass


def _connected(vertices, adj):
    if not vertices:
        return True
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in vertices and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vertices


def cycle_adjacency(n):
    return {i: ({(i - 1) % n, (i + 1) % n} - {i}) for i in range(n)}


def graph_adjacency(n, edges):
    adj = {i: set() for i in range(n)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def naive_alice_total(sizes, adj, tie_first=None):
    """Alice's optimal total. ``tie_first`` is None (tie moves barred), "A" or "B"."""
    sizes = [Fraction(s) for s in sizes]
    n = len(sizes)

    def removable(remaining):
        return sorted(v for v in remaining if _connected(remaining - {v}, adj))

    def play(remaining, free, totals, mover):
        # mover is empty-handed at time free[mover] and must pick now
        if not remaining:
            return totals["A"]
        results = []
        for v in removable(remaining):
            rest = remaining - {v}
            new_free = dict(free)
            new_free[mover] = free[mover] + sizes[v]
            new_totals = dict(totals)
            new_totals[mover] += sizes[v]
            if not rest:
                results.append(new_totals["A"])
                continue
            a, b = new_free["A"], new_free["B"]
            if a == b:
                if tie_first is None:
                    continue
                nxt = tie_first
            else:
                nxt = "A" if a < b else "B"
            results.append(play(rest, new_free, new_totals, nxt))
        if not results:
            raise OracleTie()
        return max(results) if mover == "A" else min(results)

    zero = Fraction(0)
    return play(frozenset(range(n)), {"A": zero, "B": zero}, {"A": zero, "B": zero}, "A")


def naive_cycle_total(sizes, tie_first=None):
    return naive_alice_total(sizes, cycle_adjacency(len(sizes)), tie_first)


def brute_min_signed_gap(sizes):
    best = None
    for coeffs in product((-1, 0, 1), repeat=len(sizes)):
        x = abs(sum(c * Fraction(s) for c, s in zip(coeffs, sizes)))
        if x and (best is None or x < best):
            best = x
    return best


def naive_has_coincidence(sizes, adj):
    """True when some play has both players finishing at the same instant."""
    sizes = [Fraction(s) for s in sizes]

    def walk(remaining, free, mover):
        for v in remaining:
            rest = remaining - {v}
            if not _connected(rest, adj):
                continue
            nf = dict(free)
            nf[mover] = free[mover] + sizes[v]
            if nf["A"] == nf["B"]:
                return True
            if rest and walk(rest, nf, "A" if nf["A"] < nf["B"] else "B"):
                return True
        return False

    zero = Fraction(0)
    return walk(frozenset(range(len(sizes))), {"A": zero, "B": zero}, "A")
