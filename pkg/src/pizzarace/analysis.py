"""Preference relations between adjacent pieces, the 2/5 bound, and small-piece insertion."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import TieError, TiePolicy
from .model import CycleInstance, InstanceError, as_rational, format_rational
from .solver import CycleSolver, Solution

TWO_FIFTHS = Fraction(2, 5)
MAX_GAP_PIECES = 20


class Relation(enum.Enum):
    PREC = "PREC"  # holder of the second piece can exceed (1 - alpha) W
    SUCC = "SUCC"  # holder of the first piece can exceed (1 - alpha) W
    SIM = "SIM"  # both strictly inside (alpha W, (1 - alpha) W)
    BOUNDARY = "BOUNDARY"

    def reversed(self) -> "Relation":
        return {Relation.PREC: Relation.SUCC, Relation.SUCC: Relation.PREC}.get(self, self)


@dataclass
class RelationProfile:
    labels: list[Relation]
    alpha: Fraction

    @property
    def uniform(self) -> bool:
        return len(set(self.labels)) == 1 and self.labels[0] in (Relation.PREC, Relation.SUCC)

    @property
    def has_boundary(self) -> bool:
        return Relation.BOUNDARY in self.labels

    def to_json(self) -> dict:
        return {"labels": [r.value for r in self.labels], "uniform": self.uniform,
                "alpha": format_rational(self.alpha)}


def _check_alpha(alpha) -> Fraction:
    alpha = as_rational(alpha)
    if not (0 < alpha <= Fraction(1, 2)):
        raise InstanceError(f"alpha must lie in (0, 1/2], got {alpha}")
    return alpha


def _solver(instance, policy, solver):
    return solver if solver is not None else CycleSolver(instance, policy)


def classify_adjacent(instance: CycleInstance, a: int, b: int, alpha=TWO_FIFTHS,
                      policy: TiePolicy = TiePolicy.ERROR, solver: CycleSolver | None = None) -> Relation:
    """Relation of the ordered adjacent pair (a, b) after both are taken at t = 0."""
    alpha = _check_alpha(alpha)
    if instance.n < 2:
        raise InstanceError("relations need at least two pieces")
    holder_a, holder_b = _solver(instance, policy, solver).race_value(a, b)
    low, high = alpha * instance.total, (1 - alpha) * instance.total
    if holder_b > high:
        return Relation.PREC
    if holder_a > high:
        return Relation.SUCC
    if low < holder_a < high and low < holder_b < high:
        return Relation.SIM
    return Relation.BOUNDARY


def classify_pair(instance: CycleInstance, i: int, alpha=TWO_FIFTHS,
                  policy: TiePolicy = TiePolicy.ERROR, solver: CycleSolver | None = None) -> Relation:
    return classify_adjacent(instance, i % instance.n, (i + 1) % instance.n, alpha, policy, solver)


def relation_profile(instance: CycleInstance, alpha=TWO_FIFTHS, policy: TiePolicy = TiePolicy.ERROR,
                     solver: CycleSolver | None = None) -> RelationProfile:
    alpha = _check_alpha(alpha)
    solver = _solver(instance, policy, solver)
    labels = [classify_pair(instance, i, alpha, policy, solver) for i in range(instance.n)]
    return RelationProfile(labels, alpha)


def witness_indices(profile: RelationProfile) -> list[int]:
    """Every k whose piece is weakly preferred to both neighbours."""
    labels = profile.labels
    n = len(labels)
    toward_right = (Relation.SUCC, Relation.SIM)  # P_k >= P_{k+1}
    toward_left = (Relation.PREC, Relation.SIM)  # P_{k-1} <= P_k
    return [k for k in range(n) if labels[k] in toward_right and labels[(k - 1) % n] in toward_left]


def lemma_witness(instance: CycleInstance, alpha=TWO_FIFTHS, policy: TiePolicy = TiePolicy.ERROR,
                  solver: CycleSolver | None = None) -> int | None:
    found = witness_indices(relation_profile(instance, alpha, policy, solver))
    return found[0] if found else None


def opening_guarantee(instance: CycleInstance, k: int, policy: TiePolicy = TiePolicy.ERROR,
                      solver: CycleSolver | None = None) -> Fraction:
    """Alice's total from opening k against Bob's best immediate reply."""
    solver = _solver(instance, policy, solver)
    return min(solver.race_value(k, j)[0] for j in instance.neighbors(k))


@dataclass
class TheoremReport:
    value: Fraction
    total: Fraction
    passed: bool
    solution: Solution

    def to_json(self) -> dict:
        return {"value": format_rational(self.value), "W": format_rational(self.total),
                "pass": self.passed, "solution": self.solution.to_json()}


def verify_theorem(instance: CycleInstance, policy: TiePolicy = TiePolicy.ERROR,
                   solver: CycleSolver | None = None) -> TheoremReport:
    sol = _solver(instance, policy, solver).solve()
    return TheoremReport(sol.alice_total, instance.total, 5 * sol.alice_total >= 2 * instance.total, sol)


@dataclass
class Census:
    count_over_fifth: int
    count_over_two_fifths: int
    indices: list[int]

    def to_json(self) -> dict:
        return {"count_over_fifth": self.count_over_fifth,
                "count_over_two_fifths": self.count_over_two_fifths, "indices": self.indices}


def big_piece_census(instance) -> Census:
    fifth = instance.total / 5
    over = [i for i, s in enumerate(instance.sizes) if s > fifth]
    big = sum(1 for s in instance.sizes if s > 2 * fifth)
    return Census(len(over), big, over)


def min_signed_gap(instance) -> Fraction:
    """Smallest nonzero |sum c_i * size_i| with every c_i in {-1, 0, 1}."""
    if instance.n > MAX_GAP_PIECES:
        raise InstanceError(f"signed-sum enumeration is limited to {MAX_GAP_PIECES} pieces")
    scale, sizes = instance.integer_sizes()
    # Scaled sums are integers in [-W, W], so the reachable set stays small.
    reachable = {0}
    for s in sizes:
        reachable = reachable | {x + s for x in reachable} | {x - s for x in reachable}
    return Fraction(min(abs(x) for x in reachable if x), scale)


@dataclass
class InsertionPlan:
    position: int
    m: Fraction
    epsilon: Fraction

    def to_json(self) -> dict:
        return {"position": self.position, "m": format_rational(self.m),
                "epsilon": format_rational(self.epsilon)}


def insert_small_piece(instance: CycleInstance, position: int, epsilon=None) -> tuple[CycleInstance, InsertionPlan]:
    """Insert a piece of size epsilon between piece ``position`` and the next one."""
    n = instance.n
    if not 0 <= position < n:
        raise InstanceError(f"gap {position} out of range for {n} pieces")
    m = min_signed_gap(instance)
    eps = m / 2 if epsilon is None else as_rational(epsilon)
    if not 0 < eps < m:
        raise InstanceError(f"epsilon must satisfy 0 < epsilon < {m}, got {eps}")
    sizes = list(instance.sizes)
    sizes.insert(position + 1, eps)
    return CycleInstance(tuple(sizes)), InsertionPlan(position, m, eps)


def _map_index(i: int, position: int) -> int:
    return i if i <= position else i + 1


@dataclass
class InsertionReport:
    v: Fraction
    v_prime: Fraction
    plan: InsertionPlan
    bound_holds: bool
    details: dict = field(default_factory=dict)

    @property
    def epsilon(self) -> Fraction:
        return self.plan.epsilon

    def to_json(self) -> dict:
        return {"v": format_rational(self.v), "v_prime": format_rational(self.v_prime),
                "epsilon": format_rational(self.epsilon), "bound_holds": self.bound_holds,
                "plan": self.plan.to_json(), "details": self.details}


def insertion_invariance_check(instance: CycleInstance, position: int, policy: TiePolicy = TiePolicy.ERROR,
                               epsilon=None, alpha=TWO_FIFTHS, relations: bool = True) -> InsertionReport:
    """Compare optimal play before and after inserting a tiny piece."""
    new, plan = insert_small_piece(instance, position, epsilon)
    old_solver = CycleSolver(instance, policy)
    before = old_solver.solve()
    new_solver = CycleSolver(new, policy)
    try:
        after = new_solver.solve()
    except TieError as exc:
        raise AssertionError(f"inserting {plan.epsilon} introduced a tie") from exc
    mapped = sorted(_map_index(i, position) for i in before.best_first_pieces)
    half = Fraction(1, 2)
    details = {
        "value_preserved": before.alice_total == after.alice_total,
        "winner_preserved": (before.alice_share > half) == (after.alice_share > half),
        "first_pieces_preserved": mapped == list(after.best_first_pieces),
        "first_pieces_before": mapped,
        "first_pieces_after": list(after.best_first_pieces),
    }
    if relations and instance.n >= 2:
        changed = []
        for i in range(instance.n):
            if i == position:
                continue  # that pair is no longer adjacent
            j = (i + 1) % instance.n
            old = classify_adjacent(instance, i, j, alpha, policy, old_solver)
            fresh = classify_adjacent(new, _map_index(i, position), _map_index(j, position), alpha, policy,
                                      new_solver)
            if old is not fresh:
                changed.append(i)
        details["relations_preserved"] = not changed
        details["relations_changed_at"] = changed
    return InsertionReport(before.alice_total, after.alice_total, plan,
                           abs(after.alice_total - before.alice_total) <= plan.epsilon, details)


CHECKS = ("theorem", "lemma", "corollary", "witness", "trace_identity", "insertion")


def check_instance(instance: CycleInstance, policy: TiePolicy = TiePolicy.ERROR, alpha=TWO_FIFTHS,
                   insertion: bool = False) -> dict:
    """Run every machine check on one pizza; maps check name to pass/fail (None = not applicable)."""
    alpha = _check_alpha(alpha)
    solver = CycleSolver(instance, policy)
    sol = solver.solve()
    w = instance.total
    above = sol.alice_total > alpha * w
    results: dict = {name: None for name in CHECKS}
    results["theorem"] = 5 * sol.alice_total >= 2 * w

    a, b = sol.principal_variation.totals(instance)
    results["trace_identity"] = (
        (a, b) == (sol.alice_total, w - sol.alice_total)
        and abs(a - b) == sol.principal_variation.idle_remainder(instance)
    )
    if instance.n >= 2:
        profile = relation_profile(instance, alpha, policy, solver)
        if Relation.SIM in profile.labels:
            results["corollary"] = above
        if not profile.has_boundary:
            if not profile.uniform:
                results["lemma"] = above
            witnesses = witness_indices(profile)
            if witnesses:
                results["witness"] = all(opening_guarantee(instance, k, policy, solver) > alpha * w
                                         for k in witnesses)
    if insertion and instance.n <= MAX_GAP_PIECES:
        results["insertion"] = all(insertion_invariance_check(instance, g, policy, relations=False).bound_holds
                                   for g in range(instance.n))
    results["generic"] = sol.generic
    results["alice_total"] = sol.alice_total
    return results
