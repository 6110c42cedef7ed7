"""Hunting for pizzas on which Alice's optimal share is small."""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .engine import TieError, TiePolicy
from .model import CycleInstance, InstanceError, as_rational, format_rational, parse_rational
from .solver import CycleSolver

THREADS_ENV = "PIZZA_RACE_THREADS"
METHODS = ("exhaustive", "random", "local")


def enumerate_compositions(n: int, total: int) -> Iterator[CycleInstance]:
    """Every ordered composition of ``total`` into ``n`` positive parts."""
    if n < 1 or total < n:
        raise InstanceError(f"no composition of {total} into {n} positive parts")
    for cuts in combinations(range(1, total), n - 1):
        bounds = (0,) + cuts + (total,)
        yield CycleInstance(tuple(bounds[k + 1] - bounds[k] for k in range(n)))


def transfer(instance: CycleInstance, src: int, dst: int, amount) -> CycleInstance:
    amount = as_rational(amount)
    sizes = list(instance.sizes)
    sizes[src] -= amount
    sizes[dst] += amount
    return CycleInstance(tuple(sizes))


def perturb(instance: CycleInstance, seed: int, magnitude) -> CycleInstance:
    """Move a seeded random amount in (0, magnitude] from one piece to another."""
    magnitude = as_rational(magnitude)
    if instance.n < 2:
        raise InstanceError("perturbation needs at least two pieces")
    if not 0 < magnitude < min(instance.sizes):
        raise InstanceError(f"magnitude must lie in (0, {min(instance.sizes)})")
    rng = random.Random(seed)
    src, dst = rng.sample(range(instance.n), 2)
    return transfer(instance, src, dst, magnitude * Fraction(rng.randint(1, 64), 64))


@dataclass
class SearchConfig:
    n: int
    method: str = "exhaustive"
    total: int = 12  # exhaustive: every W from n up to this
    steps: int = 1000  # random: instances drawn; local: steps per restart
    restarts: int = 1
    max_size: int = 1000
    magnitude: Fraction = Fraction(1, 20)  # local: fraction of the smallest piece
    seed: int = 0
    policy: TiePolicy = TiePolicy.ERROR
    workers: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise InstanceError(f"unknown search method {self.method!r}")
        if self.n < 1 or self.steps < 1 or self.restarts < 1 or self.max_size < 1:
            raise InstanceError("search budgets must be positive")
        if self.method == "exhaustive" and self.total < self.n:
            raise InstanceError("exhaustive search needs total >= n")
        self.magnitude = as_rational(self.magnitude)
        if not 0 < self.magnitude < 1:
            raise InstanceError("magnitude must lie in (0, 1)")

    def worker_count(self) -> int:
        if self.workers:
            return self.workers
        return int(os.environ.get(THREADS_ENV, "1") or 1)


@dataclass
class SearchRecord:
    n: int
    method: str
    seed: int
    evaluated: int
    min_share: Fraction | None
    instance: CycleInstance | None
    ties_skipped: int
    wall_time_s: float = 0.0
    history: list[Fraction] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "method": self.method,
            "seed": self.seed,
            "evaluated": self.evaluated,
            "min_share": None if self.min_share is None else format_rational(self.min_share),
            "instance": None if self.instance is None else [format_rational(s) for s in self.instance.sizes],
            "ties_skipped": self.ties_skipped,
            "wall_time_s": round(self.wall_time_s, 3),
        }

    @classmethod
    def from_json(cls, record: dict) -> "SearchRecord":
        inst = record.get("instance")
        share = record.get("min_share")
        return cls(
            record["n"], record["method"], record["seed"], record["evaluated"],
            None if share is None else parse_rational(share),
            None if inst is None else CycleInstance(tuple(parse_rational(s) for s in inst)),
            record["ties_skipped"], record.get("wall_time_s", 0.0),
        )


def generic_share(instance: CycleInstance, policy: TiePolicy = TiePolicy.ERROR) -> Fraction | None:
    """Alice's optimal share, or None when the pizza admits coincident finishes."""
    try:
        sol = CycleSolver(instance, policy).solve()
    except TieError:
        return None
    if policy is TiePolicy.ERROR and not sol.generic:
        return None
    return sol.alice_share


def _evaluate(args):
    sizes, policy = args
    return generic_share(CycleInstance(sizes), policy)


def _random_sizes(rng: random.Random, n: int, max_size: int) -> tuple[Fraction, ...]:
    raw = [rng.randint(1, max_size) for _ in range(n)]
    w = sum(raw)
    return tuple(Fraction(x, w) for x in raw)


class _Reducer:
    def __init__(self):
        self.best: Fraction | None = None
        self.argmin: CycleInstance | None = None
        self.evaluated = 0
        self.skipped = 0

    def add(self, sizes, share):
        self.evaluated += 1
        if share is None:
            self.skipped += 1
        elif self.best is None or share < self.best:
            self.best, self.argmin = share, CycleInstance(sizes)


def _stream(config: SearchConfig):
    if config.method == "exhaustive":
        for w in range(config.n, config.total + 1):
            for inst in enumerate_compositions(config.n, w):
                yield inst.sizes
    else:
        rng = random.Random(config.seed)
        for _ in range(config.steps):
            yield _random_sizes(rng, config.n, config.max_size)


def _local(config: SearchConfig, reducer: _Reducer) -> list[Fraction]:
    rng = random.Random(config.seed)
    history = []
    for _ in range(config.restarts):
        current, share = None, None
        while share is None:
            current = CycleInstance(_random_sizes(rng, config.n, config.max_size))
            share = generic_share(current, config.policy)
            reducer.add(current.sizes, share)
        best_here = share
        history.append(best_here)
        for _ in range(config.steps):
            step = config.magnitude * min(current.sizes)
            candidate = perturb(current, rng.getrandbits(32), step)
            cand_share = generic_share(candidate, config.policy)
            reducer.add(candidate.sizes, cand_share)
            if cand_share is not None and cand_share <= best_here:
                current, best_here = candidate, cand_share
            history.append(best_here)
    return history


def search_min_share(config: SearchConfig) -> SearchRecord:
    start = time.perf_counter()
    reducer = _Reducer()
    history: list[Fraction] = []
    if config.n == 1 and config.method != "exhaustive":
        raise InstanceError("random and local search need n >= 2")
    if config.method == "local":
        history = _local(config, reducer)
    else:
        workers = config.worker_count()
        jobs = ((sizes, config.policy) for sizes in _stream(config))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                pairs = zip(_stream(config), pool.map(_evaluate, jobs, chunksize=64))
                for sizes, share in pairs:
                    reducer.add(sizes, share)
        else:
            for sizes, policy in jobs:
                reducer.add(sizes, _evaluate((sizes, policy)))
    return SearchRecord(config.n, config.method, config.seed, reducer.evaluated, reducer.best,
                        reducer.argmin, reducer.skipped, time.perf_counter() - start, history)


def append_record(path, record: SearchRecord) -> None:
    with open(path, "a") as fh:
        fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")


def read_records(path) -> list[SearchRecord]:
    with open(path) as fh:
        return [SearchRecord.from_json(json.loads(line)) for line in fh if line.strip()]
