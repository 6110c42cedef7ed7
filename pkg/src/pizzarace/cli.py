"""``pizzarace`` command line.

Machine output is JSON on stdout; diagnostics go to stderr.
Exit codes: 0 ok, 1 bad input, 2 tie under the error policy, 3 failed check.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import analysis
from .engine import TieError, TiePolicy
from .graph import solve_graph
from .io import instance_to_json, load_instance, save_instance
from .model import CycleInstance, GraphInstance, InstanceError, Player, format_rational, parse_rational
from .play import PlaySession, repl
from .search import THREADS_ENV, SearchConfig, append_record, read_records, search_min_share
from .solver import solve

log = logging.getLogger("pizzarace")

EXIT_INPUT, EXIT_TIE, EXIT_CHECK = 1, 2, 3


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _policy(args) -> TiePolicy:
    return TiePolicy(args.tie_policy)


def _cycle(path) -> CycleInstance:
    inst = load_instance(path)
    if not isinstance(inst, CycleInstance):
        raise InstanceError(f"{path} holds a graph; this command needs a cycle")
    return inst


def cmd_solve(args) -> int:
    inst = load_instance(args.path)
    if isinstance(inst, GraphInstance):
        sol = solve_graph(inst, _policy(args))
    else:
        sol = solve(inst, _policy(args))
    _emit(sol.to_json())
    return 0


def cmd_graph(args) -> int:
    inst = load_instance(args.path)
    if isinstance(inst, CycleInstance):
        inst = inst.to_graph()
    _emit(solve_graph(inst, _policy(args)).to_json())
    return 0


def cmd_relations(args) -> int:
    inst = _cycle(args.path)
    alpha = parse_rational(args.alpha)
    profile = analysis.relation_profile(inst, alpha, _policy(args))
    witness = analysis.witness_indices(profile)
    out = profile.to_json()
    out["witness"] = witness[0] if witness else None
    sol = solve(inst, _policy(args))
    out["alice_total"] = format_rational(sol.alice_total)
    out["exceeds_alpha"] = sol.alice_total > alpha * inst.total
    _emit(out)
    return 0


def cmd_insert(args) -> int:
    inst = _cycle(args.path)
    eps = None if args.epsilon is None else parse_rational(args.epsilon)
    new, plan = analysis.insert_small_piece(inst, args.gap, eps)
    out = {"instance": instance_to_json(new), "plan": plan.to_json()}
    if args.check:
        out["check"] = analysis.insertion_invariance_check(inst, args.gap, _policy(args), plan.epsilon).to_json()
    if args.out:
        save_instance(args.out, new)
    _emit(out)
    return 0


def _check_json(instance, policy, insertion):
    try:
        res = analysis.check_instance(instance, policy, insertion=insertion)
    except TieError:
        return None
    res["alice_total"] = format_rational(res["alice_total"])
    return res


def _check_job(job):
    sizes, policy, insertion = job
    return _check_json(CycleInstance(sizes), policy, insertion)


def _workers(args) -> int:
    return args.threads or int(os.environ.get(THREADS_ENV, "1") or 1)


def cmd_verify(args) -> int:
    policy = _policy(args)
    if args.random:
        n, count, seed = args.random
        if n < 1 or count < 1:
            raise InstanceError("--random needs n >= 1 and count >= 1")
        rng = random.Random(seed)
        instances = [tuple(rng.randint(1, args.max_size) for _ in range(n)) for _ in range(count)]
    elif args.path:
        instances = [_cycle(args.path).sizes]
    else:
        raise InstanceError("verify needs an instance file or --random n count seed")

    jobs = [(s, policy, args.insertion) for s in instances]
    if _workers(args) > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(_workers(args)) as pool:
            results = list(pool.map(_check_job, jobs, chunksize=16))
    else:
        results = [_check_job(j) for j in jobs]

    failures = {name: 0 for name in analysis.CHECKS}
    counterexamples = []
    shares = []
    skipped = 0
    for sizes, res in zip(instances, results):
        if res is None or (args.random and not res["generic"]):
            skipped += 1
            continue
        shares.append(parse_rational(res["alice_total"]) / sum(Fraction(x) for x in sizes))
        bad = [name for name in analysis.CHECKS if res[name] is False]
        for name in bad:
            failures[name] += 1
        if bad:
            counterexamples.append({"sizes": [format_rational(s) for s in sizes], "failed": bad})
    if args.path and results[0] is None:
        raise TieError("instance admits no tie-free play", {})
    summary = {
        "checked": len(shares),
        "ties_skipped": skipped,
        "failures": failures,
        "counterexamples": counterexamples[:20],
    }
    if args.path:
        summary["checks"] = results[0]
    if args.figure and shares:
        from .plotting import share_histogram

        share_histogram(shares, args.figure)
    _emit(summary)
    return EXIT_CHECK if counterexamples else 0


def cmd_search(args) -> int:
    config = SearchConfig(
        n=args.n, method=args.method, total=args.total, steps=args.steps, restarts=args.restarts,
        max_size=args.max_size, magnitude=parse_rational(args.magnitude), seed=args.seed,
        policy=_policy(args), workers=args.threads,
    )
    record = search_min_share(config)
    if args.out:
        append_record(args.out, record)
    _emit(record.to_json())
    if record.min_share is not None and record.min_share < analysis.TWO_FIFTHS:
        log.error("record below 2/5: solver bug")
        return EXIT_CHECK
    return 0


def cmd_report(args) -> int:
    from .plotting import min_share_by_n

    records = read_records(args.results)
    min_share_by_n(records, args.figure)
    best = {}
    for r in records:
        if r.min_share is not None and (r.n not in best or r.min_share < best[r.n].min_share):
            best[r.n] = r
    _emit({str(n): best[n].to_json() for n in sorted(best)})
    return 0


def cmd_play(args) -> int:
    human = Player.ALICE if args.as_ == "alice" else Player.BOB
    session = PlaySession(load_instance(args.path), human, _policy(args))
    finished = repl(session, sys.stdin, sys.stderr)
    if finished:
        _emit([e.to_json() for e in session.events])
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors, not ties
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pizzarace", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, path=True, **kw):
        p = sub.add_parser(name, **kw)
        if path:
            p.add_argument("path")
        p.add_argument("--tie-policy", choices=[t.value for t in TiePolicy], default="error")
        p.set_defaults(func=func)
        return p

    add("solve", cmd_solve, help="optimal value of a cycle or graph instance")
    add("graph", cmd_graph, help="solve as a connected-vertex-deletion game")

    p = add("relations", cmd_relations, help="relation profile of adjacent pairs")
    p.add_argument("--alpha", default="2/5")

    p = add("insert", cmd_insert, help="insert a tiny piece into a gap")
    p.add_argument("--gap", type=int, required=True)
    p.add_argument("--epsilon")
    p.add_argument("--check", action="store_true", help="also compare optimal values")
    p.add_argument("--out")

    p = add("verify", cmd_verify, path=False, help="machine-check the 2/5 bound and friends")
    p.add_argument("path", nargs="?")
    p.add_argument("--random", nargs=3, type=int, metavar=("N", "COUNT", "SEED"))
    p.add_argument("--max-size", type=int, default=1000)
    p.add_argument("--insertion", action="store_true")
    p.add_argument("--threads", type=int)
    p.add_argument("--figure", help="write a share histogram here")

    p = add("search", cmd_search, path=False, help="search for low-share pizzas")
    p.add_argument("--method", choices=["exhaustive", "random", "local"], default="exhaustive")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--total", type=int, default=12)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--max-size", type=int, default=1000)
    p.add_argument("--magnitude", default="1/20")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="append the record to this JSONL file")

    p = add("report", cmd_report, path=False, help="plot best minima from a results file")
    p.add_argument("results")
    p.add_argument("--figure", required=True)

    p = add("play", cmd_play, help="play against the optimal strategy")
    p.add_argument("--as", dest="as_", choices=["alice", "bob"], default="alice")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except TieError as exc:
        print(json.dumps({"error": str(exc), "event": exc.event}, sort_keys=True), file=sys.stderr)
        return EXIT_TIE
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
