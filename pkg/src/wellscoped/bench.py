"""Benchmark harness: time each evaluator on each task and cross-check results.

Every (strategy, environment) pair gets 3 untimed warm-up runs and then
``reps`` timed runs on the monotonic ``perf_counter_ns`` clock. Parsing,
scope checking and term generation happen before the clock starts. Rows are
only written once every implementation produced the same result hash for the
task, so a fast but wrong evaluator can never show up in a table.
"""
from __future__ import annotations

import csv
import hashlib
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TextIO

from wellscoped.deep import run_deep
from wellscoped.environment import EnvRepr
from wellscoped.evaluators import BINDV, ENVV, EVALV, SUBSTV, EvalStrategy, Impl, evaluate, nf
from wellscoped.frontend.generate import GenConfig, take
from wellscoped.frontend.lennart import lennart_term
from wellscoped.syntax import Term, to_sexpr

CSV_HEADER = ("impl", "task", "reps", "median_ns", "mean_ns", "stddev_ns", "result_hash")
TASKS = ("eval", "nf", "random")
WARMUP = 3
RANDOM_COUNT = 100
RANDOM_MIN_STEPS = 15
RANDOM_SIZE = 24

ALL_STRATEGIES = (EVALV, SUBSTV, BINDV, ENVV)


@dataclass(frozen=True)
class BenchRecord:
    impl: str
    task: str
    reps: int
    median_ns: int
    mean_ns: int
    stddev_ns: int
    result_hash: str

    def row(self) -> tuple:
        return (self.impl, self.task, self.reps, self.median_ns, self.mean_ns, self.stddev_ns,
                self.result_hash)


class HashMismatch(Exception):
    def __init__(self, task: str, records: Sequence[BenchRecord]) -> None:
        lines = [f"result hashes disagree on task {task!r}:"]
        lines += [f"  {r.impl:<20} {r.result_hash}" for r in records]
        super().__init__("\n".join(lines))
        self.task = task
        self.records = list(records)


def supports(strategy: EvalStrategy, task: str) -> bool:
    """The closure evaluator has no normalizer, so it only runs ``eval``."""
    return task == "eval" or strategy.impl is not Impl.EVALV


def impl_tag(strategy: EvalStrategy, repr: EnvRepr) -> str:
    return f"{strategy.name}/{repr.value}"


def task_terms(task: str, repr: EnvRepr, seed: int = 0, count: int = RANDOM_COUNT,
               min_steps: int = RANDOM_MIN_STEPS, size: int = RANDOM_SIZE) -> list[Term]:
    if task in ("eval", "nf"):
        return [lennart_term(repr)]
    if task == "random":
        cfg = GenConfig(seed=seed, target_scope=0, size_budget=size, min_steps=min_steps, repr=repr)
        return run_deep(take, cfg, count)
    raise ValueError(f"unknown task {task!r}")


def task_runner(task: str, strategy: EvalStrategy, repr: EnvRepr) -> Callable[[list[Term]], list[Term]]:
    if task == "eval":
        return lambda terms: [evaluate(t, strategy, scope=0, repr=repr) for t in terms]
    return lambda terms: [nf(t, strategy, scope=0, repr=repr) for t in terms]


def result_hash(results: Iterable[Term]) -> str:
    h = hashlib.sha256()
    for r in results:
        h.update(to_sexpr(r).encode())
        h.update(b"\n")
    return h.hexdigest()


def _timed(run: Callable[[list[Term]], list[Term]], terms: list[Term], reps: int,
           warmup: int) -> tuple[list[int], list[Term]]:
    results: list[Term] = []
    for _ in range(warmup):
        results = run(terms)
    samples = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        results = run(terms)
        samples.append(time.perf_counter_ns() - start)
    return samples, results


def bench_one(task: str, strategy: EvalStrategy, repr: EnvRepr, terms: list[Term], reps: int,
              warmup: int = WARMUP) -> BenchRecord:
    if reps < 1:
        raise ValueError("reps must be at least 1")
    samples, results = run_deep(_timed, task_runner(task, strategy, repr), terms, reps, warmup)
    return BenchRecord(
        impl=impl_tag(strategy, repr),
        task=task,
        reps=reps,
        median_ns=int(statistics.median(samples)),
        mean_ns=int(statistics.fmean(samples)),
        stddev_ns=int(statistics.stdev(samples)) if reps > 1 else 0,
        result_hash=result_hash(results),
    )


def check_hashes(records: Sequence[BenchRecord]) -> None:
    by_task: dict[str, list[BenchRecord]] = {}
    for r in records:
        by_task.setdefault(r.task, []).append(r)
    for task, rows in by_task.items():
        if len({r.result_hash for r in rows}) > 1:
            raise HashMismatch(task, rows)


def run_bench(tasks: Sequence[str] = TASKS, strategies: Sequence[EvalStrategy] = ALL_STRATEGIES,
              reprs: Sequence[EnvRepr] = (EnvRepr.LAZY,), reps: int = 20, seed: int = 0,
              warmup: int = WARMUP, count: int = RANDOM_COUNT, min_steps: int = RANDOM_MIN_STEPS,
              log: TextIO | None = None) -> list[BenchRecord]:
    """Run every supported (task, strategy, repr) combination and check the
    hashes; raises :class:`HashMismatch` instead of returning bad rows."""
    records = []
    for task in tasks:
        for repr in reprs:
            terms = task_terms(task, repr, seed, count, min_steps)
            for strategy in strategies:
                if not supports(strategy, task):
                    if log:
                        print(f"skipping {strategy} on {task}: not implemented", file=log)
                    continue
                rec = bench_one(task, strategy, repr, terms, reps, warmup)
                if log:
                    print(f"{rec.impl:<18} {task:<7} median {rec.median_ns / 1e6:10.3f} ms", file=log)
                records.append(rec)
    check_hashes(records)
    return records


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())


def read_csv(path: str) -> list[BenchRecord]:
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    return [BenchRecord(r["impl"], r["task"], int(r["reps"]), int(r["median_ns"]), int(r["mean_ns"]),
                        int(r["stddev_ns"]), r["result_hash"]) for r in rows]


def medians(records: Iterable[BenchRecord], task: str) -> dict[str, int]:
    return {r.impl: r.median_ns for r in records if r.task == task}


if __name__ == "__main__":  # pragma: no cover
    write_csv(run_bench(log=sys.stderr), sys.stdout)
