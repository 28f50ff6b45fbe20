"""Agreement sweeps over coefficient boxes.

Enumerates (a1..ad) in [0, bound)^d lexicographically with a fixed
constant term, runs every applicable decision route on each polynomial
and counts agreement.  Routes per tuple:

    closed      closed-form decider (p = 2 or 3 only)
    alt         second closed form where one applies: the p = 2 larin
                shape, or the p = 3 degree-5 form (constant term 1)
    delta       full-cycle check at the decision level
    full-cycle  full-cycle check at n_max

The constant map (all non-constant coefficients zero) is classified
not-minimal on every route without being built: it is not onto.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .criteria import (
    decision_level,
    minimal_degree5_z3,
    minimal_z2,
    minimal_z2_larin_form,
    minimal_z3,
)
from .dynamics import DEFAULT_TABLE_BOUND, IntPolynomial, is_full_cycle
from .padic import PadicError

# ten million full-cycle checks; larger boxes must opt into sampling
DEFAULT_WORK_BUDGET = 10**7


@dataclass(frozen=True)
class SweepConfig:
    prime: int
    degree: int
    bound: int
    a0: int = 1
    n_max: int | None = None
    table_bound: int = DEFAULT_TABLE_BOUND
    work_budget: int = DEFAULT_WORK_BUDGET
    samples: int | None = None
    seed: int = 0
    workers: int = 1

    def resolved_n_max(self) -> int:
        return self.n_max if self.n_max is not None else decision_level(self.prime)


@dataclass(frozen=True)
class SweepReport:
    config: SweepConfig
    total: int
    agree_minimal: int
    agree_nonminimal: int
    disagreements: int
    # first offending tuple in lexicographic order, constant term included,
    # with the per-route verdicts that split
    first_counterexample: tuple[int, ...] | None
    first_routes: dict | None
    sampled: bool


def _index_to_tail(idx: int, bound: int, degree: int) -> list[int]:
    tail = [0] * degree
    for pos in range(degree - 1, -1, -1):
        idx, tail[pos] = divmod(idx, bound)
    return tail


def _routes_for(cfg: SweepConfig, tail: list[int]) -> dict[str, bool]:
    p = cfg.prime
    n_max = cfg.resolved_n_max()
    delta = decision_level(p)
    if not any(tail):
        # constant map: never onto, no route can call it minimal
        routes = {"delta": False, "full-cycle": False}
        if p == 2:
            routes["closed"] = False
            if cfg.a0 == 1:
                routes["alt"] = False
        elif p == 3:
            routes["closed"] = False
            if cfg.a0 == 1 and cfg.degree <= 5:
                routes["alt"] = False
        return routes
    f = IntPolynomial(p, (cfg.a0, *tail))
    routes = {}
    if p == 2:
        routes["closed"] = minimal_z2(f).minimal
        if cfg.a0 == 1:
            routes["alt"] = minimal_z2_larin_form(f).minimal
    elif p == 3:
        routes["closed"] = minimal_z3(f).minimal
        if cfg.a0 == 1 and cfg.degree <= 5:
            routes["alt"] = minimal_degree5_z3(f).minimal
    routes["delta"] = is_full_cycle(f, delta, table_bound=cfg.table_bound)
    routes["full-cycle"] = (
        routes["delta"]
        if n_max == delta
        else is_full_cycle(f, n_max, table_bound=cfg.table_bound)
    )
    return routes


def _run_chunk(args) -> tuple[int, int, int, int | None, tuple | None, dict | None]:
    cfg, indices = args
    agree_min = agree_non = disagree = 0
    first_idx = None
    first_tuple = None
    first_routes = None
    if isinstance(indices, tuple):
        index_iter = range(*indices)
    else:
        index_iter = indices
    for idx in index_iter:
        tail = _index_to_tail(idx, cfg.bound, cfg.degree)
        routes = _routes_for(cfg, tail)
        values = set(routes.values())
        if len(values) > 1:
            disagree += 1
            if first_idx is None:
                first_idx = idx
                first_tuple = (cfg.a0, *tail)
                first_routes = routes
        elif values == {True}:
            agree_min += 1
        else:
            agree_non += 1
    return agree_min, agree_non, disagree, first_idx, first_tuple, first_routes


def run_sweep(cfg: SweepConfig) -> SweepReport:
    if cfg.degree < 1:
        raise PadicError(f"sweep degree must be >= 1, got {cfg.degree}")
    if cfg.bound < 1:
        raise PadicError(f"sweep bound must be >= 1, got {cfg.bound}")
    if cfg.resolved_n_max() < decision_level(cfg.prime):
        raise PadicError(
            f"n_max below the decision level {decision_level(cfg.prime)} "
            "cannot settle minimality"
        )
    box = cfg.bound**cfg.degree
    sampled = False
    if box > cfg.work_budget:
        if cfg.samples is None:
            raise PadicError(
                f"box of {box} tuples exceeds work budget {cfg.work_budget}; "
                "pass a sample count to sweep by sampling"
            )
        rng = random.Random(cfg.seed)
        count = min(cfg.samples, box)
        chosen = sorted(rng.sample(range(box), count))
        chunks = _split_list(chosen, cfg.workers)
        total = count
        sampled = True
    else:
        chunks = [
            (lo, hi)
            for lo, hi in _split_range(box, cfg.workers)
        ]
        total = box

    jobs = [(cfg, chunk) for chunk in chunks if _chunk_len(chunk) > 0]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_chunk, jobs))
    else:
        results = [_run_chunk(job) for job in jobs]

    agree_min = sum(r[0] for r in results)
    agree_non = sum(r[1] for r in results)
    disagree = sum(r[2] for r in results)
    first_tuple = None
    first_routes = None
    best = None
    for r in results:
        if r[3] is not None and (best is None or r[3] < best):
            best, first_tuple, first_routes = r[3], r[4], r[5]
    return SweepReport(
        config=cfg,
        total=total,
        agree_minimal=agree_min,
        agree_nonminimal=agree_non,
        disagreements=disagree,
        first_counterexample=first_tuple,
        first_routes=first_routes,
        sampled=sampled,
    )


def _split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _split_list(items: list[int], parts: int) -> list[list[int]]:
    parts = max(1, min(parts, len(items))) if items else 1
    step, extra = divmod(len(items), parts)
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append(items[lo:hi])
        lo = hi
    return out


def _chunk_len(chunk) -> int:
    if isinstance(chunk, tuple):
        return chunk[1] - chunk[0]
    return len(chunk)
