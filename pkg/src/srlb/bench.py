"""Benchmark plans, slab-query sweeps, and the log-log exponent fit."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .errors import InsufficientData
from .geometry import (
    InstanceParams,
    generate_points,
    hyperplane_at,
    largest_valid_richness,
    normalize_params,
)
from .io import stats_row
from .reporting import DEFAULT_LEAF_CAPACITY, build_kdtree, query, slab_query_for

# Above this family size, a seeded uniform sample of hyperplanes is
# benchmarked instead; aggregate statistics stabilize long before that.
MAX_QUERIES_PER_INSTANCE = 512

T_RULE_AUTO = "auto"


@dataclass(frozen=True)
class ExperimentPlan:
    """A bench sweep: one instance per size, all sharing d, t rule, and seed."""

    d: int
    sizes: tuple[int, ...]
    t_rule: str
    seed: int
    leaf_capacity: int = DEFAULT_LEAF_CAPACITY
    out: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("plan needs at least one size")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError(f"sizes must be strictly increasing, got {self.sizes}")
        if self.t_rule != T_RULE_AUTO and not self.t_rule.startswith("fixed:"):
            raise ValueError(f"t rule must be 'auto' or 'fixed:<t>', got {self.t_rule!r}")
        # Every (n, t) pair must normalize; surfaces RangeTooTight up front.
        for n in self.sizes:
            self.resolve_params(n)

    def resolve_params(self, n: int) -> InstanceParams:
        if self.t_rule == T_RULE_AUTO:
            return largest_valid_richness(self.d, n)
        return normalize_params(self.d, n, int(self.t_rule.split(":", 1)[1]))


@dataclass(frozen=True)
class FitResult:
    """Least-squares slope of log2(mean nodes visited) against log2(n)."""

    slope: float
    intercept: float
    r_squared: float
    points_used: int


def select_query_ids(m: int, seed: int, limit: int = MAX_QUERIES_PER_INSTANCE) -> list[int]:
    """All hyperplane indices, or a seeded uniform sample of `limit` of them."""
    if m <= limit:
        return list(range(m))
    return sorted(random.Random(seed).sample(range(m), limit))


def iter_instance_rows(
    params: InstanceParams, seed: int, leaf_capacity: int = DEFAULT_LEAF_CAPACITY
) -> Iterator[dict]:
    """Yield per-query rows in query-id order, then 'mean' and 'max' rows.

    A generator so callers can flush each row before the next query runs;
    a failure mid-instance leaves the completed rows behind.
    """
    points = generate_points(params)
    tree = build_kdtree(points, leaf_capacity=leaf_capacity)
    per_query = []
    for qid in select_query_ids(params.m, seed):
        _, stats = query(tree, slab_query_for(hyperplane_at(params, qid)))
        row = stats_row(params.n, params.d, qid, stats.points_reported, stats)
        per_query.append(row)
        yield row
    yield from aggregate_rows(per_query)


def run_instance(
    params: InstanceParams, seed: int, leaf_capacity: int = DEFAULT_LEAF_CAPACITY
) -> list[dict]:
    """Slab-query every (sampled) family hyperplane; rows ordered by query id."""
    return list(iter_instance_rows(params, seed, leaf_capacity))


def aggregate_rows(per_query_rows: Sequence[dict]) -> list[dict]:
    """One 'mean' and one 'max' row aggregating every stat column."""
    if not per_query_rows:
        return []
    n, d = per_query_rows[0]["n"], per_query_rows[0]["d"]
    cols = ("k", "nodes_visited", "leaves_scanned", "points_tested")
    count = len(per_query_rows)
    means = {c: sum(r[c] for r in per_query_rows) / count for c in cols}
    maxes = {c: max(r[c] for r in per_query_rows) for c in cols}
    return [
        stats_row(n, d, "mean", means["k"],
                  nodes_visited=means["nodes_visited"],
                  leaves_scanned=means["leaves_scanned"],
                  points_tested=means["points_tested"]),
        stats_row(n, d, "max", maxes["k"],
                  nodes_visited=maxes["nodes_visited"],
                  leaves_scanned=maxes["leaves_scanned"],
                  points_tested=maxes["points_tested"]),
    ]


def run_plan(plan: ExperimentPlan) -> list[dict]:
    rows = []
    for n in plan.sizes:
        params = plan.resolve_params(n)
        rows.extend(run_instance(params, plan.seed, plan.leaf_capacity))
    return rows


def fit_loglog(pairs: Sequence[tuple[Union[int, float], float]]) -> FitResult:
    """Ordinary least squares of log2(y) on log2(x).

    The slope is the empirical query exponent; on an exact power law it is
    recovered to floating-point precision.
    """
    if len(pairs) < 3:
        raise InsufficientData(f"need at least 3 aggregate rows, got {len(pairs)}")
    xs = [math.log2(x) for x, _ in pairs]
    ys = [math.log2(y) for _, y in pairs]
    k = len(pairs)
    mean_x, mean_y = sum(xs) / k, sum(ys) / k
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    syy = sum((y - mean_y) ** 2 for y in ys)
    if sxx == 0:
        raise InsufficientData("all sizes identical; cannot fit an exponent")
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    r_squared = 1.0 if syy == 0 else (sxy * sxy) / (sxx * syy)
    return FitResult(slope=slope, intercept=intercept, r_squared=r_squared, points_used=k)


def fit_from_rows(rows: Sequence[dict]) -> FitResult:
    """Fit using the 'mean' aggregate rows of a stats table."""
    pairs = [
        (int(r["n"]), float(r["nodes_visited"]))
        for r in rows
        if str(r["query_id"]) == "mean"
    ]
    return fit_loglog(pairs)
