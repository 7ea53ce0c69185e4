"""File formats: instance JSON, incidence-graph JSON, query batches, stats CSV.

Instance documents look like

    {"params": {"d", "s", "t", "n", "A", "B", "m"},
     "points": [[ints]],                      # optional, regenerable
     "hyperplanes": [{"a": [ints], "b": int}]}  # optional, regenerable

Graph documents extend the instance schema with "adjacency": [[ints]].
Stats CSV rows use the header n,d,query_id,k,nodes_visited,leaves_scanned,
points_tested; per-instance aggregate rows reuse the schema with query_id
"mean" and "max".
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .geometry import (
    GridPoint,
    Hyperplane,
    InstanceParams,
    generate_hyperplanes,
    generate_points,
)
from .incidence import BoundReport, IncidenceGraph
from .reporting import Halfspace, QueryStats, SimplexQuery

PathLike = Union[str, Path]

STATS_HEADER = ("n", "d", "query_id", "k", "nodes_visited", "leaves_scanned", "points_tested")


@dataclass(frozen=True)
class InstanceDocument:
    """An instance as stored on disk; points/hyperplanes may be absent."""

    params: InstanceParams
    points: Optional[list[GridPoint]]
    hyperplanes: Optional[list[Hyperplane]]

    def materialized_points(self) -> list[GridPoint]:
        return self.points if self.points is not None else generate_points(self.params)

    def materialized_hyperplanes(self) -> list[Hyperplane]:
        if self.hyperplanes is not None:
            return self.hyperplanes
        return generate_hyperplanes(self.params)


def params_to_dict(params: InstanceParams) -> dict:
    return {
        "d": params.d,
        "s": params.s,
        "t": params.t,
        "n": params.n,
        "A": params.A,
        "B": params.B,
        "m": params.m,
    }


def params_from_dict(raw: dict) -> InstanceParams:
    missing = {"d", "s", "t", "n", "A", "B", "m"} - raw.keys()
    if missing:
        raise ValueError(f"params object missing fields: {sorted(missing)}")
    return InstanceParams(
        d=int(raw["d"]),
        s=int(raw["s"]),
        t=int(raw["t"]),
        n=int(raw["n"]),
        A=int(raw["A"]),
        B=int(raw["B"]),
        m=int(raw["m"]),
    )


def instance_to_dict(
    params: InstanceParams,
    points: Optional[Sequence[GridPoint]] = None,
    hyperplanes: Optional[Sequence[Hyperplane]] = None,
) -> dict:
    doc: dict = {"params": params_to_dict(params)}
    if points is not None:
        doc["points"] = [list(p) for p in points]
    if hyperplanes is not None:
        doc["hyperplanes"] = [{"a": list(h.a), "b": h.b} for h in hyperplanes]
    return doc


def instance_from_dict(doc: dict) -> InstanceDocument:
    """Parse an instance document.

    Stored points and hyperplanes are taken verbatim (only shape-checked):
    a corrupted section must load so the verifiers can flag it.
    """
    if "params" not in doc:
        raise ValueError("instance document has no 'params' object")
    params = params_from_dict(doc["params"])
    points = None
    if "points" in doc:
        points = [tuple(int(c) for c in p) for p in doc["points"]]
        if any(len(p) != params.d for p in points):
            raise ValueError(f"every point must have d = {params.d} coordinates")
    hyperplanes = None
    if "hyperplanes" in doc:
        hyperplanes = [
            Hyperplane(a=tuple(int(c) for c in h["a"]), b=int(h["b"]))
            for h in doc["hyperplanes"]
        ]
        if any(h.d != params.d for h in hyperplanes):
            raise ValueError(f"every hyperplane must have d-1 = {params.d - 1} slopes")
    return InstanceDocument(params=params, points=points, hyperplanes=hyperplanes)


def save_instance(
    path: PathLike,
    params: InstanceParams,
    points: Optional[Sequence[GridPoint]] = None,
    hyperplanes: Optional[Sequence[Hyperplane]] = None,
) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(params, points, hyperplanes)))


def load_instance(path: PathLike) -> InstanceDocument:
    return instance_from_dict(json.loads(Path(path).read_text()))


def graph_to_dict(params: InstanceParams, graph: IncidenceGraph) -> dict:
    doc = instance_to_dict(params)
    doc["adjacency"] = [list(row) for row in graph.adjacency]
    return doc


def graph_from_dict(doc: dict) -> tuple[InstanceParams, IncidenceGraph]:
    if "adjacency" not in doc:
        raise ValueError("graph document has no 'adjacency' array")
    params = params_from_dict(doc["params"])
    adjacency = tuple(tuple(int(i) for i in row) for row in doc["adjacency"])
    graph = IncidenceGraph(
        point_count=params.n,
        hyperplane_count=len(adjacency),
        adjacency=adjacency,
    )
    return params, graph


def bound_report_to_dict(report: BoundReport) -> dict:
    return {
        "m": report.m,
        "t": report.t,
        "alpha": report.alpha,
        "beta": report.beta,
        "figure_of_merit": _fraction_to_dict(report.space_figure_of_merit),
        "exponent": _fraction_to_dict(report.predicted_query_exponent),
    }


def _fraction_to_dict(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


def query_batch_to_list(queries: Sequence[SimplexQuery]) -> list:
    return [
        {
            "constraints": [
                {"normal": list(h.normal), "offset": h.offset, "sense": h.sense}
                for h in q.constraints
            ]
        }
        for q in queries
    ]


def query_batch_from_list(raw: list) -> list[SimplexQuery]:
    queries = []
    for entry in raw:
        constraints = tuple(
            Halfspace(
                normal=tuple(int(c) for c in h["normal"]),
                offset=int(h["offset"]),
                sense=str(h["sense"]),
            )
            for h in entry["constraints"]
        )
        queries.append(SimplexQuery(constraints=constraints))
    return queries


def save_query_batch(path: PathLike, queries: Sequence[SimplexQuery]) -> None:
    Path(path).write_text(json.dumps(query_batch_to_list(queries)))


def load_query_batch(path: PathLike) -> list[SimplexQuery]:
    return query_batch_from_list(json.loads(Path(path).read_text()))


def format_stat(value: Union[int, float]) -> str:
    """Integers print bare; non-integral aggregates keep full precision."""
    if isinstance(value, int):
        return str(value)
    return str(int(value)) if float(value).is_integer() else repr(float(value))


class StatsCsvWriter:
    """Streaming stats writer: header up front, rows flushed as they come,
    so a failing benchmark still leaves a usable partial CSV behind."""

    def __init__(self, path: PathLike, comment: Optional[str] = None):
        self._fh = open(path, "w", newline="")
        if comment is not None:
            self._fh.write(f"# {comment}\n")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(STATS_HEADER)
        self._fh.flush()

    def write_rows(self, rows: Sequence[dict]) -> None:
        for row in rows:
            self._writer.writerow(
                [row[key] if key == "query_id" else format_stat(row[key])
                 for key in STATS_HEADER]
            )
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()

    def __enter__(self) -> "StatsCsvWriter":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def write_stats_csv(
    path: PathLike,
    rows: Sequence[dict],
    comment: Optional[str] = None,
) -> None:
    """Write stats rows; an optional leading '#' comment carries the timestamp."""
    with StatsCsvWriter(path, comment=comment) as writer:
        writer.write_rows(rows)


def read_stats_csv(path: PathLike) -> list[dict]:
    """Read stats rows back; '#' comment lines are skipped."""
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or tuple(reader.fieldnames) != STATS_HEADER:
        raise ValueError(
            f"unexpected stats header {reader.fieldnames}, want {list(STATS_HEADER)}"
        )
    return list(reader)


def stats_row(
    n: int, d: int, query_id: Union[int, str], k: Union[int, float],
    stats: Optional[QueryStats] = None, **aggregates: Union[int, float],
) -> dict:
    """One CSV row; pass a QueryStats for per-query rows or aggregates by name."""
    row: dict = {"n": n, "d": d, "query_id": query_id, "k": k}
    if stats is not None:
        row["nodes_visited"] = stats.nodes_visited
        row["leaves_scanned"] = stats.leaves_scanned
        row["points_tested"] = stats.points_tested
    row.update(aggregates)
    return row
