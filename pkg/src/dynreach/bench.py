"""Workload replay and timing across index variants.

A run replays an update stream against one engine — the plain-DFS
baseline (no index, updates cost only the edge-set mutation) or the
condensation index with k interval dimensions — interleaving ``qpu``
random reachability queries after every update.  Per-kind mean latencies
and the total elapsed time feed the queries-per-update comparison.
"""
from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field
from collections.abc import Sequence

from .errors import InputError
from .graph import SccGraph
from .index import ReachabilityIndex
from .labeling import IntervalLabeler, LabelerConfig
from .ops import DeleteEdge, DeleteNode, InsertEdge, InsertNode, Query, UpdateOp

import random

_VARIANT_RE = re.compile(r"^(dfs|dg(\d+))$")

#: Report keys that depend on the wall clock (ignored when diffing runs).
TIMING_FIELDS = frozenset(
    {"total_s", "build_s"}
    | {f"{kind}_mean_ms" for kind in ("q", "ei", "ed", "ni", "nd")}
)

CSV_COLUMNS = (
    "dataset",
    "variant",
    "qpu",
    "seed",
    "warmup",
    "ops",
    "q_count",
    "q_mean_ms",
    "ei_count",
    "ei_mean_ms",
    "ed_count",
    "ed_mean_ms",
    "ni_count",
    "ni_mean_ms",
    "nd_count",
    "nd_mean_ms",
    "query_hits",
    "answers_hash",
    "final_nodes",
    "final_edges",
    "final_dag_nodes",
    "final_largest_scc",
    "build_s",
    "total_s",
)


def parse_variant(variant: str) -> int | None:
    """Map a variant name to its label dimension count (None = baseline)."""
    m = _VARIANT_RE.match(variant)
    if not m:
        raise InputError(f"unknown variant {variant!r} (expected dfs or dg<k>)")
    return None if m.group(1) == "dfs" else int(m.group(2))


@dataclass(frozen=True)
class BenchConfig:
    """One replay: engine variant, queries per update, seed, warmup ops."""

    variant: str = "dg1"
    qpu: int = 0
    seed: int = 0
    warmup: int = 0

    def __post_init__(self) -> None:
        parse_variant(self.variant)
        if self.qpu < 0:
            raise InputError(f"qpu must be >= 0, got {self.qpu}")
        if self.warmup < 0:
            raise InputError(f"warmup must be >= 0, got {self.warmup}")

    @property
    def k(self) -> int | None:
        return parse_variant(self.variant)


@dataclass
class BenchReport:
    """Per-kind counts and mean latencies for one replayed workload."""

    dataset: str
    variant: str
    qpu: int
    seed: int
    warmup: int
    ops: int
    counts: dict[str, int] = field(default_factory=dict)
    mean_ms: dict[str, float] = field(default_factory=dict)
    query_hits: int = 0
    answers_hash: str = ""
    final_nodes: int = 0
    final_edges: int = 0
    final_dag_nodes: int = -1
    final_largest_scc: int = -1
    build_s: float = 0.0
    total_s: float = 0.0

    def to_dict(self) -> dict:
        row: dict = {
            "dataset": self.dataset,
            "variant": self.variant,
            "qpu": self.qpu,
            "seed": self.seed,
            "warmup": self.warmup,
            "ops": self.ops,
            "query_hits": self.query_hits,
            "answers_hash": self.answers_hash,
            "final_nodes": self.final_nodes,
            "final_edges": self.final_edges,
            "final_dag_nodes": self.final_dag_nodes,
            "final_largest_scc": self.final_largest_scc,
            "build_s": self.build_s,
            "total_s": self.total_s,
        }
        for kind in ("q", "ei", "ed", "ni", "nd"):
            row[f"{kind}_count"] = self.counts.get(kind, 0)
            row[f"{kind}_mean_ms"] = self.mean_ms.get(kind, 0.0)
        return row

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def csv_row(self) -> str:
        row = self.to_dict()
        return ",".join(str(row[col]) for col in CSV_COLUMNS)

    @staticmethod
    def csv_header() -> str:
        return ",".join(CSV_COLUMNS)


class DfsBaseline:
    """Index-free engine: updates mutate the edge sets, queries run DFS."""

    def __init__(self, edges: Sequence[tuple[int, int]], num_nodes: int) -> None:
        n = num_nodes
        for u, v in edges:
            if u >= n or v >= n:
                n = max(u, v) + 1
        self._out: list[dict[int, None] | None] = [{} for _ in range(n)]
        self._in: list[dict[int, None] | None] = [{} for _ in range(n)]
        for u, v in edges:
            self._out[u][v] = None
            self._in[v][u] = None
        self._vis = [0] * n
        self._stamp = 0

    def _check(self, u: int) -> None:
        if not (0 <= u < len(self._out)) or self._out[u] is None:
            raise InputError(f"unknown input node {u}")

    def insert_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        self._out[u][v] = None
        self._in[v][u] = None

    def delete_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if v not in self._out[u]:
            raise InputError(f"edge ({u}, {v}) does not exist")
        del self._out[u][v]
        del self._in[v][u]

    def insert_node(self, u: int, out_edges: Sequence[int] = (), in_edges: Sequence[int] = ()) -> None:
        if u >= len(self._out):
            extra = u + 1 - len(self._out)
            self._out.extend([None] * extra)
            self._in.extend([None] * extra)
            self._vis.extend([0] * extra)
        if self._out[u] is not None:
            raise InputError(f"node id {u} already in use")
        self._out[u] = {}
        self._in[u] = {}
        for w in out_edges:
            self.insert_edge(u, w)
        for w in in_edges:
            self.insert_edge(w, u)

    def delete_node(self, u: int) -> None:
        self._check(u)
        for v in list(self._out[u]):
            del self._in[v][u]
        for w in list(self._in[u]):
            del self._out[w][u]
        self._out[u] = self._in[u] = None

    def reachable(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        if u == v:
            return True
        self._stamp += 1
        stamp = self._stamp
        vis = self._vis
        out = self._out
        vis[u] = stamp
        stack = [u]
        while stack:
            w = stack.pop()
            for c in out[w]:
                if c == v:
                    return True
                if vis[c] != stamp:
                    vis[c] = stamp
                    stack.append(c)
        return False


def build_engine(
    variant: str,
    edges: Sequence[tuple[int, int]],
    num_nodes: int,
    seed: int,
):
    k = parse_variant(variant)
    if k is None:
        return DfsBaseline(edges, num_nodes)
    graph = SccGraph.build(edges, num_nodes)
    labeler = IntervalLabeler(LabelerConfig(k=k, seed=seed))
    labeler.initial_labels(graph)
    return ReachabilityIndex(graph, labeler)


class _AliveNodes:
    """Engine-independent view of the current node universe, so query
    endpoints are drawn identically across variants."""

    def __init__(self, num_nodes: int) -> None:
        self.items = list(range(num_nodes))
        self.pos = {u: u for u in self.items}

    def add(self, u: int) -> None:
        self.pos[u] = len(self.items)
        self.items.append(u)

    def remove(self, u: int) -> None:
        pos = self.pos.pop(u)
        last = self.items.pop()
        if last != u:
            self.items[pos] = last
            self.pos[last] = pos

    def sample(self, rng: random.Random) -> int:
        return self.items[rng.randrange(len(self.items))]


def run_bench(
    edges: Sequence[tuple[int, int]],
    num_nodes: int,
    workload: Sequence[UpdateOp],
    cfg: BenchConfig,
    dataset: str = "",
) -> BenchReport:
    """Replay ``workload`` on a freshly built engine and time every op.

    After each update the harness issues ``cfg.qpu`` queries with both
    endpoints drawn uniformly from the current nodes (seeded, identical
    across variants); explicit Query ops in the workload run too.  The
    first ``cfg.warmup`` workload ops are excluded from the per-kind
    stats.  Any failing op aborts with its index in the message.
    """
    t0 = time.perf_counter()
    engine = build_engine(cfg.variant, edges, num_nodes, cfg.seed)
    build_s = time.perf_counter() - t0

    alive = _AliveNodes(num_nodes)
    rng = random.Random(cfg.seed)
    sums = {kind: 0.0 for kind in ("q", "ei", "ed", "ni", "nd")}
    counts = {kind: 0 for kind in ("q", "ei", "ed", "ni", "nd")}
    answers = bytearray()
    hits = 0
    perf = time.perf_counter

    def record(kind: str, dt: float) -> None:
        counts[kind] += 1
        sums[kind] += dt

    t_start = perf()
    for i, op in enumerate(workload):
        hot = i >= cfg.warmup
        try:
            if isinstance(op, InsertEdge):
                t = perf()
                engine.insert_edge(op.u, op.v)
                dt = perf() - t
                if hot:
                    record("ei", dt)
            elif isinstance(op, DeleteEdge):
                t = perf()
                engine.delete_edge(op.u, op.v)
                dt = perf() - t
                if hot:
                    record("ed", dt)
            elif isinstance(op, InsertNode):
                t = perf()
                engine.insert_node(op.u, op.out_edges, op.in_edges)
                dt = perf() - t
                alive.add(op.u)
                if hot:
                    record("ni", dt)
            elif isinstance(op, DeleteNode):
                t = perf()
                engine.delete_node(op.u)
                dt = perf() - t
                alive.remove(op.u)
                if hot:
                    record("nd", dt)
            elif isinstance(op, Query):
                t = perf()
                ans = engine.reachable(op.u, op.v)
                dt = perf() - t
                answers.append(ans)
                hits += ans
                if hot:
                    record("q", dt)
            else:
                raise InputError(f"unsupported op {op!r}")
            if not isinstance(op, Query):
                for _ in range(cfg.qpu):
                    qu = alive.sample(rng)
                    qv = alive.sample(rng)
                    t = perf()
                    ans = engine.reachable(qu, qv)
                    dt = perf() - t
                    answers.append(ans)
                    hits += ans
                    if hot:
                        record("q", dt)
        except InputError as exc:
            raise InputError(f"op {i} ({op!r}) failed: {exc}") from exc
    total_s = perf() - t_start

    report = BenchReport(
        dataset=dataset,
        variant=cfg.variant,
        qpu=cfg.qpu,
        seed=cfg.seed,
        warmup=cfg.warmup,
        ops=len(workload),
        counts=counts,
        mean_ms={k: (sums[k] * 1000.0 / counts[k] if counts[k] else 0.0) for k in counts},
        query_hits=hits,
        answers_hash=hashlib.sha256(bytes(answers)).hexdigest(),
        build_s=build_s,
        total_s=total_s,
    )
    if isinstance(engine, ReachabilityIndex):
        census = engine.census()
        report.final_nodes = census["nodes"]
        report.final_edges = census["edges"]
        report.final_dag_nodes = census["dag_nodes"]
        report.final_largest_scc = census["largest_scc"]
    else:
        report.final_nodes = sum(1 for d in engine._out if d is not None)
        report.final_edges = sum(len(d) for d in engine._out if d)
    return report
