"""Independent reference implementations used to cross-check the index.

Deliberately different machinery from the package: components come from
Kosaraju's two-pass sweep, reachability from a fresh DFS over a plain
adjacency dict, and label checks from dense numpy comparisons.
"""
from __future__ import annotations

from collections.abc import Iterable

import numpy as np


def kosaraju_partition(
    nodes: Iterable[int], edges: Iterable[tuple[int, int]]
) -> set[frozenset[int]]:
    """SCC partition via two DFS passes (finish order, then transpose sweep)."""
    nodes = list(nodes)
    member = set(nodes)
    out: dict[int, list[int]] = {u: [] for u in nodes}
    inc: dict[int, list[int]] = {u: [] for u in nodes}
    for u, v in edges:
        if u != v and u in member and v in member:
            out[u].append(v)
            inc[v].append(u)
    finish: list[int] = []
    seen: set[int] = set()
    for root in nodes:
        if root in seen:
            continue
        seen.add(root)
        stack: list[tuple[int, int]] = [(root, 0)]
        while stack:
            w, i = stack.pop()
            kids = out[w]
            while i < len(kids) and kids[i] in seen:
                i += 1
            if i < len(kids):
                stack.append((w, i + 1))
                seen.add(kids[i])
                stack.append((kids[i], 0))
            else:
                finish.append(w)
    comps: set[frozenset[int]] = set()
    assigned: set[int] = set()
    for root in reversed(finish):
        if root in assigned:
            continue
        comp = [root]
        assigned.add(root)
        stack2 = [root]
        while stack2:
            w = stack2.pop()
            for p in inc[w]:
                if p not in assigned:
                    assigned.add(p)
                    comp.append(p)
                    stack2.append(p)
        comps.add(frozenset(comp))
    return comps


def edge_reach(edges: Iterable[tuple[int, int]], u: int, v: int) -> bool:
    """Plain DFS reachability over an edge list."""
    if u == v:
        return True
    out: dict[int, list[int]] = {}
    for a, b in edges:
        out.setdefault(a, []).append(b)
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for c in out.get(w, ()):
            if c == v:
                return True
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def adjacency_reach(out: dict[int, set[int]], u: int, v: int) -> bool:
    """DFS reachability over a dict-of-sets adjacency (mirror graphs)."""
    if u == v:
        return True
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for c in out.get(w, ()):
            if c == v:
                return True
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def reachable_pairs(nodes: list[int], out: dict[int, set[int]]) -> dict[int, set[int]]:
    """Full reachable set per node (includes the node itself)."""
    result: dict[int, set[int]] = {}
    for u in nodes:
        seen = {u}
        stack = [u]
        while stack:
            w = stack.pop()
            for c in out.get(w, ()):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        result[u] = seen
    return result


class Mirror:
    """Trusted shadow of the evolving input graph, maintained op by op."""

    def __init__(self, edges: Iterable[tuple[int, int]], num_nodes: int):
        self.nodes: set[int] = set(range(num_nodes))
        self.out: dict[int, set[int]] = {u: set() for u in self.nodes}
        self.inc: dict[int, set[int]] = {u: set() for u in self.nodes}
        for u, v in edges:
            self.out[u].add(v)
            self.inc[v].add(u)

    def insert_edge(self, u: int, v: int) -> None:
        self.out[u].add(v)
        self.inc[v].add(u)

    def delete_edge(self, u: int, v: int) -> None:
        self.out[u].discard(v)
        self.inc[v].discard(u)

    def insert_node(self, u: int, outs: Iterable[int], ins: Iterable[int]) -> None:
        self.nodes.add(u)
        self.out[u] = set()
        self.inc[u] = set()
        for w in outs:
            self.insert_edge(u, w)
        for w in ins:
            self.insert_edge(w, u)

    def delete_node(self, u: int) -> None:
        for v in list(self.out[u]):
            self.delete_edge(u, v)
        for w in list(self.inc[u]):
            self.delete_edge(w, u)
        self.nodes.discard(u)
        del self.out[u]
        del self.inc[u]

    def edge_list(self) -> list[tuple[int, int]]:
        return [(u, v) for u, targets in self.out.items() for v in targets]

    def partition(self) -> set[frozenset[int]]:
        return kosaraju_partition(self.nodes, self.edge_list())

    def reach(self, u: int, v: int) -> bool:
        return adjacency_reach(self.out, u, v)


def check_label_invariants(index) -> None:
    """Edge-wise containment on every DAG edge plus exhaustive label
    soundness (reachability implies subsumption) over all component pairs."""
    g = index.graph
    k = index.k
    if k == 0:
        return
    lab = index.labeler
    nodes = g.current_dag_nodes()
    pos = {s: i for i, s in enumerate(nodes)}
    n = len(nodes)
    adj = np.zeros((n, n), dtype=bool)
    for s in nodes:
        i = pos[s]
        bs, es = [], []
        for d in range(k):
            bs.append(lab._b[d][s])
            es.append(lab._e[d][s])
        for t in g.dag_children(s):
            adj[i, pos[t]] = True
            for d in range(k):
                bt, et = lab._b[d][t], lab._e[d][t]
                assert bs[d] <= bt and es[d] >= et + 1, (
                    f"containment broken on edge ({s}, {t}) dim {d}: "
                    f"[{bs[d]}, {es[d]}] vs [{bt}, {et}]"
                )
    if n == 0:
        return
    closure = adj.copy()
    while True:
        grown = closure | ((closure.astype(np.uint8) @ closure.astype(np.uint8)) > 0)
        if (grown == closure).all():
            break
        closure = grown
    b = np.array([[lab._b[d][s] for s in nodes] for d in range(k)], dtype=np.int64)
    e = np.array([[lab._e[d][s] for s in nodes] for d in range(k)], dtype=np.int64)
    covers = ((b[:, :, None] <= b[:, None, :]) & (e[:, None, :] <= e[:, :, None])).all(axis=0)
    bad = closure & ~covers
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise AssertionError(
            f"label soundness broken: {nodes[i]} reaches {nodes[j]} but "
            f"{index.label_of(nodes[i])} does not subsume {index.label_of(nodes[j])}"
        )
