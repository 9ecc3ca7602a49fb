"""Text formats for graphs and workloads.

Graph files: one ``SRC DST`` pair of base-10 ids per line; ``#`` starts a
comment, and an optional ``#nodes N`` header declares isolated nodes.  The
node universe is [0, max id seen] extended by the header.

Workload files: one op per line —
``IE u v`` | ``DE u v`` | ``DN u`` | ``Q u v`` |
``IN u O v1 v2 ... I w1 w2 ...`` where the ``O``/``I`` markers introduce
the outgoing and incoming endpoint lists (either may be empty).
"""
from __future__ import annotations

import os
from collections.abc import Iterable, Sequence

from .errors import InputError
from .ops import DeleteEdge, DeleteNode, InsertEdge, InsertNode, Query, UpdateOp


def _parse_id(token: str, where: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise InputError(f"{where}: expected an integer id, got {token!r}") from None
    if value < 0:
        raise InputError(f"{where}: node ids must be non-negative, got {value}")
    return value


def parse_graph_text(text: str, name: str = "<graph>") -> tuple[list[tuple[int, int]], int]:
    """Parse graph text into (edges, num_nodes)."""
    edges: list[tuple[int, int]] = []
    declared = 0
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        where = f"{name}:{lineno}"
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "nodes":
                if len(parts) != 2:
                    raise InputError(f"{where}: malformed #nodes header")
                declared = max(declared, _parse_id(parts[1], where))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"{where}: expected 'SRC DST', got {raw!r}")
        u = _parse_id(parts[0], where)
        v = _parse_id(parts[1], where)
        edges.append((u, v))
        if u > max_id:
            max_id = u
        if v > max_id:
            max_id = v
    return edges, max(declared, max_id + 1)


def parse_graph(path: str | os.PathLike) -> tuple[list[tuple[int, int]], int]:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read(), name=str(path))


def serialize_graph(edges: Iterable[tuple[int, int]], num_nodes: int) -> str:
    lines = [f"#nodes {num_nodes}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def write_graph(path: str | os.PathLike, edges: Iterable[tuple[int, int]], num_nodes: int) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(edges, num_nodes))


def parse_workload_text(text: str, name: str = "<workload>") -> list[UpdateOp]:
    ops: list[UpdateOp] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{name}:{lineno}"
        parts = line.split()
        tag = parts[0]
        if tag in ("IE", "DE", "Q"):
            if len(parts) != 3:
                raise InputError(f"{where}: {tag} takes exactly two ids")
            u = _parse_id(parts[1], where)
            v = _parse_id(parts[2], where)
            cls = {"IE": InsertEdge, "DE": DeleteEdge, "Q": Query}[tag]
            ops.append(cls(u, v))
        elif tag == "DN":
            if len(parts) != 2:
                raise InputError(f"{where}: DN takes exactly one id")
            ops.append(DeleteNode(_parse_id(parts[1], where)))
        elif tag == "IN":
            if len(parts) < 4 or parts[2] != "O":
                raise InputError(f"{where}: IN needs 'IN u O ... I ...'")
            u = _parse_id(parts[1], where)
            try:
                i_at = parts.index("I", 3)
            except ValueError:
                raise InputError(f"{where}: IN line is missing the 'I' marker") from None
            outs = tuple(_parse_id(tok, where) for tok in parts[3:i_at])
            ins = tuple(_parse_id(tok, where) for tok in parts[i_at + 1 :])
            ops.append(InsertNode(u, outs, ins))
        else:
            raise InputError(f"{where}: unknown op tag {tag!r}")
    return ops


def parse_workload(path: str | os.PathLike) -> list[UpdateOp]:
    with open(path, encoding="utf-8") as fh:
        return parse_workload_text(fh.read(), name=str(path))


def serialize_workload(ops: Sequence[UpdateOp]) -> str:
    lines = []
    for op in ops:
        if isinstance(op, InsertEdge):
            lines.append(f"IE {op.u} {op.v}")
        elif isinstance(op, DeleteEdge):
            lines.append(f"DE {op.u} {op.v}")
        elif isinstance(op, DeleteNode):
            lines.append(f"DN {op.u}")
        elif isinstance(op, Query):
            lines.append(f"Q {op.u} {op.v}")
        elif isinstance(op, InsertNode):
            outs = " ".join(str(x) for x in op.out_edges)
            ins = " ".join(str(x) for x in op.in_edges)
            lines.append(f"IN {op.u} O{' ' + outs if outs else ''} I{' ' + ins if ins else ''}")
        else:
            raise InputError(f"cannot serialize op {op!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def write_workload(path: str | os.PathLike, ops: Sequence[UpdateOp]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_workload(ops))
