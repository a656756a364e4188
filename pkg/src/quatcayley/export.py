"""Text formats: edge lists, DOT, flat key/value records and CSV tables."""

from __future__ import annotations

import csv
import io
from typing import Iterable, TextIO

import numpy as np

from .graph import CayleyGraph, GraphReport

DOT_MAX_VERTICES = 10_000


def edges(g: CayleyGraph) -> np.ndarray:
    """Undirected edges as an ``(m, 2)`` array with ``u < v``, sorted ascending."""
    adj = g.adjacency.astype(np.int64)
    u = np.repeat(np.arange(adj.shape[0], dtype=np.int64), adj.shape[1])
    v = adj.ravel()
    keep = u < v
    e = np.stack([u[keep], v[keep]], axis=1)
    return e[np.lexsort((e[:, 1], e[:, 0]))]


def edgelist_header(g: CayleyGraph) -> dict:
    s = g.spec
    return {
        "d": s.d,
        "p": s.p,
        "q": s.q,
        "group_kind": s.group_kind,
        "legendre_pq": s.legendre_pq,
        "n": g.n,
    }


def write_edgelist(g: CayleyGraph, out: TextIO) -> None:
    for k, v in edgelist_header(g).items():
        out.write(f"# {k}={v}\n")
    np.savetxt(out, edges(g), fmt="%d")


def read_edgelist(src: TextIO) -> tuple[dict, np.ndarray]:
    header: dict[str, str] = {}
    rows = []
    for line in src:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            header[key.strip()] = value.strip()
            continue
        u, v = line.split()
        rows.append((int(u), int(v)))
    return header, np.array(rows, dtype=np.int64).reshape(-1, 2)


def write_dot(g: CayleyGraph, out: TextIO) -> None:
    if g.n > DOT_MAX_VERTICES:
        raise ValueError(f"DOT export is limited to {DOT_MAX_VERTICES} vertices, graph has {g.n}")
    s = g.spec
    out.write(f'graph "G_{s.d}_{s.p}_{s.q}" {{\n')
    for i in range(g.n):
        m00, m01, m10, m11 = (int(x) for x in g.table.elements[i])
        out.write(f'  {i} [label="{m00} {m01}; {m10} {m11}"];\n')
    for u, v in edges(g):
        out.write(f"  {u} -- {v};\n")
    out.write("}\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_kv(record: dict, out: TextIO) -> None:
    for k, v in record.items():
        out.write(f"{k}={_fmt(v)}\n")


def write_csv(records: Iterable[dict], out: TextIO, fieldnames: list[str] | None = None) -> None:
    records = list(records)
    if fieldnames is None:
        fieldnames = list(records[0]) if records else []
    w = csv.DictWriter(out, fieldnames=fieldnames, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: _fmt(v) for k, v in r.items()})


_REPORT_TYPES = {
    "d": int,
    "p": int,
    "q": int,
    "group_kind": str,
    "n": int,
    "degree": int,
    "connected": bool,
    "bipartite": bool,
    "girth": int,
    "girth_method_agreement": bool,
    "main_inequality_rhs": float,
    "main_inequality_ok": bool,
    "moore_rhs": float,
    "moore_ok": bool,
    "girth_ratio": float,
    "legendre_pq": int,
    "theoretical_regime": bool,
    "psl_bipartition": bool,
}


def _parse(value: str, kind):
    if value == "":
        return None
    if kind is bool:
        if value not in ("true", "false"):
            raise ValueError(f"not a boolean: {value!r}")
        return value == "true"
    return kind(value)


def read_reports_csv(src: TextIO) -> list[GraphReport]:
    out = []
    for row in csv.DictReader(src):
        out.append(GraphReport(**{k: _parse(v, _REPORT_TYPES[k]) for k, v in row.items()}))
    return out


def read_kv(src: TextIO) -> dict[str, str]:
    out = {}
    for line in src:
        line = line.rstrip("\n")
        if line:
            k, _, v = line.partition("=")
            out[k] = v
    return out


def report_from_kv(record: dict[str, str]) -> GraphReport:
    return GraphReport(**{k: _parse(v, _REPORT_TYPES[k]) for k, v in record.items()})


def reports_to_csv_text(reports: Iterable[GraphReport]) -> str:
    buf = io.StringIO()
    write_csv([r.as_record() for r in reports], buf, fieldnames=list(_REPORT_TYPES))
    return buf.getvalue()
