"""Undirected conditional-independence graphs over the data columns.

A graph's edge (i, j) means columns i and j are conditionally *dependent*
given the rest; absence of an edge forces a structural zero in the precision
matrix estimated under the graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .data import FieldGeometry
from .errors import ValidationError
from .geo import great_circle_distance


def _normalize_edges(p: int, edges) -> frozenset:
    out = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if i == j:
            raise ValidationError(f"self-loop ({i}, {i}) is not allowed")
        if not (0 <= i < p and 0 <= j < p):
            raise ValidationError(f"edge ({i}, {j}) out of range for p={p}")
        out.add((min(i, j), max(i, j)))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..p-1 (edges stored as i < j pairs)."""

    p: int
    edges: frozenset

    def __init__(self, p: int, edges=()):
        if p < 0:
            raise ValidationError("vertex count must be non-negative")
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "edges", _normalize_edges(p, edges))

    @cached_property
    def adjacency(self) -> tuple:
        """Per-vertex sorted neighbor tuples."""
        nbrs = [[] for _ in range(self.p)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    def neighbors(self, i: int) -> tuple:
        return self.adjacency[i]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.p, self.p), dtype=bool)
        for i, j in self.edges:
            a[i, j] = a[j, i] = True
        return a

    @classmethod
    def complete(cls, p: int) -> "Graph":
        return cls(p, [(i, j) for i in range(p) for j in range(i + 1, p)])

    @classmethod
    def empty(cls, p: int) -> "Graph":
        return cls(p, ())

    # -- serialization ------------------------------------------------------

    def to_json(self, path=None) -> str:
        payload = {"p": self.p, "edges": sorted(list(e) for e in self.edges)}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_json(cls, source) -> "Graph":
        if hasattr(source, "read"):
            payload = json.load(source)
        else:
            text = str(source)
            if text.lstrip().startswith("{"):
                payload = json.loads(text)
            else:
                with open(text, encoding="utf-8") as fh:
                    payload = json.load(fh)
        try:
            return cls(int(payload["p"]), payload["edges"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed graph JSON: {exc}") from exc


def partial_correlation(omega: np.ndarray, i: int, j: int) -> float:
    """Partial correlation of variables i and j given the rest, from the
    precision matrix: -omega_ij / sqrt(omega_ii * omega_jj)."""
    omega = np.asarray(omega, dtype=float)
    if i == j:
        raise ValidationError("partial correlation requires two distinct indices")
    denom = omega[i, i] * omega[j, j]
    if denom <= 0.0:
        raise ValidationError("precision matrix must have positive diagonal")
    return float(-omega[i, j] / np.sqrt(denom))


def graph_from_precision(omega: np.ndarray, tol: float | None = None) -> Graph:
    """Read the conditional-independence graph off the support of a precision
    matrix: edge (i, j) present iff |omega_ij| > tol (strict).

    tol defaults to 1e-8 * max|omega| (relative threshold).
    """
    omega = np.asarray(omega, dtype=float)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise ValidationError(f"precision matrix must be square, got {omega.shape}")
    scale = max(np.abs(omega).max(initial=0.0), 1.0)
    if np.abs(omega - omega.T).max(initial=0.0) > 1e-10 * scale:
        raise ValidationError("precision matrix is not symmetric (beyond 1e-10 relative)")
    if tol is None:
        tol = 1e-8 * np.abs(omega).max(initial=0.0)
    if tol < 0:
        raise ValidationError("tol must be non-negative")
    p = omega.shape[0]
    iu, ju = np.triu_indices(p, k=1)
    keep = np.abs(omega[iu, ju]) > tol
    return Graph(p, zip(iu[keep], ju[keep]))


def graph_block_stats(graph: Graph, geom: FieldGeometry) -> dict:
    """Degree and neighbor-distance summaries per TT / TP / PP block.

    TT statistics are over temperature vertices (temperature neighbors only),
    TP and PP over proxy vertices (temperature and proxy neighbors
    respectively). For each vertex with at least one in-block neighbor the
    mean great-circle distance to those neighbors is reported; isolated
    vertices get NaN.
    """
    if geom.n_cols != graph.p:
        raise ValidationError("geometry column count does not match graph size")
    is_t = geom.is_temperature()
    blocks = {
        "TT": (np.flatnonzero(is_t), is_t),
        "TP": (np.flatnonzero(~is_t), is_t),
        "PP": (np.flatnonzero(~is_t), ~is_t),
    }
    out = {}
    for name, (vertices, neighbor_sel) in blocks.items():
        degrees = np.zeros(vertices.size)
        mean_dist = np.full(vertices.size, np.nan)
        for k, v in enumerate(vertices):
            nbrs = [u for u in graph.neighbors(int(v)) if neighbor_sel[u]]
            degrees[k] = len(nbrs)
            if nbrs:
                mean_dist[k] = np.mean(
                    [
                        great_circle_distance(
                            (geom.lat[v], geom.lon[v]), (geom.lat[u], geom.lon[u])
                        )
                        for u in nbrs
                    ]
                )
        out[name] = {
            "mean_degree": float(degrees.mean()) if degrees.size else 0.0,
            "sd_degree": float(degrees.std()) if degrees.size else 0.0,
            "degrees": degrees,
            "mean_neighbor_distance_km": mean_dist,
        }
    return out
