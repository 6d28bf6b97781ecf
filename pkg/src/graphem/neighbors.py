"""Geodesic neighborhood graphs over gridded fields.

Five structural variants are supported, differing in how the TT, TP and PP
blocks are wired:

=========  ==================  ==============  ========
variant    TT                  TP              PP
=========  ==================  ==============  ========
neigh      radius              radius          radius
ind_pp     radius              radius          none
car_tp     radius              nearest-T       none
car_tt     grid neighbors      radius          none
car_tt_tp  grid neighbors      nearest-T       none
=========  ==================  ==============  ========

"radius" connects pairs whose great-circle distance is <= radius_km (closed
ball); "nearest-T" connects each proxy to its single closest temperature
column (ties broken by lowest column index); "grid neighbors" connects
temperature columns one grid step apart in latitude or longitude, with
longitude wraparound on full circles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import FieldGeometry
from .errors import ValidationError
from .geo import EARTH_RADIUS_KM, great_circle_distance, pairwise_distances_km
from .graph import Graph

VARIANTS = ("neigh", "ind_pp", "car_tp", "car_tt", "car_tt_tp")

_RULES = {
    "neigh": ("radius", "radius", "radius"),
    "ind_pp": ("radius", "radius", "none"),
    "car_tp": ("radius", "nearest", "none"),
    "car_tt": ("grid", "radius", "none"),
    "car_tt_tp": ("grid", "nearest", "none"),
}


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Radius (km) and structural variant of a neighborhood graph."""

    radius_km: float
    variant: str = "neigh"
    earth_radius_km: float = EARTH_RADIUS_KM

    def __post_init__(self):
        if not self.radius_km > 0:
            raise ValidationError("radius_km must be positive")
        if self.variant not in VARIANTS:
            raise ValidationError(
                f"unknown variant {self.variant!r}; expected one of {VARIANTS}"
            )


def infer_grid_spacing(geom: FieldGeometry) -> float:
    """Smallest positive spacing among temperature latitudes/longitudes."""
    t = geom.temperature_columns
    if t.size < 2:
        raise ValidationError("cannot infer grid spacing from fewer than 2 temperature columns")
    deltas = []
    for coords in (np.unique(geom.lat[t]), np.unique(geom.lon[t])):
        if coords.size > 1:
            deltas.append(np.diff(coords).min())
    if not deltas:
        raise ValidationError("temperature columns do not span a grid")
    return float(min(deltas))


def immediate_grid_neighbors(geom: FieldGeometry, spacing_deg: float) -> Graph:
    """Rook adjacency of the temperature columns on a regular lat/lon grid.

    Each gridpoint is connected to the (at most 4) points one grid step away
    in latitude or longitude. Longitude wraps around when the grid spans the
    full circle. Points off the declared grid (beyond 1e-6 deg) are an error.
    """
    if not spacing_deg > 0:
        raise ValidationError("grid spacing must be positive")
    t_cols = geom.temperature_columns
    if t_cols.size == 0:
        return Graph(geom.n_cols)
    lat = geom.lat[t_cols]
    lon = geom.lon[t_cols]
    lat0, lon0 = lat.min(), lon.min()

    def to_index(values, origin, what):
        idx = np.round((values - origin) / spacing_deg).astype(int)
        resid = np.abs(origin + idx * spacing_deg - values)
        off = np.flatnonzero(resid > 1e-6)
        if off.size:
            raise ValidationError(
                f"column {int(t_cols[off[0]])} {what} {values[off[0]]} is not on a "
                f"{spacing_deg} degree grid"
            )
        return idx

    lat_idx = to_index(lat, lat0, "latitude")
    lon_idx = to_index(lon, lon0, "longitude")

    n_lon_full = 360.0 / spacing_deg
    wraps = abs(n_lon_full - round(n_lon_full)) < 1e-9
    n_lon = int(round(n_lon_full)) if wraps else None

    cell = {}
    for k in range(t_cols.size):
        key = (int(lat_idx[k]), int(lon_idx[k]))
        if key in cell:
            raise ValidationError(
                f"columns {int(t_cols[cell[key]])} and {int(t_cols[k])} occupy the same gridpoint"
            )
        cell[key] = k

    edges = set()
    for (li, lo), k in cell.items():
        steps = [(li + 1, lo), (li - 1, lo), (li, lo + 1), (li, lo - 1)]
        for lj, mo in steps:
            key = (lj, mo)
            if key not in cell and wraps:
                key = (lj, mo % n_lon)
            if key in cell:
                a, b = int(t_cols[k]), int(t_cols[cell[key]])
                if a != b:
                    edges.add((min(a, b), max(a, b)))
    return Graph(geom.n_cols, edges)


def neighborhood_graph(geom: FieldGeometry, spec: NeighborhoodSpec) -> Graph:
    """Build the joint temperature/proxy graph for the requested variant."""
    tt_rule, tp_rule, pp_rule = _RULES[spec.variant]
    t_cols = geom.temperature_columns
    p_cols = geom.proxy_columns
    dist = pairwise_distances_km(geom.lat, geom.lon, spec.earth_radius_km)
    edges = set()

    def radius_edges(cols_a, cols_b):
        for a in cols_a:
            for b in cols_b:
                if a < b and dist[a, b] <= spec.radius_km:
                    edges.add((int(a), int(b)))

    # TT block
    if tt_rule == "radius":
        radius_edges(t_cols, t_cols)
    elif tt_rule == "grid":
        spacing = geom.grid_spacing if geom.grid_spacing is not None else infer_grid_spacing(geom)
        edges |= immediate_grid_neighbors(geom, spacing).edges

    # TP block
    if p_cols.size and tp_rule != "none":
        if tp_rule == "radius":
            for a in t_cols:
                for b in p_cols:
                    if dist[a, b] <= spec.radius_km:
                        edges.add((min(int(a), int(b)), max(int(a), int(b))))
        elif tp_rule == "nearest":
            if t_cols.size == 0:
                raise ValidationError(
                    f"variant {spec.variant!r} requires at least one temperature column"
                )
            for b in p_cols:
                a = t_cols[int(np.argmin(dist[t_cols, b]))]
                edges.add((min(int(a), int(b)), max(int(a), int(b))))

    # PP block
    if pp_rule == "radius":
        radius_edges(p_cols, p_cols)

    return Graph(geom.n_cols, edges)
