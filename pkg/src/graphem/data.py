"""Incomplete data matrices, field geometry and first-moment estimates.

Conventions used throughout the package:

* A data matrix is n rows (time steps) by p columns (field / proxy
  variables); the boolean mask marks observed entries (True = observed).
* Covariances are normalized by 1/n, not 1/(n-1).
* On disk, missing values are an empty CSV cell or the literal "NaN"
  (case-insensitive); the serializer always writes "NaN".
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .linalg import check_symmetric

KIND_TEMPERATURE = "temperature"
KIND_PROXY = "proxy"
_KINDS = (KIND_TEMPERATURE, KIND_PROXY)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DataMatrix:
    """An n x p matrix with an explicit missingness mask (True = observed).

    `values` holds NaN at unobserved entries. Instances are immutable and
    safe to share across threads.
    """

    values: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        mask = np.asarray(self.mask, dtype=bool)
        if values.ndim != 2:
            raise ValidationError(f"values must be 2-d, got shape {values.shape}")
        if mask.shape != values.shape:
            raise ValidationError(
                f"mask shape {mask.shape} does not match values shape {values.shape}"
            )
        observed_per_col = mask.sum(axis=0)
        empty = np.flatnonzero(observed_per_col == 0)
        if empty.size:
            raise ValidationError(
                f"column {int(empty[0])} has no observed entries"
            )
        if not np.all(np.isfinite(values[mask])):
            raise ValidationError("observed entries must be finite")
        values = values.copy()
        values[~mask] = np.nan
        object.__setattr__(self, "values", _readonly(values))
        object.__setattr__(self, "mask", _readonly(mask))

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    @property
    def n_missing(self) -> int:
        return int((~self.mask).sum())

    def with_values(self, values: np.ndarray) -> "DataMatrix":
        """Same mask, new values (used by resampling and masking helpers)."""
        return DataMatrix(values, self.mask.copy())


@dataclass(frozen=True)
class FieldGeometry:
    """Per-column metadata: variable kind and coordinates.

    Columns are partitioned into the temperature set (T) and the proxy
    set (P); the partition drives the TT / TP / PP block structure used by
    graph construction and penalized estimation.
    """

    kinds: tuple
    lat: np.ndarray
    lon: np.ndarray
    names: tuple = ()
    grid_spacing: float | None = None

    def __post_init__(self):
        kinds = tuple(self.kinds)
        lat = np.asarray(self.lat, dtype=float)
        lon = np.asarray(self.lon, dtype=float)
        if not (len(kinds) == lat.size == lon.size):
            raise ValidationError("kinds, lat and lon must have equal length")
        bad = [k for k in kinds if k not in _KINDS]
        if bad:
            raise ValidationError(f"unknown column kind {bad[0]!r}")
        if lat.size and (lat.min() < -90.0 or lat.max() > 90.0):
            raise ValidationError("latitudes must lie in [-90, 90]")
        if lon.size and (lon.min() < -180.0 or lon.max() >= 180.0):
            raise ValidationError("longitudes must lie in [-180, 180)")
        names = tuple(self.names) if self.names else tuple(f"c{i}" for i in range(len(kinds)))
        if len(names) != len(kinds):
            raise ValidationError("names length does not match column count")
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "lat", _readonly(lat))
        object.__setattr__(self, "lon", _readonly(lon))
        object.__setattr__(self, "names", names)

    @property
    def n_cols(self) -> int:
        return len(self.kinds)

    @property
    def temperature_columns(self) -> np.ndarray:
        return np.flatnonzero([k == KIND_TEMPERATURE for k in self.kinds])

    @property
    def proxy_columns(self) -> np.ndarray:
        return np.flatnonzero([k == KIND_PROXY for k in self.kinds])

    def is_temperature(self) -> np.ndarray:
        return np.asarray([k == KIND_TEMPERATURE for k in self.kinds], dtype=bool)

    @classmethod
    def all_temperature(cls, p: int, lat=None, lon=None) -> "FieldGeometry":
        """Geometry of p temperature columns (synthetic / test use)."""
        return cls(
            kinds=(KIND_TEMPERATURE,) * p,
            lat=np.zeros(p) if lat is None else lat,
            lon=np.zeros(p) if lon is None else lon,
        )


@dataclass(frozen=True)
class MeanCov:
    """Mean vector and covariance matrix pair (mu, sigma).

    sigma must be symmetric to 1e-12 relative tolerance. Positive
    definiteness is *not* enforced here: legitimate outputs (a single-row
    sample covariance, say) are only positive semidefinite. Callers that
    need strict PD check at the point of use.
    """

    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        sigma = np.asarray(self.sigma, dtype=float)
        if mu.ndim != 1:
            raise ValidationError("mu must be a vector")
        check_symmetric(sigma, rtol=1e-12, what="sigma")
        if sigma.shape[0] != mu.size:
            raise ValidationError("mu and sigma dimensions do not match")
        object.__setattr__(self, "mu", _readonly(mu))
        object.__setattr__(self, "sigma", _readonly(sigma))

    @property
    def p(self) -> int:
        return self.mu.size


# ---------------------------------------------------------------------------
# operations


def column_mean_impute(x: DataMatrix) -> np.ndarray:
    """Replace each missing entry by the mean of its column's observed entries.

    Idempotent: observed entries are returned unchanged.
    """
    values = x.values.copy()
    with np.errstate(invalid="ignore"):
        col_means = np.nansum(np.where(x.mask, values, 0.0), axis=0) / x.mask.sum(axis=0)
    rows, cols = np.nonzero(~x.mask)
    values[rows, cols] = col_means[cols]
    return values


def sample_mean_cov(completed: np.ndarray) -> MeanCov:
    """Sample mean and 1/n-normalized sample covariance of a completed matrix."""
    completed = np.asarray(completed, dtype=float)
    if completed.ndim != 2 or completed.shape[0] == 0:
        raise ValidationError("need at least one row to compute sample statistics")
    n = completed.shape[0]
    mu = completed.mean(axis=0)
    centered = completed - mu
    sigma = centered.T @ centered / n
    return MeanCov(mu, 0.5 * (sigma + sigma.T))


# ---------------------------------------------------------------------------
# file formats


def _parse_cell(text: str, row: int, col: int) -> tuple[float, bool]:
    stripped = text.strip()
    if stripped == "" or stripped.lower() == "nan":
        return math.nan, False
    try:
        return float(stripped), True
    except ValueError as exc:
        raise ValidationError(
            f"cannot parse value {text!r} at row {row}, column {col}"
        ) from exc


def load_matrix(data_path, geometry_path) -> tuple[DataMatrix, FieldGeometry]:
    """Load a data CSV (header row, one row per time step) and geometry JSON.

    The geometry file is a JSON array of {name, kind, lat, lon} objects whose
    order must match the CSV header.
    """
    data_path = Path(data_path)
    geometry_path = Path(geometry_path)
    with open(data_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{data_path}: empty data file") from None
        header = [h.strip() for h in header]
        values, mask = [], []
        for i, row in enumerate(reader):
            if len(row) != len(header):
                raise ValidationError(
                    f"{data_path}: row {i} has {len(row)} cells, header has {len(header)}"
                )
            parsed = [_parse_cell(cell, i, j) for j, cell in enumerate(row)]
            values.append([v for v, _ in parsed])
            mask.append([ok for _, ok in parsed])

    with open(geometry_path, encoding="utf-8") as fh:
        try:
            entries = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{geometry_path}: invalid JSON ({exc})") from exc
    if not isinstance(entries, list):
        raise ValidationError(f"{geometry_path}: expected a JSON array of column objects")
    if len(entries) != len(header):
        raise ValidationError(
            f"geometry lists {len(entries)} columns but data header has {len(header)}"
        )
    for k, entry in enumerate(entries):
        for key in ("name", "kind", "lat", "lon"):
            if key not in entry:
                raise ValidationError(f"{geometry_path}: column {k} is missing {key!r}")
    names = [str(e["name"]) for e in entries]
    if names != header:
        raise ValidationError(
            "geometry column names do not match the data header "
            f"(first difference at column {next(i for i, (a, b) in enumerate(zip(names, header)) if a != b)})"
        )
    geometry = FieldGeometry(
        kinds=tuple(str(e["kind"]) for e in entries),
        lat=np.array([float(e["lat"]) for e in entries]),
        lon=np.array([float(e["lon"]) for e in entries]),
        names=tuple(names),
    )
    matrix = DataMatrix(np.asarray(values, dtype=float), np.asarray(mask, dtype=bool))
    return matrix, geometry


def format_float(v: float) -> str:
    """Shortest round-trip decimal form; used by every CSV writer."""
    if math.isnan(v):
        return "NaN"
    return repr(float(v))


def save_matrix(x: DataMatrix, geometry: FieldGeometry, data_path, geometry_path=None) -> None:
    """Write a DataMatrix (and optionally its geometry) in the load_matrix formats.

    Values are written in shortest round-trip form so a save/load cycle is
    bit-exact; missing entries are written as "NaN".
    """
    if geometry.n_cols != x.n_cols:
        raise ValidationError("geometry column count does not match the matrix")
    with open(data_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(geometry.names)
        for i in range(x.n_rows):
            writer.writerow(
                [format_float(x.values[i, j]) if x.mask[i, j] else "NaN" for j in range(x.n_cols)]
            )
    if geometry_path is not None:
        save_geometry(geometry, geometry_path)


def save_geometry(geometry: FieldGeometry, path) -> None:
    entries = [
        {"name": geometry.names[j], "kind": geometry.kinds[j],
         "lat": geometry.lat[j], "lon": geometry.lon[j]}
        for j in range(geometry.n_cols)
    ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(entries, fh, indent=2, sort_keys=True)
        fh.write("\n")
