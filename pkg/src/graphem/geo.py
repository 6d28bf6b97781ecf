"""Great-circle distances on a spherical Earth (haversine form).

The sphere radius defaults to 6371 km. Haversine is numerically stable for
small separations, symmetric, and zero exactly for identical coordinates.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

EARTH_RADIUS_KM = 6371.0


def great_circle_distance(a, b, earth_radius_km: float = EARTH_RADIUS_KM) -> float:
    """Distance in km between two (lat, lon) points given in degrees."""
    lat1, lon1 = a
    lat2, lon2 = b
    for lat in (lat1, lat2):
        if not -90.0 <= lat <= 90.0:
            raise ValidationError(f"latitude {lat} outside [-90, 90]")
    phi1, phi2 = np.radians(lat1), np.radians(lat2)
    dphi = phi2 - phi1
    dlam = np.radians(lon2 - lon1)
    h = np.sin(dphi / 2.0) ** 2 + np.cos(phi1) * np.cos(phi2) * np.sin(dlam / 2.0) ** 2
    return float(2.0 * earth_radius_km * np.arcsin(np.sqrt(min(h, 1.0))))


def pairwise_distances_km(
    lat: np.ndarray, lon: np.ndarray, earth_radius_km: float = EARTH_RADIUS_KM
) -> np.ndarray:
    """Symmetric matrix of haversine distances for coordinate arrays in degrees."""
    lat = np.asarray(lat, dtype=float)
    lon = np.asarray(lon, dtype=float)
    if lat.size and (lat.min() < -90.0 or lat.max() > 90.0):
        raise ValidationError("latitudes must lie in [-90, 90]")
    phi = np.radians(lat)[:, None]
    lam = np.radians(lon)[:, None]
    h = (
        np.sin((phi - phi.T) / 2.0) ** 2
        + np.cos(phi) * np.cos(phi.T) * np.sin((lam - lam.T) / 2.0) ** 2
    )
    np.clip(h, 0.0, 1.0, out=h)
    d = 2.0 * earth_radius_km * np.arcsin(np.sqrt(h))
    np.fill_diagonal(d, 0.0)
    return d
