"""Two-body circular orbits over a rotating spherical Earth.

Propagation is closed-form: a satellite moves on a circle of radius
R + h at constant angular rate while the Earth rotates underneath it.
Visibility windows (station contacts and AOI access) are found by coarse
sampling followed by bisection of the boundary crossings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .model import (
    EARTH_RADIUS_KM,
    EARTH_ROTATION_RAD_S,
    MU_EARTH_M3_S2,
    AreaOfInterest,
    GeoPoint,
    GroundStationSpec,
    SatelliteSpec,
    ValidationError,
)

DEFAULT_COARSE_STEP_S = 10.0
BISECTION_TOL_S = 0.1


@dataclass(frozen=True)
class Window:
    """Half-open interval of time during which a geometric condition holds."""

    start: float
    end: float
    peak_elevation_deg: Optional[float] = None

    @property
    def duration(self) -> float:
        return self.end - self.start


def orbital_period(altitude_km: float) -> float:
    """Circular-orbit period in seconds from Kepler's third law."""
    if not 300.0 <= altitude_km <= 2000.0:
        raise ValidationError("altitude must be in [300, 2000] km")
    a_m = (EARTH_RADIUS_KM + altitude_km) * 1e3
    return 2.0 * math.pi * math.sqrt(a_m**3 / MU_EARTH_M3_S2)


def inertial_position(sat: SatelliteSpec, t: float | np.ndarray) -> np.ndarray:
    """Geocentric position (km) in the inertial frame; shape (..., 3)."""
    period = orbital_period(sat.altitude_km)
    u = math.radians(sat.initial_arg_lat_deg) + 2.0 * math.pi * np.asarray(t) / period
    inc = math.radians(sat.inclination_deg)
    raan = math.radians(sat.raan_deg)
    r = EARTH_RADIUS_KM + sat.altitude_km
    # Orbit-plane coordinates rotated by inclination then RAAN.
    x_orb, y_orb = np.cos(u), np.sin(u)
    x = x_orb * math.cos(raan) - y_orb * math.cos(inc) * math.sin(raan)
    y = x_orb * math.sin(raan) + y_orb * math.cos(inc) * math.cos(raan)
    z = y_orb * math.sin(inc)
    return r * np.stack([x, y, z], axis=-1)


def subsatellite_track(sat: SatelliteSpec, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ground-track latitude/longitude in degrees for an array of times."""
    period = orbital_period(sat.altitude_km)
    u = math.radians(sat.initial_arg_lat_deg) + 2.0 * math.pi * np.asarray(t, dtype=float) / period
    inc = math.radians(sat.inclination_deg)
    lat = np.arcsin(np.clip(math.sin(inc) * np.sin(u), -1.0, 1.0))
    lon_inertial = math.radians(sat.raan_deg) + np.arctan2(math.cos(inc) * np.sin(u), np.cos(u))
    lon = lon_inertial - EARTH_ROTATION_RAD_S * np.asarray(t, dtype=float)
    lon = (np.degrees(lon) + 180.0) % 360.0 - 180.0
    return np.degrees(lat), lon


def _track_scalar(sat: SatelliteSpec, t: float) -> tuple[float, float]:
    """Scalar ground-track point in radians; used by bisection refinement."""
    period = orbital_period(sat.altitude_km)
    u = math.radians(sat.initial_arg_lat_deg) + 2.0 * math.pi * t / period
    inc = math.radians(sat.inclination_deg)
    lat = math.asin(min(1.0, max(-1.0, math.sin(inc) * math.sin(u))))
    lon = (
        math.radians(sat.raan_deg)
        + math.atan2(math.cos(inc) * math.sin(u), math.cos(u))
        - EARTH_ROTATION_RAD_S * t
    )
    return lat, lon


def _central_angle_scalar(lat1: float, lon1: float, lat2_rad: float, lon2_rad: float) -> float:
    cos_psi = math.sin(lat1) * math.sin(lat2_rad) + math.cos(lat1) * math.cos(lat2_rad) * math.cos(
        lon1 - lon2_rad
    )
    return math.acos(min(1.0, max(-1.0, cos_psi)))


def subsatellite_point(sat: SatelliteSpec, t: float) -> GeoPoint:
    """Point on the Earth directly below the satellite at time ``t``."""
    lat, lon = _track_scalar(sat, t)
    return GeoPoint(math.degrees(lat), math.degrees(lon))


def _central_angle(lat1: np.ndarray, lon1: np.ndarray, lat2: float, lon2: float) -> np.ndarray:
    """Great-circle central angle (radians) between track points and a fixed point."""
    p1, p2 = np.radians(lat1), math.radians(lat2)
    dlon = np.radians(lon1) - math.radians(lon2)
    cos_psi = np.sin(p1) * math.sin(p2) + np.cos(p1) * math.cos(p2) * np.cos(dlon)
    return np.arccos(np.clip(cos_psi, -1.0, 1.0))


def _elevation_from_angle(psi: np.ndarray, altitude_km: float) -> np.ndarray:
    k = EARTH_RADIUS_KM / (EARTH_RADIUS_KM + altitude_km)
    return np.degrees(np.arctan2(np.cos(psi) - k, np.sin(psi)))


def elevation_angle(sat: SatelliteSpec, station: GroundStationSpec, t: float | np.ndarray) -> float | np.ndarray:
    """Elevation of the satellite above the station's local horizon, degrees."""
    lat, lon = subsatellite_track(sat, np.atleast_1d(np.asarray(t, dtype=float)))
    psi = _central_angle(lat, lon, station.location.lat, station.location.lon)
    el = _elevation_from_angle(psi, sat.altitude_km)
    return float(el[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else el


def ground_distance_km(sat: SatelliteSpec, point: GeoPoint, t: float | np.ndarray) -> float | np.ndarray:
    """Great-circle distance from the subsatellite point to ``point``, km."""
    lat, lon = subsatellite_track(sat, np.atleast_1d(np.asarray(t, dtype=float)))
    d = EARTH_RADIUS_KM * _central_angle(lat, lon, point.lat, point.lon)
    return float(d[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else d


def _coarse_grid(t0: float, t1: float, step: float) -> np.ndarray:
    """Sample times: multiples of ``step`` anchored at absolute zero, plus endpoints.

    Anchoring to absolute multiples makes window extraction invariant under
    subdivision of the horizon at grid-aligned points.
    """
    first = math.ceil(t0 / step) * step
    interior = np.arange(first, t1, step)
    grid = np.concatenate(([t0], interior, [t1]))
    # Drop duplicates introduced when an endpoint is itself a multiple of step.
    return np.unique(grid)


def _bisect_crossing(margin: Callable[[float], float], lo: float, hi: float) -> float:
    """Refine the sign change of ``margin`` inside [lo, hi] to BISECTION_TOL_S."""
    f_lo = margin(lo)
    while hi - lo > BISECTION_TOL_S:
        mid = 0.5 * (lo + hi)
        if (margin(mid) >= 0.0) == (f_lo >= 0.0):
            lo = mid
            f_lo = margin(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _find_windows(
    vector_margin: Callable[[np.ndarray], np.ndarray],
    scalar_margin: Callable[[float], float],
    t0: float,
    t1: float,
    coarse_step: float,
) -> list[tuple[float, float, float]]:
    """Maximal intervals where margin >= 0; returns (start, end, peak margin)."""
    if t0 >= t1:
        raise ValidationError("horizon must satisfy t0 < t1")
    if coarse_step <= 0:
        raise ValidationError("coarse step must be positive")
    grid = _coarse_grid(t0, t1, coarse_step)
    m = vector_margin(grid)
    inside = m >= 0.0

    windows: list[tuple[float, float, float]] = []
    i = 0
    n = len(grid)
    while i < n:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and inside[j + 1]:
            j += 1
        start = float(grid[i]) if i == 0 else _bisect_crossing(scalar_margin, float(grid[i - 1]), float(grid[i]))
        end = float(grid[j]) if j == n - 1 else _bisect_crossing(scalar_margin, float(grid[j]), float(grid[j + 1]))
        peak = float(np.max(m[i : j + 1]))
        if end > start:
            windows.append((start, end, peak))
        i = j + 1
    return windows


def contact_windows(
    sat: SatelliteSpec,
    station: GroundStationSpec,
    horizon: tuple[float, float],
    coarse_step: float = DEFAULT_COARSE_STEP_S,
) -> list[Window]:
    """Intervals where the satellite sits above the station's elevation mask.

    Boundaries are refined by bisection to 0.1 s; windows are sorted,
    disjoint and clipped to the horizon.  Passes shorter than the coarse
    step can be missed; at LEO altitudes with the default 10 s step no
    pass above a practical mask is short enough for that to happen.
    """
    t0, t1 = horizon
    mask = station.min_elevation_deg
    stn_lat = math.radians(station.location.lat)
    stn_lon = math.radians(station.location.lon)
    k = EARTH_RADIUS_KM / (EARTH_RADIUS_KM + sat.altitude_km)

    def vec(times: np.ndarray) -> np.ndarray:
        lat, lon = subsatellite_track(sat, times)
        psi = _central_angle(lat, lon, station.location.lat, station.location.lon)
        return _elevation_from_angle(psi, sat.altitude_km) - mask

    def scal(t: float) -> float:
        lat, lon = _track_scalar(sat, t)
        psi = _central_angle_scalar(lat, lon, stn_lat, stn_lon)
        return math.degrees(math.atan2(math.cos(psi) - k, math.sin(psi))) - mask

    return [
        Window(start, end, peak_elevation_deg=peak + mask)
        for start, end, peak in _find_windows(vec, scal, t0, t1, coarse_step)
    ]


def access_windows(
    sat: SatelliteSpec,
    aoi: AreaOfInterest,
    horizon: tuple[float, float],
    coarse_step: float = DEFAULT_COARSE_STEP_S,
) -> list[Window]:
    """Intervals where the AOI is within reach of the imaging swath.

    Access is all-or-nothing: the AOI is reachable when the subsatellite
    point lies within swath/2 + AOI radius of its center.
    """
    t0, t1 = horizon
    reach = sat.swath_km / 2.0 + aoi.radius_km
    aoi_lat = math.radians(aoi.center.lat)
    aoi_lon = math.radians(aoi.center.lon)

    def vec(times: np.ndarray) -> np.ndarray:
        lat, lon = subsatellite_track(sat, times)
        psi = _central_angle(lat, lon, aoi.center.lat, aoi.center.lon)
        return reach - EARTH_RADIUS_KM * psi

    def scal(t: float) -> float:
        lat, lon = _track_scalar(sat, t)
        return reach - EARTH_RADIUS_KM * _central_angle_scalar(lat, lon, aoi_lat, aoi_lon)

    return [Window(start, end) for start, end, _ in _find_windows(vec, scal, t0, t1, coarse_step)]
