"""Fire-event ground truth and the external monitoring chain.

Events are generated as independent per-AOI Poisson processes and placed
uniformly inside each AOI disc; burn areas are log-normal.  Events are
static discs: the simulator studies information latency, not fire spread.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .model import (
    EARTH_RADIUS_KM,
    AreaOfInterest,
    EventModel,
    FireEvent,
    GeoPoint,
    ValidationError,
)

SECONDS_PER_DAY = 86400.0

EVENT_TRACE_FIELDS = ["id", "lat", "lon", "start_s", "area_ha"]


def _destination(origin: GeoPoint, bearing_rad: float, distance_km: float) -> GeoPoint:
    """Great-circle destination point on the spherical Earth."""
    delta = distance_km / EARTH_RADIUS_KM
    lat1 = math.radians(origin.lat)
    lon1 = math.radians(origin.lon)
    lat2 = math.asin(
        math.sin(lat1) * math.cos(delta)
        + math.cos(lat1) * math.sin(delta) * math.cos(bearing_rad)
    )
    lon2 = lon1 + math.atan2(
        math.sin(bearing_rad) * math.sin(delta) * math.cos(lat1),
        math.cos(delta) - math.sin(lat1) * math.sin(lat2),
    )
    return GeoPoint(math.degrees(lat2), math.degrees(lon2))


def generate_fire_events(
    model: EventModel,
    aois: Sequence[AreaOfInterest],
    horizon_s: float,
    stream_for_aoi,
) -> list[FireEvent]:
    """Draw ground-truth events; fully determined by the per-AOI streams.

    ``stream_for_aoi`` maps an AOI id to an independent ``numpy.random.Generator``
    so that the events of one AOI never depend on how many were drawn for
    another.
    """
    if horizon_s <= 0:
        raise ValidationError("horizon must be positive")
    out: list[FireEvent] = []
    lam_per_aoi = model.rate_per_aoi_per_day * horizon_s / SECONDS_PER_DAY
    for aoi in aois:
        rng: np.random.Generator = stream_for_aoi(aoi.id)
        n = int(rng.poisson(lam_per_aoi))
        starts = np.sort(rng.uniform(0.0, horizon_s, size=n))
        for j, start in enumerate(starts):
            bearing = rng.uniform(0.0, 2.0 * math.pi)
            dist = aoi.radius_km * math.sqrt(rng.uniform())
            area = float(rng.lognormal(model.area_log_mean, model.area_log_sd))
            out.append(
                FireEvent(
                    id=f"fire-{aoi.id}-{j:03d}",
                    location=_destination(aoi.center, bearing, dist),
                    start=float(start),
                    area_ha=area,
                )
            )
    out.sort(key=lambda e: (e.start, e.id))
    return out


def monitoring_detection_time(event: FireEvent, monitoring_delay_s: float) -> float:
    """Instant at which the external monitoring chain can report the event."""
    if monitoring_delay_s < 0:
        raise ValidationError("monitoring delay must be non-negative")
    return event.start + monitoring_delay_s


def is_detectable(area_ha: float, mmu_ha: float) -> bool:
    """An event can be mapped iff its area reaches the minimum mapping unit."""
    if area_ha <= 0 or mmu_ha <= 0:
        raise ValidationError("area and mmu must be positive")
    return area_ha >= mmu_ha


def write_event_trace(path: str | Path, fire_events: Iterable[FireEvent]) -> None:
    """Write a fixed event trace (CSV: id, lat, lon, start_s, area_ha)."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(EVENT_TRACE_FIELDS)
        for e in fire_events:
            w.writerow(
                [e.id, f"{e.location.lat:.6f}", f"{e.location.lon:.6f}",
                 f"{e.start:.3f}", f"{e.area_ha:.4f}"]
            )


def read_event_trace(path: str | Path) -> list[FireEvent]:
    """Read a fixed event trace for injection into a simulation run."""
    out: list[FireEvent] = []
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        missing = set(EVENT_TRACE_FIELDS) - set(reader.fieldnames or [])
        if missing:
            raise ValidationError(f"event trace missing columns: {sorted(missing)}")
        for row in reader:
            out.append(
                FireEvent(
                    id=row["id"],
                    location=GeoPoint(float(row["lat"]), float(row["lon"])),
                    start=float(row["start_s"]),
                    area_ha=float(row["area_ha"]),
                )
            )
    out.sort(key=lambda e: (e.start, e.id))
    return out
