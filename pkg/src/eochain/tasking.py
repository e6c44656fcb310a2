"""Central-planner tasking: observation requests, uplink-constrained assignment.

Detected events become observation requests; a greedy planner assigns each
request to the earliest nominal access opportunity that can be reached
after a full telecommand (S-band) contact.  Event-driven requests never
retask orbits: the planner only selects among nominal access windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    AreaOfInterest,
    FireEvent,
    GeoPoint,
    GroundStationSpec,
    SatelliteSpec,
    ServiceArchetype,
    Triggering,
    ValidationError,
    great_circle_km,
)
from .orbit import DEFAULT_COARSE_STEP_S, Window, access_windows, contact_windows


@dataclass(frozen=True)
class ObservationRequest:
    id: str
    aoi_id: str
    event_ids: frozenset[str]
    issued: float
    priority: int
    earliest: float


@dataclass(frozen=True)
class Assignment:
    request_id: str
    satellite_id: str
    window: Window
    uplink_time: float


@dataclass(frozen=True)
class TaskingPlan:
    assignments: tuple[Assignment, ...]
    unmet_request_ids: tuple[str, ...]


@dataclass(frozen=True)
class RequestBuild:
    requests: tuple[ObservationRequest, ...]
    dropped_event_ids: tuple[str, ...]


def containing_aoi(point: GeoPoint, aois: Sequence[AreaOfInterest]) -> Optional[AreaOfInterest]:
    """AOI whose disc contains the point; nearest center wins, ties by id."""
    candidates = [
        (dist, aoi.id, aoi)
        for aoi in aois
        if (dist := great_circle_km(point, aoi.center)) <= aoi.radius_km
    ]
    if not candidates:
        return None
    return min(candidates, key=lambda c: (c[0], c[1]))[2]


def build_requests(
    fire_events: Sequence[FireEvent],
    aois: Sequence[AreaOfInterest],
    monitoring_delay_s: float,
    archetype: ServiceArchetype,
) -> RequestBuild:
    """One request per monitored event for event-driven service archetypes.

    Periodic archetypes issue no event requests: their acquisitions ride the
    systematic cycle.  Events outside every AOI are dropped and reported.
    No deduplication is performed: two events in one AOI yield two requests.
    """
    if archetype.triggering is Triggering.PERIODIC:
        return RequestBuild(requests=(), dropped_event_ids=())
    requests: list[ObservationRequest] = []
    dropped: list[str] = []
    for ev in fire_events:
        aoi = containing_aoi(ev.location, aois)
        if aoi is None:
            dropped.append(ev.id)
            continue
        issued = ev.start + monitoring_delay_s
        requests.append(
            ObservationRequest(
                id=f"req-{ev.id}",
                aoi_id=aoi.id,
                event_ids=frozenset({ev.id}),
                issued=issued,
                priority=0,
                earliest=issued,
            )
        )
    requests.sort(key=lambda r: (r.issued, r.id))
    return RequestBuild(requests=tuple(requests), dropped_event_ids=tuple(dropped))


def _first_sband_contact_end(
    contacts: dict[str, list[Window]],
    stations_by_id: dict[str, GroundStationSpec],
    after: float,
) -> Optional[float]:
    """End of the first full S-band contact starting at or after ``after``."""
    best: Optional[tuple[float, str, float]] = None
    for stn_id, windows in contacts.items():
        if not stations_by_id[stn_id].sband_available:
            continue
        for w in windows:
            if w.start >= after:
                key = (w.start, stn_id, w.end)
                if best is None or key < best:
                    best = key
                break
    return best[2] if best else None


def plan(
    requests: Sequence[ObservationRequest],
    satellites: Sequence[SatelliteSpec],
    stations: Sequence[GroundStationSpec],
    aois: Sequence[AreaOfInterest],
    horizon: tuple[float, float],
    coarse_step: float = DEFAULT_COARSE_STEP_S,
    contact_table: Optional[dict[tuple[str, str], list[Window]]] = None,
    access_table: Optional[dict[tuple[str, str], list[Window]]] = None,
) -> TaskingPlan:
    """Greedy assignment of requests to access windows.

    Requests are processed in (priority, issued, id) order.  A request is
    assigned the earliest access window over its AOI, across all satellites,
    whose start strictly exceeds that satellite's uplink time (the end of
    the first S-band contact after the request was issued).  Windows already
    assigned on a satellite are never reused or overlapped.  Ties between
    satellites break by ascending satellite id.  Precomputed window tables
    may be injected to avoid recomputation.
    """
    stations_by_id = {s.id: s for s in stations}
    aois_by_id = {a.id: a for a in aois}

    if contact_table is None:
        contact_table = {
            (sat.id, stn.id): contact_windows(sat, stn, horizon, coarse_step)
            for sat in satellites
            for stn in stations
        }
    if access_table is None:
        access_table = {}
    needed_aois = {r.aoi_id for r in requests}
    for sat in satellites:
        for aoi_id in sorted(needed_aois):
            if (sat.id, aoi_id) not in access_table:
                access_table[(sat.id, aoi_id)] = access_windows(
                    sat, aois_by_id[aoi_id], horizon, coarse_step
                )

    contacts_per_sat: dict[str, dict[str, list[Window]]] = {sat.id: {} for sat in satellites}
    for (sat_id, stn_id), windows in contact_table.items():
        contacts_per_sat.setdefault(sat_id, {})[stn_id] = windows

    busy: dict[str, list[Window]] = {sat.id: [] for sat in satellites}
    assignments: list[Assignment] = []
    unmet: list[str] = []

    for req in sorted(requests, key=lambda r: (r.priority, r.issued, r.id)):
        best: Optional[tuple[float, str, Window, float]] = None
        for sat in sorted(satellites, key=lambda s: s.id):
            uplink = _first_sband_contact_end(
                contacts_per_sat.get(sat.id, {}), stations_by_id, req.issued
            )
            if uplink is None:
                continue
            for w in access_table.get((sat.id, req.aoi_id), []):
                if w.start <= uplink or w.start < req.earliest:
                    continue
                if any(w.start < b.end and b.start < w.end for b in busy[sat.id]):
                    continue
                if best is None or (w.start, sat.id) < (best[0], best[1]):
                    best = (w.start, sat.id, w, uplink)
                break
        if best is None:
            unmet.append(req.id)
        else:
            _, sat_id, window, uplink = best
            busy[sat_id].append(window)
            assignments.append(
                Assignment(request_id=req.id, satellite_id=sat_id, window=window, uplink_time=uplink)
            )
    return TaskingPlan(assignments=tuple(assignments), unmet_request_ids=tuple(unmet))


def periodic_acquisitions(
    archetype: ServiceArchetype,
    satellites: Sequence[SatelliteSpec],
    aois: Sequence[AreaOfInterest],
    horizon: tuple[float, float],
    coarse_step: float = DEFAULT_COARSE_STEP_S,
    access_table: Optional[dict[tuple[str, str], list[Window]]] = None,
) -> list[tuple[str, str, Window]]:
    """Every access window becomes a systematic acquisition opportunity."""
    from .model import AcquisitionMode

    if archetype.acquisition_mode is not AcquisitionMode.SYSTEMATIC:
        raise ValidationError("periodic acquisitions require a systematic archetype")
    out: list[tuple[str, str, Window]] = []
    for sat in satellites:
        for aoi in aois:
            if access_table is not None and (sat.id, aoi.id) in access_table:
                windows = access_table[(sat.id, aoi.id)]
            else:
                windows = access_windows(sat, aoi, horizon, coarse_step)
            out.extend((sat.id, aoi.id, w) for w in windows)
    out.sort(key=lambda x: (x[2].start, x[0], x[1]))
    return out
