"""Deterministic discrete-event kernel: clock, ordered event queue, rng streams.

A run is a pure function of (scenario, injected events).  All randomness
derives from counter-based streams keyed by (master seed, domain label,
entity id), so toggling the architecture mode of a scenario never perturbs
event generation, cloud draws or detection draws: the two arms of an A/B
comparison see common random numbers.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import events as events_mod
from . import onboard, tasking
from .downlink import ProductQueue, TransferRecord, simulate_transfers
from .ground import Marketplace, MarketplaceRecord, pdgs_process
from .model import (
    AcquisitionMode,
    DataProduct,
    FireEvent,
    ProcessingLocation,
    ProductKind,
    Scenario,
    Triggering,
    ValidationError,
    validate_scenario,
)
from .onboard import ArchitectureMode, DetectionOutcome, Scene
from .orbit import DEFAULT_COARSE_STEP_S, Window, access_windows, contact_windows
from .tasking import RequestBuild, TaskingPlan


def rng_stream(master_seed: int, domain_label: str, entity_id: str = "") -> np.random.Generator:
    """Independent, reproducible generator for one (domain, entity) pair.

    The (label, id) pair is hashed into seed-sequence entropy words, so
    streams never collide or correlate across domains or entities and the
    draws of one domain cannot shift another's.
    """
    digest = hashlib.sha256(f"{domain_label}/{entity_id}".encode()).digest()
    words = [int.from_bytes(digest[i : i + 4], "little") for i in (0, 4, 8, 12)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(master_seed), *words])))


class SimEventKind(str, Enum):
    FIRE_START = "FireStart"
    MONITORING_DETECTION = "MonitoringDetection"
    UPLINK = "Uplink"
    ACQUISITION = "Acquisition"
    PIPELINE_DONE = "PipelineDone"
    CONTACT_OPEN = "ContactOpen"
    CONTACT_CLOSE = "ContactClose"
    TRANSFER_DONE = "TransferDone"
    PDGS_DONE = "PdgsDone"
    DELIVERY = "Delivery"
    SIM_END = "SimEnd"


@dataclass(frozen=True, order=True)
class SimEvent:
    time: float
    seq: int
    kind: SimEventKind = field(compare=False)
    ref: str = field(compare=False, default="")


class EventQueue:
    """Min-heap of simulation events popped in strict (time, seq) order."""

    def __init__(self) -> None:
        self._heap: list[SimEvent] = []
        self._seq = 0

    def push(self, time: float, kind: SimEventKind, ref: str = "") -> None:
        heapq.heappush(self._heap, SimEvent(time, self._seq, kind, ref))
        self._seq += 1

    def pop(self) -> SimEvent:
        return heapq.heappop(self._heap)

    def __len__(self) -> int:
        return len(self._heap)


@dataclass(frozen=True)
class AcquisitionRecord:
    satellite_id: str
    aoi_id: str
    window: Window
    triggered: bool
    request_ids: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[str, str, float]:
        return (self.satellite_id, self.aoi_id, self.window.start)


@dataclass
class SimulationTrace:
    """Timestamped record of every chain milestone of one run."""

    scenario_name: str
    seed: int
    mode: ArchitectureMode
    horizon_s: float
    fire_events: tuple[FireEvent, ...]
    dropped_event_ids: tuple[str, ...]
    detection_times: dict[str, float]
    requests: RequestBuild
    plan: TaskingPlan
    acquisitions: tuple[AcquisitionRecord, ...]
    scenes: dict[str, Scene]
    outcomes: dict[str, DetectionOutcome]
    products: dict[str, DataProduct]
    never_enqueued_ids: tuple[str, ...]
    transfer_records: tuple[TransferRecord, ...]
    downlink_completions: dict[str, float]
    pdgs_times: dict[str, float]
    marketplace: tuple[MarketplaceRecord, ...]
    timeline: tuple[SimEvent, ...]

    @property
    def events_by_id(self) -> dict[str, FireEvent]:
        return {e.id: e for e in self.fire_events}

    @property
    def delivered_by_product(self) -> dict[str, float]:
        return {r.product_id: r.delivered for r in self.marketplace}

    def generated_bits(self) -> int:
        return sum(p.volume_bits for p in self.products.values())

    def delivered_bits(self) -> int:
        return sum(p.volume_bits for pid, p in self.products.items() if pid in self.downlink_completions)

    def transferred_bits(self) -> int:
        return sum(r.bits_moved for r in self.transfer_records)

    def residual_bits(self) -> dict[str, int]:
        return {pid: p.remaining_bits for pid, p in self.products.items() if p.remaining_bits > 0}


def _mode_of(scenario: Scenario) -> ArchitectureMode:
    if scenario.archetype.processing_location is ProcessingLocation.HYBRID:
        return ArchitectureMode.HYBRID
    return ArchitectureMode.RAW_ONLY


def _validate_injected(fire_events: Sequence[FireEvent], horizon_s: float) -> None:
    seen: set[str] = set()
    for e in fire_events:
        if e.id in seen:
            raise ValidationError(f"injected event trace has duplicate id {e.id}")
        seen.add(e.id)
        if not 0.0 <= e.start <= horizon_s:
            raise ValidationError(f"injected event {e.id} starts outside the horizon")
        if e.area_ha <= 0:
            raise ValidationError(f"injected event {e.id} has non-positive area")


def run(
    scenario: Scenario,
    injected_events: Optional[Sequence[FireEvent]] = None,
    coarse_step: float = DEFAULT_COARSE_STEP_S,
) -> SimulationTrace:
    """Execute the full service chain and return the complete trace."""
    violations = validate_scenario(scenario)
    if violations:
        raise ValidationError(
            "invalid scenario: " + "; ".join(str(v) for v in violations)
        )
    horizon = (0.0, scenario.horizon_s)
    mode = _mode_of(scenario)
    aois_by_id = {a.id: a for a in scenario.aois}
    sats_by_id = {s.id: s for s in scenario.satellites}

    # Ground truth: injected or generated from per-AOI streams.
    if injected_events is not None:
        _validate_injected(injected_events, scenario.horizon_s)
        fire_events = tuple(sorted(injected_events, key=lambda e: (e.start, e.id)))
    else:
        fire_events = tuple(
            events_mod.generate_fire_events(
                scenario.event_model,
                scenario.aois,
                scenario.horizon_s,
                lambda aoi_id: rng_stream(scenario.seed, "events", aoi_id),
            )
        )
    events_by_id = {e.id: e for e in fire_events}
    dropped = tuple(
        e.id for e in fire_events if tasking.containing_aoi(e.location, scenario.aois) is None
    )
    detection_times = {
        e.id: events_mod.monitoring_detection_time(e, scenario.monitoring_delay_s)
        for e in fire_events
    }

    # Geometry tables, computed once and shared by planner and acquisitions.
    contact_table = {
        (sat.id, stn.id): contact_windows(sat, stn, horizon, coarse_step)
        for sat in scenario.satellites
        for stn in scenario.stations
    }
    access_table = {
        (sat.id, aoi.id): access_windows(sat, aoi, horizon, coarse_step)
        for sat in scenario.satellites
        for aoi in scenario.aois
    }

    # Event-driven tasking.
    if scenario.archetype.triggering in (Triggering.EVENT_DRIVEN, Triggering.CRISIS):
        requests = tasking.build_requests(
            fire_events, scenario.aois, scenario.monitoring_delay_s, scenario.archetype
        )
        plan = tasking.plan(
            requests.requests,
            scenario.satellites,
            scenario.stations,
            scenario.aois,
            horizon,
            coarse_step,
            contact_table=contact_table,
            access_table=access_table,
        )
    else:
        requests = RequestBuild(requests=(), dropped_event_ids=())
        plan = TaskingPlan(assignments=(), unmet_request_ids=())

    aoi_of_request = {r.id: r.aoi_id for r in requests.requests}
    triggered_keys: dict[tuple[str, str, float], list[str]] = {}
    for a in plan.assignments:
        key = (a.satellite_id, aoi_of_request[a.request_id], a.window.start)
        triggered_keys.setdefault(key, []).append(a.request_id)

    # Acquisition set: systematic imaging covers every access window; pure
    # on-demand archetypes image only what the planner scheduled.
    acquisitions: list[AcquisitionRecord] = []
    if scenario.archetype.acquisition_mode is AcquisitionMode.SYSTEMATIC:
        for sat_id, aoi_id, window in tasking.periodic_acquisitions(
            scenario.archetype,
            scenario.satellites,
            scenario.aois,
            horizon,
            coarse_step,
            access_table=access_table,
        ):
            reqs = tuple(triggered_keys.get((sat_id, aoi_id, window.start), ()))
            acquisitions.append(
                AcquisitionRecord(sat_id, aoi_id, window, triggered=bool(reqs), request_ids=reqs)
            )
    else:
        for a in plan.assignments:
            aoi_id = aoi_of_request[a.request_id]
            acquisitions.append(
                AcquisitionRecord(
                    a.satellite_id, aoi_id, a.window, triggered=True, request_ids=(a.request_id,)
                )
            )
        acquisitions.sort(key=lambda r: (r.window.start, r.satellite_id, r.aoi_id))

    # Scenes exist for every acquisition; the processing chain runs on every
    # scene for periodic product lines and only on event-triggered scenes
    # for event-driven ones.
    scenes: dict[str, Scene] = {}
    outcomes: dict[str, DetectionOutcome] = {}
    products: dict[str, DataProduct] = {}
    pipeline_done: dict[str, float] = {}
    for i, acq in enumerate(acquisitions):
        scene_id = f"scn-{i:05d}"
        scene = onboard.acquire_scene(
            scene_id,
            sats_by_id[acq.satellite_id],
            aois_by_id[acq.aoi_id],
            acq.window,
            fire_events,
            scenario.cloud_model,
            rng_stream(scenario.seed, "clouds", scene_id),
        )
        scenes[scene_id] = scene
        process = (
            scenario.archetype.triggering is Triggering.PERIODIC or acq.triggered
        )
        if not process:
            continue
        outcome = onboard.classify_scene(
            scene,
            events_by_id,
            scenario.archetype.mmu_ha,
            scenario.detection.accuracy_p,
            scenario.detection.fp_rate_per_scene,
            rng_stream(scenario.seed, "detection", scene_id),
            rng_stream(scenario.seed, "fp", scene_id),
        )
        outcomes[scene_id] = outcome
        sat = sats_by_id[acq.satellite_id]
        effective_mode = mode
        if mode is ArchitectureMode.HYBRID and not sat.processor.enabled:
            effective_mode = ArchitectureMode.RAW_ONLY
        built = onboard.build_products(
            scene,
            outcome,
            events_by_id,
            effective_mode,
            scenario.cloud_model,
            sat.processor,
            scenario.detection.mask_compression,
            scenario.detection.chip_margin,
        )
        for p in built:
            products[p.id] = p
        if built and built[0].created > scene.acquired:
            pipeline_done[scene_id] = built[0].created

    # Store-and-forward downlink over the contact geometry.
    queues: dict[str, ProductQueue] = {sat.id: ProductQueue() for sat in scenario.satellites}
    never_enqueued: list[str] = []
    for pid in sorted(products, key=lambda pid: (products[pid].created, pid)):
        p = products[pid]
        if p.created > scenario.horizon_s:
            never_enqueued.append(pid)
            continue
        queues[scenes[p.scene_id].satellite_id].enqueue(p)
    rates = {stn.id: stn.xband_rate_mbit_s for stn in scenario.stations}
    transfers = simulate_transfers(queues, contact_table, rates)

    # Ground processing and marketplace delivery.
    marketplace = Marketplace()
    pdgs_times: dict[str, float] = {}
    delivery_times: dict[str, float] = {}
    for pid in sorted(transfers.completion_times, key=lambda pid: (transfers.completion_times[pid], pid)):
        done = transfers.completion_times[pid]
        delivered = pdgs_process(products[pid], done, scenario.latencies, scenario.archetype)
        if products[pid].kind is ProductKind.RAW_SCENE:
            pdgs = done + scenario.latencies.pdgs_raw_s
        else:
            pdgs = done + scenario.latencies.pdgs_mask_s
        if pdgs <= scenario.horizon_s:
            pdgs_times[pid] = pdgs
        if delivered <= scenario.horizon_s:
            delivery_times[pid] = delivered
    for pid in sorted(delivery_times, key=lambda pid: (delivery_times[pid], pid)):
        marketplace.deliver(products[pid], delivery_times[pid])

    # Assemble the ordered timeline through the event queue.
    q = EventQueue()
    for e in fire_events:
        q.push(e.start, SimEventKind.FIRE_START, e.id)
    for e in fire_events:
        t = detection_times[e.id]
        if t <= scenario.horizon_s:
            q.push(t, SimEventKind.MONITORING_DETECTION, e.id)
    for a in plan.assignments:
        q.push(a.uplink_time, SimEventKind.UPLINK, a.request_id)
    for i, acq in enumerate(acquisitions):
        q.push(acq.window.start, SimEventKind.ACQUISITION, f"scn-{i:05d}")
    for scene_id in sorted(pipeline_done):
        if pipeline_done[scene_id] <= scenario.horizon_s:
            q.push(pipeline_done[scene_id], SimEventKind.PIPELINE_DONE, scene_id)
    for (sat_id, stn_id), windows in sorted(contact_table.items()):
        for w in windows:
            q.push(w.start, SimEventKind.CONTACT_OPEN, f"{sat_id}/{stn_id}")
            q.push(w.end, SimEventKind.CONTACT_CLOSE, f"{sat_id}/{stn_id}")
    for pid in sorted(transfers.completion_times, key=lambda pid: (transfers.completion_times[pid], pid)):
        q.push(transfers.completion_times[pid], SimEventKind.TRANSFER_DONE, pid)
    for pid in sorted(pdgs_times, key=lambda pid: (pdgs_times[pid], pid)):
        q.push(pdgs_times[pid], SimEventKind.PDGS_DONE, pid)
    for pid in sorted(delivery_times, key=lambda pid: (delivery_times[pid], pid)):
        q.push(delivery_times[pid], SimEventKind.DELIVERY, pid)
    q.push(scenario.horizon_s, SimEventKind.SIM_END)

    timeline: list[SimEvent] = []
    last: tuple[float, int] = (-1.0, -1)
    while len(q):
        ev = q.pop()
        if (ev.time, ev.seq) <= last:
            raise AssertionError("event queue popped out of (time, seq) order")
        last = (ev.time, ev.seq)
        timeline.append(ev)

    return SimulationTrace(
        scenario_name=scenario.name,
        seed=scenario.seed,
        mode=mode,
        horizon_s=scenario.horizon_s,
        fire_events=fire_events,
        dropped_event_ids=dropped,
        detection_times=detection_times,
        requests=requests,
        plan=plan,
        acquisitions=tuple(acquisitions),
        scenes=scenes,
        outcomes=outcomes,
        products=products,
        never_enqueued_ids=tuple(never_enqueued),
        transfer_records=transfers.records,
        downlink_completions=dict(transfers.completion_times),
        pdgs_times=pdgs_times,
        marketplace=marketplace.records(),
        timeline=tuple(timeline),
    )
