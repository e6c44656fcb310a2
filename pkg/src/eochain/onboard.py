"""Onboard segment: acquisition, parametric processing budget, detection, products.

No imagery exists anywhere in the simulator.  Detection is a statistical
model calibrated by a per-event success probability and a per-scene
false-positive rate; the onboard processor is a throughput budget, not an
inference engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .model import (
    KM2_PER_HA,
    PRECISION_RATE_FACTOR,
    AreaOfInterest,
    CloudModel,
    DataProduct,
    FireEvent,
    OnboardProcessorSpec,
    ProductKind,
    SatelliteSpec,
    ValidationError,
    great_circle_km,
    mask_volume,
    scene_volume,
)
from .events import is_detectable
from .orbit import Window

PRIORITY_MASK = 0
PRIORITY_CHIP = 1
PRIORITY_RAW = 2


class ArchitectureMode(str, Enum):
    RAW_ONLY = "RawOnly"
    HYBRID = "Hybrid"


@dataclass(frozen=True)
class Scene:
    """One acquisition of an AOI, with its sensor geometry frozen in."""

    id: str
    satellite_id: str
    aoi_id: str
    acquired: float
    area_km2: float
    cloud_fraction: float
    event_ids_present: frozenset[str]
    gsd_m: float
    bands: int
    bit_depth: int

    @property
    def pixels(self) -> float:
        return self.area_km2 * 1e6 / self.gsd_m**2


@dataclass(frozen=True)
class DetectionOutcome:
    scene_id: str
    detected_event_ids: frozenset[str]
    false_positive_count: int
    correct_classification: Mapping[str, bool]


def draw_cloud_fraction(cloud_model: CloudModel, rng: np.random.Generator) -> float:
    """Beta-distributed cloud fraction shaped to the configured mean."""
    m = cloud_model.mean_fraction
    if m <= 0.0:
        return 0.0
    if m >= 1.0:
        return 1.0
    # Beta(2, b) with b chosen so the mean is exactly m.
    return float(rng.beta(2.0, 2.0 * (1.0 - m) / m))


def acquire_scene(
    scene_id: str,
    sat: SatelliteSpec,
    aoi: AreaOfInterest,
    window: Window,
    fire_events: Sequence[FireEvent],
    cloud_model: CloudModel,
    rng: np.random.Generator,
) -> Scene:
    """Image the AOI at the window start; ground truth is causally filtered."""
    acquired = window.start
    present = frozenset(
        e.id
        for e in fire_events
        if e.start <= acquired and great_circle_km(e.location, aoi.center) <= aoi.radius_km
    )
    return Scene(
        id=scene_id,
        satellite_id=sat.id,
        aoi_id=aoi.id,
        acquired=acquired,
        area_km2=aoi.area_km2,
        cloud_fraction=draw_cloud_fraction(cloud_model, rng),
        event_ids_present=present,
        gsd_m=sat.gsd_m,
        bands=sat.bands,
        bit_depth=sat.bit_depth,
    )


def pipeline_latency(scene: Scene, processor: OnboardProcessorSpec) -> float:
    """Time to push the scene through preprocessing and inference, seconds."""
    if not processor.enabled:
        raise ValidationError("onboard processor is disabled on this platform")
    pixels = scene.pixels
    inference_rate = processor.inference_rate_mpx_s * PRECISION_RATE_FACTOR[processor.precision_mode]
    return pixels / (processor.preprocess_rate_mpx_s * 1e6) + pixels / (inference_rate * 1e6)


def classify_scene(
    scene: Scene,
    events_by_id: Mapping[str, FireEvent],
    mmu_ha: float,
    accuracy_p: float,
    fp_rate_per_scene: float,
    rng: np.random.Generator,
    fp_rng: np.random.Generator,
) -> DetectionOutcome:
    """Statistical detection of the events present in a scene.

    A uniform draw is consumed for every present event in id order, whether
    or not it clears the minimum mapping unit; this makes the detected set
    antitone in the MMU for a fixed stream.  False positives come from an
    independent stream so their draw count never perturbs detection.
    """
    if not 0.0 < accuracy_p <= 1.0:
        raise ValidationError("accuracy probability must be in (0, 1]")
    if fp_rate_per_scene < 0:
        raise ValidationError("false-positive rate must be non-negative")
    detected: set[str] = set()
    correct: dict[str, bool] = {}
    for event_id in sorted(scene.event_ids_present):
        u = rng.uniform()
        v = rng.uniform()
        event = events_by_id[event_id]
        if is_detectable(event.area_ha, mmu_ha) and u < accuracy_p:
            detected.add(event_id)
            correct[event_id] = v < accuracy_p
    fp_count = int(fp_rng.poisson(fp_rate_per_scene))
    return DetectionOutcome(
        scene_id=scene.id,
        detected_event_ids=frozenset(detected),
        false_positive_count=fp_count,
        correct_classification=correct,
    )


def build_products(
    scene: Scene,
    outcome: DetectionOutcome,
    events_by_id: Mapping[str, FireEvent],
    mode: ArchitectureMode,
    cloud_model: CloudModel,
    processor: OnboardProcessorSpec,
    compression: float,
    chip_margin: float,
) -> list[DataProduct]:
    """Turn a processed scene into downlinkable products.

    Remote-only mode emits the full raw scene at acquisition.  Hybrid mode
    emits a thematic mask plus one region-of-interest chip per detection,
    completed after the onboard pipeline; when the cloud fraction exceeds
    the onboard threshold the scene is deferred to ground as a raw product.
    """
    raw_bits = scene_volume(scene.area_km2, scene.gsd_m, scene.bands, scene.bit_depth)
    deferred = scene.cloud_fraction > cloud_model.onboard_threshold
    if mode is ArchitectureMode.RAW_ONLY or deferred:
        return [
            DataProduct(
                id=f"{scene.id}-raw",
                kind=ProductKind.RAW_SCENE,
                scene_id=scene.id,
                event_ids=outcome.detected_event_ids,
                volume_bits=raw_bits,
                created=scene.acquired,
                priority=PRIORITY_RAW,
            )
        ]

    done = scene.acquired + pipeline_latency(scene, processor)
    products = [
        DataProduct(
            id=f"{scene.id}-mask",
            kind=ProductKind.THEMATIC_MASK,
            scene_id=scene.id,
            event_ids=outcome.detected_event_ids,
            volume_bits=mask_volume(scene.area_km2, scene.gsd_m, compression),
            created=done,
            priority=PRIORITY_MASK,
        )
    ]
    for event_id in sorted(outcome.detected_event_ids):
        chip_area_km2 = events_by_id[event_id].area_ha * KM2_PER_HA * chip_margin**2
        products.append(
            DataProduct(
                id=f"{scene.id}-chip-{event_id}",
                kind=ProductKind.ROI_CHIP,
                scene_id=scene.id,
                event_ids=frozenset({event_id}),
                volume_bits=scene_volume(chip_area_km2, scene.gsd_m, scene.bands, scene.bit_depth),
                created=done,
                priority=PRIORITY_CHIP,
            )
        )
    return products
