import math

import pytest

from eochain.model import (
    AcquisitionMode,
    AreaOfInterest,
    CloudModel,
    DetectionSpec,
    EventModel,
    GeoPoint,
    GroundLatencySpec,
    GroundStationSpec,
    OnboardProcessorSpec,
    PrecisionMode,
    ProcessingLocation,
    SatelliteSpec,
    Scenario,
    ServiceArchetype,
    Triggering,
)


def make_processor(enabled=True, pre=100.0, inf=100.0, mode=PrecisionMode.FP16):
    return OnboardProcessorSpec(
        preprocess_rate_mpx_s=pre,
        inference_rate_mpx_s=inf,
        precision_mode=mode,
        enabled=enabled,
    )


def make_satellite(sid="sat-a", altitude=550.0, inclination=53.0, raan=0.0,
                   arg_lat=0.0, swath=40.0, gsd=3.0, bands=4, bit_depth=12,
                   processor=None):
    return SatelliteSpec(
        id=sid,
        altitude_km=altitude,
        inclination_deg=inclination,
        raan_deg=raan,
        initial_arg_lat_deg=arg_lat,
        swath_km=swath,
        gsd_m=gsd,
        bands=bands,
        bit_depth=bit_depth,
        processor=processor or make_processor(),
    )


def make_station(sid="gs-a", lat=40.6, lon=16.7, min_el=5.0, rate=400.0, sband=True):
    return GroundStationSpec(
        id=sid,
        location=GeoPoint(lat, lon),
        min_elevation_deg=min_el,
        xband_rate_mbit_s=rate,
        sband_available=sband,
    )


def make_aoi(aid="aoi-a", lat=42.0, lon=13.0, radius=150.0):
    return AreaOfInterest(id=aid, center=GeoPoint(lat, lon), radius_km=radius)


def make_archetype(processing=ProcessingLocation.HYBRID, gsd=3.0, mmu=3.0,
                   acquisition=AcquisitionMode.SYSTEMATIC,
                   triggering=Triggering.EVENT_DRIVEN, cycle=None):
    return ServiceArchetype(
        name="test",
        processing_location=processing,
        gsd_m=gsd,
        mmu_ha=mmu,
        acquisition_mode=acquisition,
        triggering=triggering,
        periodic_cycle_s=cycle,
    )


def make_scenario(seed=0, horizon=2 * 86400.0, satellites=None, stations=None,
                  aois=None, archetype=None, rate=1.0, monitoring_delay=1800.0,
                  cloud_mean=0.0, cloud_threshold=0.5, detection=None,
                  pdgs_raw=7200.0, pdgs_mask=600.0):
    return Scenario(
        name="test-scenario",
        seed=seed,
        horizon_s=horizon,
        satellites=tuple(satellites or (make_satellite("sat-a", raan=0.0),
                                        make_satellite("sat-b", raan=180.0, arg_lat=90.0))),
        stations=tuple(stations or (make_station(),)),
        aois=tuple(aois or (make_aoi("aoi-a", 42.0, 13.0), make_aoi("aoi-b", 44.5, 9.0))),
        archetype=archetype or make_archetype(),
        event_model=EventModel(rate_per_aoi_per_day=rate, area_log_mean=math.log(5.0), area_log_sd=1.0),
        latencies=GroundLatencySpec(pdgs_raw_s=pdgs_raw, pdgs_mask_s=pdgs_mask, periodic_cycle_s=86400.0),
        monitoring_delay_s=monitoring_delay,
        cloud_model=CloudModel(mean_fraction=cloud_mean, onboard_threshold=cloud_threshold),
        detection=detection or DetectionSpec(),
    )


@pytest.fixture
def small_scenario():
    return make_scenario()
