import math

import numpy as np
import pytest

from eochain.engine import rng_stream
from eochain.events import (
    generate_fire_events,
    is_detectable,
    monitoring_detection_time,
    read_event_trace,
    write_event_trace,
)
from eochain.model import EventModel, FireEvent, GeoPoint, ValidationError, great_circle_km

from conftest import make_aoi

DAY = 86400.0


def streams(seed):
    return lambda aoi_id: rng_stream(seed, "events", aoi_id)


MODEL = EventModel(rate_per_aoi_per_day=1.0, area_log_mean=math.log(5.0), area_log_sd=1.0)
AOIS = (make_aoi("aoi-a", 42.0, 13.0, 150.0), make_aoi("aoi-b", 44.0, 9.0, 120.0))


class TestGeneration:
    def test_zero_rate_gives_no_events(self):
        model = EventModel(rate_per_aoi_per_day=0.0, area_log_mean=1.0, area_log_sd=1.0)
        assert generate_fire_events(model, AOIS, 7 * DAY, streams(0)) == []

    def test_same_seed_same_events(self):
        a = generate_fire_events(MODEL, AOIS, 7 * DAY, streams(123))
        b = generate_fire_events(MODEL, AOIS, 7 * DAY, streams(123))
        assert a == b

    def test_different_seeds_differ(self):
        a = generate_fire_events(MODEL, AOIS, 7 * DAY, streams(1))
        b = generate_fire_events(MODEL, AOIS, 7 * DAY, streams(2))
        assert a != b

    def test_sorted_by_start(self):
        evs = generate_fire_events(MODEL, AOIS, 7 * DAY, streams(5))
        starts = [e.start for e in evs]
        assert starts == sorted(starts)

    def test_events_inside_their_aoi(self):
        aois_by_prefix = {a.id: a for a in AOIS}
        for seed in range(5):
            for e in generate_fire_events(MODEL, AOIS, 7 * DAY, streams(seed)):
                aoi = aois_by_prefix[e.id.split("-", 1)[1].rsplit("-", 1)[0]]
                assert great_circle_km(e.location, aoi.center) <= aoi.radius_km + 1e-6

    def test_events_within_horizon_and_positive_area(self):
        for seed in range(5):
            for e in generate_fire_events(MODEL, AOIS, 3 * DAY, streams(seed)):
                assert 0.0 <= e.start < 3 * DAY
                assert e.area_ha > 0

    def test_mean_count_tracks_rate(self):
        # Loose statistical check; the calibrated one lives in acceptance.
        expected = MODEL.rate_per_aoi_per_day * len(AOIS) * 7
        counts = [
            len(generate_fire_events(MODEL, AOIS, 7 * DAY, streams(seed)))
            for seed in range(300)
        ]
        se = math.sqrt(expected / len(counts))
        assert abs(np.mean(counts) - expected) < 4 * se

    def test_rejects_bad_horizon(self):
        with pytest.raises(ValidationError):
            generate_fire_events(MODEL, AOIS, 0.0, streams(0))


class TestMonitoring:
    def test_zero_delay(self):
        e = FireEvent("f", GeoPoint(42.0, 13.0), 1000.0, 5.0)
        assert monitoring_detection_time(e, 0.0) == 1000.0

    def test_fixed_delay(self):
        e = FireEvent("f", GeoPoint(42.0, 13.0), 1000.0, 5.0)
        assert monitoring_detection_time(e, 900.0) == 1900.0

    def test_ordering_preserved(self):
        early = FireEvent("a", GeoPoint(42.0, 13.0), 100.0, 5.0)
        late = FireEvent("b", GeoPoint(42.0, 13.0), 200.0, 5.0)
        assert monitoring_detection_time(early, 600.0) < monitoring_detection_time(late, 600.0)

    def test_negative_delay_rejected(self):
        e = FireEvent("f", GeoPoint(42.0, 13.0), 0.0, 5.0)
        with pytest.raises(ValidationError):
            monitoring_detection_time(e, -1.0)


class TestDetectability:
    def test_mmu_is_inclusive(self):
        assert is_detectable(3.0, 3.0)

    def test_below_mmu(self):
        assert not is_detectable(2.9, 3.0)

    def test_mmu_sensitivity(self):
        # The same 5 ha scar maps at a 3 ha unit but not at a 10 ha one.
        assert is_detectable(5.0, 3.0)
        assert not is_detectable(5.0, 10.0)

    def test_antitone_in_mmu(self):
        for area in (1.0, 3.0, 5.0, 9.0, 20.0):
            if is_detectable(area, 10.0):
                assert is_detectable(area, 3.0)

    def test_rejects_non_positive(self):
        with pytest.raises(ValidationError):
            is_detectable(0.0, 3.0)
        with pytest.raises(ValidationError):
            is_detectable(3.0, 0.0)


class TestTraceFile:
    def test_round_trip(self, tmp_path):
        events = generate_fire_events(MODEL, AOIS, 7 * DAY, streams(9))
        path = tmp_path / "trace.csv"
        write_event_trace(path, events)
        loaded = read_event_trace(path)
        assert len(loaded) == len(events)
        for a, b in zip(events, loaded):
            assert a.id == b.id
            assert a.start == pytest.approx(b.start, abs=1e-3)
            assert a.area_ha == pytest.approx(b.area_ha, rel=1e-4)
            assert a.location.lat == pytest.approx(b.location.lat, abs=1e-5)

    def test_missing_columns_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("id,lat,lon\nx,1,2\n")
        with pytest.raises(ValidationError):
            read_event_trace(path)
