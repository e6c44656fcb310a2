import math
import random

import numpy as np
import pytest

from eochain.model import EARTH_RADIUS_KM, EARTH_ROTATION_RAD_S, MU_EARTH_M3_S2, ValidationError
from eochain.orbit import (
    access_windows,
    contact_windows,
    elevation_angle,
    inertial_position,
    orbital_period,
    subsatellite_point,
    subsatellite_track,
)

from conftest import make_aoi, make_satellite, make_station

DAY = 86400.0


def random_satellite(rng, sid="sat-r"):
    return make_satellite(
        sid=sid,
        altitude=rng.uniform(400.0, 900.0),
        inclination=rng.uniform(20.0, 110.0),
        raan=rng.uniform(0.0, 360.0),
        arg_lat=rng.uniform(0.0, 360.0),
        swath=rng.uniform(20.0, 200.0),
    )


class TestOrbitalPeriod:
    def test_reference_altitude(self):
        # Kepler's third law, hand-evaluated: a = 6921 km -> ~5730 s.
        assert orbital_period(550.0) == pytest.approx(5730.0, abs=1.0)

    def test_direct_formula(self):
        a = (EARTH_RADIUS_KM + 700.0) * 1e3
        assert orbital_period(700.0) == pytest.approx(2 * math.pi * math.sqrt(a**3 / MU_EARTH_M3_S2))

    def test_monotone_in_altitude(self):
        assert orbital_period(500.0) < orbital_period(600.0)
        rng = random.Random(3)
        for _ in range(50):
            a1 = rng.uniform(300.0, 1999.0)
            a2 = rng.uniform(a1 + 0.5, 2000.0)
            assert orbital_period(a1) < orbital_period(a2)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            orbital_period(250.0)
        with pytest.raises(ValidationError):
            orbital_period(2500.0)


class TestSubsatellitePoint:
    def test_equatorial_orbit_stays_on_equator(self):
        sat = make_satellite(inclination=0.0)
        for t in (0.0, 1234.5, 50000.0):
            assert subsatellite_point(sat, t).lat == pytest.approx(0.0, abs=1e-9)

    def test_epoch_alignment(self):
        sat = make_satellite(inclination=53.0, raan=0.0, arg_lat=0.0)
        p = subsatellite_point(sat, 0.0)
        assert p.lat == pytest.approx(0.0, abs=1e-9)
        assert p.lon == pytest.approx(0.0, abs=1e-9)

    def test_polar_orbit_closure_after_one_period(self):
        sat = make_satellite(inclination=90.0, raan=0.0, arg_lat=20.0)
        period = orbital_period(sat.altitude_km)
        p0 = subsatellite_point(sat, 0.0)
        p1 = subsatellite_point(sat, period)
        assert p1.lat == pytest.approx(p0.lat, abs=1e-6)
        # Longitude shifted west by one rotation-period's worth of Earth spin.
        expected_shift = math.degrees(EARTH_ROTATION_RAD_S * period)
        diff = (p0.lon - p1.lon) % 360.0
        assert diff == pytest.approx(expected_shift, abs=1e-6)

    def test_latitude_bounded_by_inclination(self):
        rng = random.Random(5)
        for _ in range(100):
            sat = random_satellite(rng)
            times = np.asarray([rng.uniform(0, 10 * DAY) for _ in range(64)])
            lat, _ = subsatellite_track(sat, times)
            bound = min(sat.inclination_deg, 180.0 - sat.inclination_deg)
            assert np.all(np.abs(lat) <= bound + 1e-9)

    def test_scalar_and_vector_paths_agree(self):
        rng = random.Random(17)
        for _ in range(20):
            sat = random_satellite(rng)
            t = rng.uniform(0, DAY)
            p = subsatellite_point(sat, t)
            lat, lon = subsatellite_track(sat, np.asarray([t]))
            assert p.lat == pytest.approx(float(lat[0]), abs=1e-9)
            assert p.lon == pytest.approx(float(lon[0]), abs=1e-9)


class TestInertialPosition:
    def test_geocentric_distance_constant(self):
        rng = random.Random(9)
        for _ in range(20):
            sat = random_satellite(rng)
            times = np.asarray([rng.uniform(0, 5 * DAY) for _ in range(128)])
            pos = inertial_position(sat, times)
            r = np.linalg.norm(pos, axis=-1)
            expected = EARTH_RADIUS_KM + sat.altitude_km
            assert np.all(np.abs(r - expected) / expected < 1e-6)


class TestElevationAngle:
    def test_directly_overhead(self):
        sat = make_satellite(inclination=0.0)
        station = make_station(lat=0.0, lon=0.0)
        assert elevation_angle(sat, station, 0.0) == pytest.approx(90.0, abs=1e-6)

    def test_quarter_circle_away_is_deep_below_horizon(self):
        sat = make_satellite(inclination=0.0)
        station = make_station(lat=0.0, lon=90.0)
        assert elevation_angle(sat, station, 0.0) < -30.0

    def test_zero_elevation_at_horizon_angle(self):
        # elevation = 0 exactly where cos(psi) = R / (R + h).
        sat = make_satellite(inclination=0.0, altitude=550.0)
        psi = math.degrees(math.acos(EARTH_RADIUS_KM / (EARTH_RADIUS_KM + 550.0)))
        station = make_station(lat=0.0, lon=psi)
        assert elevation_angle(sat, station, 0.0) == pytest.approx(0.0, abs=1e-9)


class TestContactWindows:
    def test_pole_never_sees_equatorial_orbit(self):
        sat = make_satellite(inclination=0.0)
        station = make_station(lat=89.0, lon=0.0)
        assert contact_windows(sat, station, (0.0, DAY)) == []

    def test_polar_orbit_over_polar_station_every_revolution(self):
        sat = make_satellite(inclination=90.0)
        station = make_station(lat=89.0, lon=0.0, min_el=5.0)
        windows = contact_windows(sat, station, (0.0, DAY))
        revolutions = DAY / orbital_period(sat.altitude_km)
        assert len(windows) >= int(revolutions) - 1

    def test_boundary_elevations_match_mask(self):
        rng = random.Random(21)
        for _ in range(20):
            sat = random_satellite(rng)
            station = make_station(lat=rng.uniform(-70, 70), lon=rng.uniform(-180, 180),
                                   min_el=rng.uniform(0.0, 15.0))
            for w in contact_windows(sat, station, (0.0, DAY)):
                for t in (w.start, w.end):
                    if t in (0.0, DAY):
                        continue  # clamped at the horizon edge, not a crossing
                    el = elevation_angle(sat, station, t)
                    assert abs(el - station.min_elevation_deg) < 0.05

    def test_windows_disjoint_sorted_contained(self):
        rng = random.Random(23)
        for _ in range(10):
            sat = random_satellite(rng)
            station = make_station(lat=rng.uniform(-60, 60), lon=rng.uniform(-180, 180))
            windows = contact_windows(sat, station, (1000.0, DAY))
            for w in windows:
                assert 1000.0 <= w.start < w.end <= DAY
            for a, b in zip(windows, windows[1:]):
                assert a.end < b.start

    def test_shrinking_mask_grows_windows(self):
        rng = random.Random(29)
        for _ in range(10):
            sat = random_satellite(rng)
            lat, lon = rng.uniform(-60, 60), rng.uniform(-180, 180)
            tight = make_station(lat=lat, lon=lon, min_el=8.0)
            loose = make_station(lat=lat, lon=lon, min_el=7.0)
            tight_windows = contact_windows(sat, tight, (0.0, DAY))
            loose_windows = contact_windows(sat, loose, (0.0, DAY))
            for w in tight_windows:
                assert any(
                    lw.start <= w.start + 1e-6 and w.end <= lw.end + 1e-6
                    for lw in loose_windows
                )

    def test_invariant_under_grid_aligned_subdivision(self):
        rng = random.Random(31)
        sat = random_satellite(rng)
        station = make_station(lat=45.0, lon=10.0)
        full = contact_windows(sat, station, (0.0, DAY))
        split = 43200.0  # multiple of the 10 s coarse step
        parts = contact_windows(sat, station, (0.0, split)) + contact_windows(
            sat, station, (split, DAY)
        )
        survives = [w for w in full if not (w.start < split < w.end)]
        matched = [w for w in parts if not (abs(w.end - split) < 1e-9 or abs(w.start - split) < 1e-9)]
        assert len(survives) == len(matched)
        for a, b in zip(survives, matched):
            assert a.start == pytest.approx(b.start, abs=1e-9)
            assert a.end == pytest.approx(b.end, abs=1e-9)

    def test_bad_horizon_rejected(self):
        sat = make_satellite()
        station = make_station()
        with pytest.raises(ValidationError):
            contact_windows(sat, station, (100.0, 100.0))
        with pytest.raises(ValidationError):
            contact_windows(sat, station, (0.0, DAY), coarse_step=0.0)


class TestAccessWindows:
    def test_aoi_under_track_is_accessed(self):
        rng = random.Random(37)
        for _ in range(10):
            sat = random_satellite(rng)
            t = rng.uniform(1000.0, DAY - 1000.0)
            point = subsatellite_point(sat, t)
            aoi = make_aoi("under", point.lat, point.lon, radius=50.0)
            windows = access_windows(sat, aoi, (0.0, DAY))
            assert any(w.start <= t <= w.end for w in windows)

    def test_vanishing_swath_and_radius_yield_nothing(self):
        sat = make_satellite(swath=1e-6)
        aoi = make_aoi("speck", 40.0, 15.0, radius=1e-6)
        assert access_windows(sat, aoi, (0.0, DAY)) == []

    def test_doubling_swath_never_removes_a_window(self):
        rng = random.Random(41)
        for _ in range(10):
            sat = random_satellite(rng)
            wide = make_satellite(sid=sat.id, altitude=sat.altitude_km,
                                  inclination=sat.inclination_deg, raan=sat.raan_deg,
                                  arg_lat=sat.initial_arg_lat_deg, swath=2 * sat.swath_km)
            aoi = make_aoi("cell", rng.uniform(-55, 55), rng.uniform(-180, 180),
                           radius=rng.uniform(50, 200))
            narrow_windows = access_windows(sat, aoi, (0.0, DAY))
            wide_windows = access_windows(wide, aoi, (0.0, DAY))
            for w in narrow_windows:
                assert any(
                    ww.start <= w.start + 1e-6 and w.end <= ww.end + 1e-6
                    for ww in wide_windows
                )
