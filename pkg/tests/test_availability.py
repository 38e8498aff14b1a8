# 方式可用性测试

import os
import sys
import unittest

from hypothesis import given, settings, strategies as st

# 添加项目根目录到系统路径
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from common.activity import Activity
from common.modes import LOCKING_MODES, MODE_ORDER, Mode
from choice.availability import available_modes
from choice.context import CarsharingSnapshot, ChoiceContext
from extensions.carsharing import carsharing_availability
from tests.helpers import INVARIANTS, make_person

WORK = Activity("work", 480, 480)

snapshots = st.one_of(st.none(), st.builds(
    CarsharingSnapshot,
    customer=st.booleans(),
    home_stations=st.integers(min_value=0, max_value=2),
    in_operating_area=st.booleans(),
    fleet_available=st.booleans(),
    holding_freefloat=st.booleans(),
))


def context(at_home=True, has_license=True, free_cars=0, previous_mode=None, carsharing=None, excluded=()):
    person = make_person(1, 1, (WORK,), has_license=has_license)
    return ChoiceContext(person=person, current_zone="1", at_home=at_home, clock=450, next_activity=WORK,
                         next_fixed_zone="2", previous_mode=previous_mode, free_cars=free_cars,
                         carsharing=carsharing, excluded_modes=frozenset(excluded))


class TestBaseRules(unittest.TestCase):
    """
    未启用汽车共享时的方式集合
    """

    def test_home_without_car(self):
        self.assertEqual(available_modes(context()),
                         (Mode.WALKING, Mode.CYCLING, Mode.PUBLIC_TRANSPORT, Mode.CAR_PASSENGER))

    def test_home_with_free_car(self):
        self.assertIn(Mode.CAR_DRIVER, available_modes(context(free_cars=1)))

    def test_no_license_no_driving(self):
        self.assertNotIn(Mode.CAR_DRIVER, available_modes(context(has_license=False, free_cars=2)))

    def test_away_locked_modes(self):
        for mode in (Mode.CAR_DRIVER, Mode.CYCLING, Mode.CARSHARING_STATION):
            self.assertEqual(available_modes(context(at_home=False, previous_mode=mode)), (mode,))

    def test_away_flexible(self):
        for mode in (Mode.WALKING, Mode.PUBLIC_TRANSPORT, Mode.CAR_PASSENGER, None):
            self.assertEqual(available_modes(context(at_home=False, previous_mode=mode)),
                             (Mode.WALKING, Mode.PUBLIC_TRANSPORT, Mode.CAR_PASSENGER))

    def test_excluded_modes_removed(self):
        modes = available_modes(context(free_cars=1, excluded=["car_passenger", "cycling"]))
        self.assertEqual(modes, (Mode.WALKING, Mode.PUBLIC_TRANSPORT, Mode.CAR_DRIVER))

    def test_excluded_locked_mode_kept(self):
        modes = available_modes(context(at_home=False, previous_mode=Mode.CYCLING, excluded=["cycling"]))
        self.assertEqual(modes, (Mode.CYCLING,))


class TestCarsharingRules(unittest.TestCase):
    """
    汽车共享对方式集合的修改
    """

    def test_disabled(self):
        delta = carsharing_availability(context())
        self.assertEqual(delta.add, frozenset())
        self.assertIsNone(delta.lock)

    def test_station_at_home(self):
        snapshot = CarsharingSnapshot(customer=True, home_stations=1)
        self.assertIn(Mode.CARSHARING_STATION, available_modes(context(carsharing=snapshot)))
        self.assertNotIn(Mode.CARSHARING_STATION, available_modes(context(at_home=False, carsharing=snapshot)))

    def test_freefloat_needs_area_and_car(self):
        available = CarsharingSnapshot(customer=True, in_operating_area=True, fleet_available=True)
        self.assertIn(Mode.CARSHARING_FREEFLOAT, available_modes(context(carsharing=available)))
        self.assertIn(Mode.CARSHARING_FREEFLOAT, available_modes(context(at_home=False, carsharing=available)))
        empty = CarsharingSnapshot(customer=True, in_operating_area=True, fleet_available=False)
        self.assertNotIn(Mode.CARSHARING_FREEFLOAT, available_modes(context(carsharing=empty)))
        outside = CarsharingSnapshot(customer=True, in_operating_area=False, fleet_available=True)
        self.assertNotIn(Mode.CARSHARING_FREEFLOAT, available_modes(context(carsharing=outside)))

    def test_customers_only(self):
        snapshot = CarsharingSnapshot(customer=False, home_stations=2, in_operating_area=True, fleet_available=True)
        modes = available_modes(context(carsharing=snapshot))
        self.assertFalse({Mode.CARSHARING_STATION, Mode.CARSHARING_FREEFLOAT} & set(modes))
        licensed_only = CarsharingSnapshot(customer=True, home_stations=2)
        self.assertNotIn(Mode.CARSHARING_STATION,
                         available_modes(context(has_license=False, carsharing=licensed_only)))

    def test_held_car_outside_area_is_locked(self):
        snapshot = CarsharingSnapshot(customer=True, in_operating_area=False, holding_freefloat=True)
        self.assertEqual(available_modes(context(at_home=False, carsharing=snapshot)), (Mode.CARSHARING_FREEFLOAT,))
        self.assertEqual(available_modes(context(carsharing=snapshot, excluded=["carsharing_freefloat"])),
                         (Mode.CARSHARING_FREEFLOAT,))

    def test_held_car_inside_area_stays_available(self):
        snapshot = CarsharingSnapshot(customer=True, in_operating_area=True, holding_freefloat=True)
        modes = available_modes(context(at_home=False, previous_mode=Mode.CARSHARING_FREEFLOAT, carsharing=snapshot))
        self.assertEqual(modes, (Mode.WALKING, Mode.PUBLIC_TRANSPORT, Mode.CAR_PASSENGER, Mode.CARSHARING_FREEFLOAT))


class TestAvailabilityProperties(unittest.TestCase):
    """
    任意情境下方式集合的性质
    """

    @settings(INVARIANTS)
    @given(at_home=st.booleans(), has_license=st.booleans(), free_cars=st.integers(min_value=0, max_value=2),
           previous_mode=st.one_of(st.none(), st.sampled_from(MODE_ORDER)), carsharing=snapshots,
           excluded=st.sets(st.sampled_from([m.value for m in MODE_ORDER]), max_size=4))
    def test_choice_set(self, at_home, has_license, free_cars, previous_mode, carsharing, excluded):
        ctx = context(at_home, has_license, free_cars, previous_mode, carsharing, excluded)
        modes = available_modes(ctx)
        self.assertGreater(len(modes), 0)
        self.assertEqual(list(modes), [m for m in MODE_ORDER if m in modes])
        values = {m.value for m in modes}
        self.assertTrue(not (values & excluded) or values <= excluded)

        held_outside = carsharing is not None and carsharing.holding_freefloat and not carsharing.in_operating_area
        if held_outside:
            self.assertEqual(modes, (Mode.CARSHARING_FREEFLOAT,))
        elif not at_home and previous_mode in LOCKING_MODES:
            self.assertEqual(modes, (previous_mode,))
        if at_home and Mode.CAR_DRIVER in modes:
            self.assertTrue(has_license and free_cars > 0)
        if Mode.CARSHARING_STATION in modes and not (not at_home and previous_mode == Mode.CARSHARING_STATION):
            self.assertTrue(at_home and carsharing.customer and has_license and carsharing.home_stations > 0)
        if carsharing is None:
            self.assertNotIn(Mode.CARSHARING_FREEFLOAT, modes)


if __name__ == "__main__":
    unittest.main()
