# 长期决策测试

import math
import os
import sys
import tempfile
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

# 添加项目根目录到系统路径
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import LongtermSection
from common.activity import Activity
from common.exceptions import InfeasibleError, ScenarioError, UnknownCategoryError
from longterm.assignment import read_assignments, run_longterm, write_assignments
from longterm.cars import ELECTRIC, assign_cars
from longterm.fixed_places import assign_fixed_places, expand_slots, rank_match
from longterm.transit_pass import transit_pass_probability, transit_pass_utility
from tests.helpers import INVARIANTS, commute_week, default_params, make_person, make_population, make_world
from world.world import CommutingMatrix

HOME_ONLY = (Activity("home", 0, 10080),)


class TestSlots(unittest.TestCase):
    """
    通勤矩阵行的名额展开
    """

    def test_largest_remainder(self):
        np.testing.assert_array_equal(expand_slots(np.array([1.0, 1.0, 2.0]), 5), [1, 1, 3])

    def test_ties_go_to_lower_index(self):
        np.testing.assert_array_equal(expand_slots(np.array([1.0, 1.0, 1.0]), 2), [1, 1, 0])

    def test_no_persons(self):
        np.testing.assert_array_equal(expand_slots(np.array([0.0, 0.0]), 0), [0, 0])

    def test_zero_row_with_persons(self):
        with self.assertRaises(InfeasibleError):
            expand_slots(np.zeros(3), 2)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.floats(min_value=0.0, max_value=1000.0), min_size=1, max_size=12).filter(lambda r: sum(r) > 1e-6),
           st.integers(min_value=0, max_value=200))
    def test_slots_sum_to_persons(self, row, persons):
        slots = expand_slots(np.array(row), persons)
        self.assertEqual(int(slots.sum()), persons)
        quotas = np.array(row) * persons / np.sum(row)
        self.assertTrue((slots >= np.floor(quotas) - 1e-9).all())
        self.assertTrue((slots <= np.floor(quotas) + 1).all())


class TestRankMatch(unittest.TestCase):
    """
    通勤距离与名额距离的排序配对
    """

    def test_shortest_commute_gets_nearest_slot(self):
        matched = rank_match([12.0, 3.0, 7.0], [1, 2, 3], [9.0, 2.0, 5.0], [4, 0, 2])
        self.assertEqual(matched, {2: 0, 3: 2, 1: 4})

    @settings(INVARIANTS)
    @given(st.lists(st.floats(min_value=0.0, max_value=80.0), min_size=1, max_size=20), st.randoms())
    def test_order_is_preserved(self, commute_km, random):
        zone_distance = {zone: 2.5 * zone for zone in range(6)}
        slot_zones = [random.randrange(6) for _ in commute_km]
        person_ids = list(range(len(commute_km)))
        matched = rank_match(commute_km, person_ids, [zone_distance[z] for z in slot_zones], slot_zones)
        self.assertEqual(set(matched), set(person_ids))
        self.assertEqual(sorted(matched.values()), sorted(slot_zones))
        for a in person_ids:
            for b in person_ids:
                if commute_km[a] < commute_km[b]:
                    self.assertLessEqual(zone_distance[matched[a]], zone_distance[matched[b]])


class TestFixedPlaces(unittest.TestCase):
    """
    工作地与学校分配
    """

    def setUp(self):
        commuting = np.array([[0.0, 1.0, 1.0], [1.0, 1.0, 1.0], [0.0, 0.0, 1.0]])
        self.world = make_world(positions=(0.0, 5.0, 10.0), commuting={"work": commuting})

    def test_commute_distance_orders_workplaces(self):
        population = make_population({
            1: [make_person(1, 1, commute_week(), commute_km=20.0)],
            2: [make_person(2, 2, commute_week(), commute_km=2.0)],
            3: [make_person(3, 3, HOME_ONLY)],
        })
        places = assign_fixed_places(self.world, population, self.world.commuting["work"], "work")
        self.assertEqual(places, {1: "3", 2: "2"})

    def test_missing_matrix_when_needed(self):
        population = make_population({1: [make_person(1, 1, commute_week())]})
        with self.assertRaises(ScenarioError):
            assign_fixed_places(self.world, population, None, "work")

    def test_missing_matrix_when_not_needed(self):
        population = make_population({1: [make_person(1, 1, commute_week())]})
        self.assertEqual(assign_fixed_places(self.world, population, None, "education"), {})

    def test_zero_row_is_infeasible(self):
        world = make_world(positions=(0.0, 5.0), commuting={"work": np.array([[0.0, 0.0], [1.0, 1.0]])})
        population = make_population({1: [make_person(1, 1, commute_week())]})
        with self.assertRaises(InfeasibleError):
            assign_fixed_places(world, population, world.commuting["work"], "work")

    def test_kind_mismatch(self):
        population = make_population({1: [make_person(1, 1, commute_week())]})
        with self.assertRaises(ValueError):
            assign_fixed_places(self.world, population, CommutingMatrix("education", np.ones((3, 3))), "work")


class TestTransitPass(unittest.TestCase):
    """
    公交月票二项Logit
    """

    @classmethod
    def setUpClass(cls):
        cls.coefficients = default_params().transit_pass

    def household(self, person, n_cars):
        return make_population({person.household_id: [person]}, n_cars={person.household_id: n_cars}).households[0]

    def test_female_with_one_car_per_member(self):
        person = make_person(1, 1, HOME_ONLY, sex="female", car_availability="none")
        household = self.household(person, 1)
        self.assertAlmostEqual(transit_pass_utility(person, household, "S", self.coefficients), -0.47877, places=12)
        probability = transit_pass_probability(person, household, "S", self.coefficients)
        self.assertAlmostEqual(probability, 1.0 / (1.0 + math.exp(0.47877)), places=12)
        self.assertAlmostEqual(probability, 0.3825426139, places=9)

    def test_reference_person_without_cars(self):
        person = make_person(1, 1, HOME_ONLY, sex="male", car_availability="none")
        household = self.household(person, 0)
        self.assertAlmostEqual(transit_pass_utility(person, household, None, self.coefficients), 0.48, places=12)
        probability = transit_pass_probability(person, household, None, self.coefficients)
        self.assertAlmostEqual(probability, 1.0 / (1.0 + math.exp(-0.48)), places=12)
        self.assertAlmostEqual(probability, 0.6177478748, places=9)

    def test_district_and_employment_terms(self):
        person = make_person(1, 1, HOME_ONLY, employment="student_tertiary", car_availability="none")
        household = self.household(person, 0)
        self.assertAlmostEqual(transit_pass_utility(person, household, "BB", self.coefficients),
                               0.48 + 1.87161 - 1.15480, places=12)

    def test_unknown_district(self):
        person = make_person(1, 1, HOME_ONLY, car_availability="none")
        with self.assertRaises(UnknownCategoryError):
            transit_pass_utility(person, self.household(person, 0), "XX", self.coefficients)


class TestCars(unittest.TestCase):
    """
    车辆拥有
    """

    def test_count_and_ids(self):
        household = make_population({4: [make_person(1, 4, HOME_ONLY)]}, n_cars={4: 3}).households[0]
        cars = assign_cars(household, np.random.default_rng(0))
        self.assertEqual([car.car_id for car in cars], [0, 1, 2])
        self.assertTrue(all(car.household_id == 4 and car.segment == "midsize" for car in cars))
        self.assertTrue(all(car.engine == "combustion" for car in cars))

    def test_all_electric(self):
        household = make_population({4: [make_person(1, 4, HOME_ONLY)]}, n_cars={4: 2}).households[0]
        self.assertTrue(all(car.engine == ELECTRIC for car in assign_cars(household, np.random.default_rng(0), 1.0)))

    def test_share_out_of_range(self):
        household = make_population({4: [make_person(1, 4, HOME_ONLY)]}).households[0]
        with self.assertRaises(ValueError):
            assign_cars(household, np.random.default_rng(0), 1.5)


class TestRunLongterm(unittest.TestCase):
    """
    长期决策汇总与文件读写
    """

    def setUp(self):
        self.world = make_world(positions=(0.0, 5.0, 10.0),
                                commuting={"work": np.ones((3, 3)), "education": np.eye(3) + 0.5})
        school = (Activity("home", 0, 450), Activity("education", 480, 300), Activity("home", 800, 10080 - 800))
        self.population = make_population({
            1: [make_person(1, 1, commute_week()), make_person(2, 1, school, employment="student_secondary")],
            2: [make_person(3, 2, HOME_ONLY, home_zone="2", has_license=False)],
            3: [make_person(4, 3, commute_week("3"), home_zone="3", sex="female")],
        }, n_cars={1: 2, 3: 1})
        self.params = default_params()

    def run_once(self, seed=5, share=0.5):
        section = LongtermSection(seed=seed, electric_share=0.3, carsharing_membership_share=share)
        return run_longterm(self.world, self.population, self.params.transit_pass, section)

    def test_deterministic(self):
        first, second = self.run_once(), self.run_once()
        self.assertEqual(first, second)

    def test_places_follow_programs(self):
        assignment = self.run_once()
        self.assertEqual(set(assignment.work_zone), {1, 4})
        self.assertEqual(set(assignment.school_zone), {2})
        self.assertEqual(assignment.car_count(1), 2)
        self.assertEqual(assignment.car_count(2), 0)

    def test_unlicensed_never_customer(self):
        assignment = self.run_once(share=1.0)
        self.assertFalse(assignment.carsharing_customer[3])
        self.assertTrue(assignment.carsharing_customer[1])

    def test_fixed_zone(self):
        assignment = self.run_once()
        person = self.population.person(1)
        self.assertEqual(assignment.fixed_zone(person, "home"), "1")
        self.assertEqual(assignment.fixed_zone(person, "work"), assignment.work_zone[1])

    def test_files_round_trip(self):
        assignment = self.run_once()
        with tempfile.TemporaryDirectory() as directory:
            write_assignments(assignment, self.population, directory, {"seed": 5})
            loaded = read_assignments(directory, self.population)
        self.assertEqual(loaded, assignment)

    def test_workplace_without_work_activity_rejected(self):
        assignment = self.run_once()
        assignment.work_zone[3] = "1"
        with tempfile.TemporaryDirectory() as directory:
            write_assignments(assignment, self.population, directory)
            with self.assertRaises(ScenarioError):
                read_assignments(directory, self.population)


if __name__ == "__main__":
    unittest.main()
