# 选择模型测试

import math
import os
import sys
import tempfile
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

# 添加项目根目录到系统路径
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from common.activity import Activity
from common.exceptions import ScenarioError, UnknownCategoryError
from common.modes import Mode
from choice.context import ChoiceContext
from choice.destination_choice import destination_probabilities, destination_utilities
from choice.mode_choice import mode_probabilities, mode_utility
from choice.model import ChoiceModel
from choice.params import CoefficientTable, DestinationChoiceParams, ModeChoiceParams
from choice.sampling import ChoiceDistribution, make_distribution, sample
from population.model import AGE_GROUPS, EMPLOYMENTS
from tests.helpers import clock, default_params, make_person, make_world

SHOPPING = Activity("shopping_daily", clock(0, 10), 60)


def context_for(person, activity=SHOPPING, at_home=True, minute=None, **kwargs) -> ChoiceContext:
    return ChoiceContext(
        person=person,
        current_zone=kwargs.pop("current_zone", "1"),
        at_home=at_home,
        clock=activity.planned_start - 30 if minute is None else minute,
        next_activity=activity,
        next_fixed_zone=kwargs.pop("next_fixed_zone", "1"),
        **kwargs,
    )


def tiny_mode_params() -> ModeChoiceParams:
    """
    仅含自行车的手算系数表，步行项全部为 0
    """
    return ModeChoiceParams(CoefficientTable("tiny", {
        ("asc", "cycling", ""): -1.0,
        ("distance", "cycling", ""): 0.5,
        ("time_per_km", "", ""): -0.1,
        ("cost_per_km", "", ""): -0.3,
        ("intrazonal", "cycling", ""): 2.0,
        ("female", "cycling", ""): 7.0,
        ("transit_pass", "cycling", ""): 5.0,
        ("no_license", "cycling", ""): 9.0,
        ("employment", "cycling", "fulltime"): 0.25,
        ("age", "cycling", "36-50"): -0.5,
        ("purpose", "cycling", "shopping_daily"): 0.1,
        ("day", "cycling", "workday"): 0.05,
        ("day", "cycling", "sunday"): -2.0,
    }))


class TestCoefficientTable(unittest.TestCase):
    """
    参数文件读取
    """

    def write(self, directory: str, text: str) -> str:
        path = os.path.join(directory, "p.csv")
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def test_calibration_is_added(self):
        params = default_params()
        self.assertAlmostEqual(params.mode.specific("asc", "car_driver"), -0.15672 + 0.2, places=12)
        self.assertAlmostEqual(params.mode.specific("asc", "cycling"), -1.1356, places=12)

    def test_walking_defaults_to_zero(self):
        params = default_params()
        self.assertEqual(params.mode.specific("asc", "walking"), 0.0)
        self.assertAlmostEqual(params.mode.specific("day", "walking", "sunday"), -0.3, places=12)

    def test_carsharing_uses_car_driver_rows(self):
        params = default_params()
        for mode in ("carsharing_station", "carsharing_freefloat"):
            self.assertEqual(params.mode.specific("asc", mode), params.mode.specific("asc", "car_driver"))

    def test_missing_entry(self):
        with self.assertRaises(UnknownCategoryError):
            default_params().mode.specific("age", "cycling", "200+")

    def test_duplicate_row(self):
        with tempfile.TemporaryDirectory() as directory:
            path = self.write(directory, "coefficient,category,subcategory,estimate,calibration\n"
                                         "asc,cycling,,1,\nasc,cycling,,2,\n")
            with self.assertRaises(ScenarioError) as ctx:
                CoefficientTable.read_csv(path)
        self.assertEqual(ctx.exception.line, 3)

    def test_missing_column(self):
        with tempfile.TemporaryDirectory() as directory:
            path = self.write(directory, "coefficient,category,estimate\nasc,cycling,1\n")
            with self.assertRaises(ScenarioError):
                CoefficientTable.read_csv(path)

    def test_gamma_is_product(self):
        params = default_params()
        self.assertAlmostEqual(params.destination.gamma("strolling", "fulltime"), 3.0 * 1.3, places=12)


class TestModeChoice(unittest.TestCase):
    """
    方式效用与概率
    """

    def setUp(self):
        self.world = make_world(positions=(0.0, 10.0))
        self.params = tiny_mode_params()
        self.person = make_person(1, 1, (SHOPPING,))

    def test_hand_computed_utility(self):
        context = context_for(self.person)
        # 10 km，自行车 43 分钟，无费用
        expected = -1.0 + 0.5 * 10 - 0.1 * 43 / 10 + 0.25 - 0.5 + 0.1 + 0.05
        self.assertAlmostEqual(mode_utility(Mode.CYCLING, context, self.world, "1", "2", self.params),
                               expected, places=12)
        self.assertAlmostEqual(mode_utility(Mode.WALKING, context, self.world, "1", "2", self.params),
                               -0.1 * 123 / 10, places=12)

    def test_person_and_day_terms(self):
        person = make_person(1, 1, (SHOPPING,), sex="female", has_license=False)
        context = context_for(person, minute=clock(6, 9), has_transit_pass=True)
        base = -1.0 + 0.5 * 10 - 0.1 * 43 / 10 + 0.25 - 0.5 + 0.1
        expected = base + 7.0 + 5.0 + 9.0 - 2.0
        self.assertAlmostEqual(mode_utility(Mode.CYCLING, context, self.world, "1", "2", self.params),
                               expected, places=12)

    def test_intrazonal_trip(self):
        context = context_for(self.person)
        # 小区内 0.8 km：每公里项除以 0.8，并计入小区内常数
        expected = -1.0 + 0.5 * 0.8 - 0.1 * (3 + 4 * 0.8) / 0.8 + 2.0 + 0.25 - 0.5 + 0.1 + 0.05
        self.assertAlmostEqual(mode_utility(Mode.CYCLING, context, self.world, "1", "1", self.params),
                               expected, places=12)

    def test_softmax_over_given_modes(self):
        context = context_for(self.person)
        distribution = mode_probabilities(context, self.world, "1", "2", self.params, (Mode.WALKING, Mode.CYCLING))
        u_walk = -1.23
        u_cycle = -1.0 + 5.0 - 0.43 + 0.25 - 0.5 + 0.1 + 0.05
        expected = math.exp(u_cycle) / (math.exp(u_cycle) + math.exp(u_walk))
        self.assertAlmostEqual(distribution.probability(Mode.CYCLING), expected, places=12)
        self.assertAlmostEqual(float(distribution.probabilities.sum()), 1.0, places=12)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=-20.0, max_value=20.0, allow_nan=False))
    def test_common_shift_leaves_probabilities(self, shift):
        context = context_for(self.person)
        modes = (Mode.WALKING, Mode.CYCLING)
        shifted = ModeChoiceParams(self.params.coefficients.replace({("asc", "cycling", ""): -1.0 + shift,
                                                                     ("asc", "walking", ""): shift}))
        np.testing.assert_allclose(mode_probabilities(context, self.world, "1", "2", shifted, modes).probabilities,
                                   mode_probabilities(context, self.world, "1", "2", self.params, modes).probabilities,
                                   rtol=0, atol=1e-12)


    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(EMPLOYMENTS), st.sampled_from(AGE_GROUPS), st.sampled_from(["female", "male"]),
           st.booleans(), st.booleans(), st.integers(min_value=0, max_value=10079),
           st.sampled_from(["1", "2"]))
    def test_probabilities_form_distribution(self, employment, age_group, sex, license_, transit_pass, minute,
                                             destination):
        params = default_params()
        person = make_person(1, 1, (SHOPPING,), employment=employment, age_group=age_group, sex=sex,
                             has_license=license_)
        context = context_for(person, minute=minute, has_transit_pass=transit_pass, free_cars=1)
        distribution = mode_probabilities(context, self.world, "1", destination, params.mode)
        self.assertAlmostEqual(float(distribution.probabilities.sum()), 1.0, places=12)
        self.assertTrue((distribution.probabilities > 0).all())
        self.assertEqual(Mode.CAR_DRIVER in distribution.alternatives, license_)

    def test_unknown_employment(self):
        person = make_person(1, 1, (SHOPPING,), employment="astronaut")
        with self.assertRaises(UnknownCategoryError):
            mode_utility(Mode.CYCLING, context_for(person), self.world, "1", "2", default_params().mode)


class TestDestinationChoice(unittest.TestCase):
    """
    目的地效用与概率
    """

    def setUp(self):
        self.world = make_world(positions=(0.0, 10.0), attractivity={"shopping_daily": 100.0})
        self.params = DestinationChoiceParams(
            CoefficientTable("dest", {
                ("time", "purpose", "shopping_daily"): -0.1,
                ("time", "employment", "fulltime"): -0.05,
                ("cost", "purpose", "shopping_daily"): -0.5,
                ("opportunities", "purpose", "shopping_daily"): 0.3,
            }),
            CoefficientTable("scaling", {
                ("gamma", "purpose", "shopping_daily"): 2.0,
                ("gamma", "employment", "fulltime"): 1.5,
            }),
        )
        self.person = make_person(1, 1, (SHOPPING,))

    def test_hand_computed_probabilities(self):
        context = context_for(self.person)
        opportunities = 0.3 * math.log(101.0)
        # 驾车：小区内 3.8 分钟 0.16 元，跨区 13 分钟 2 元；往返均计入
        v_same = -0.15 * 7.6 - 0.5 * 0.32 + opportunities
        v_other = -0.15 * 26.0 - 0.5 * 4.0 + opportunities
        np.testing.assert_allclose(destination_utilities(context, self.world, self.params), [v_same, v_other])
        distribution = destination_probabilities(context, self.world, self.params)
        self.assertEqual(distribution.alternatives, ("1", "2"))
        expected = 1.0 / (1.0 + math.exp(3.0 * (v_other - v_same)))
        self.assertAlmostEqual(distribution.probability("1"), expected, places=12)

    def test_unit_gamma_is_plain_softmax(self):
        unit = DestinationChoiceParams(self.params.coefficients, CoefficientTable("scaling", {
            ("gamma", "purpose", "shopping_daily"): 1.0,
            ("gamma", "employment", "fulltime"): 1.0,
        }))
        context = context_for(self.person)
        utilities = destination_utilities(context, self.world, unit)
        expected = np.exp(utilities) / np.exp(utilities).sum()
        np.testing.assert_allclose(destination_probabilities(context, self.world, unit).probabilities, expected,
                                   rtol=0, atol=1e-12)
        scaled = destination_probabilities(context, self.world, self.params).probabilities
        self.assertGreater(scaled[0], expected[0])

    def test_next_fixed_zone_enters_utility(self):
        near_home = destination_utilities(context_for(self.person), self.world, self.params)
        near_work = destination_utilities(context_for(self.person, next_fixed_zone="2"), self.world, self.params)
        self.assertGreater(near_work[1] - near_work[0], near_home[1] - near_home[0])

    def test_zero_attractivity_still_possible(self):
        world = make_world(positions=(0.0, 10.0), attractivity={"leisure_outdoor": 5.0})
        self.assertTrue((world.attractivities("shopping_daily") == 0).all())
        distribution = destination_probabilities(context_for(self.person), world, self.params)
        self.assertTrue((distribution.probabilities > 0).all())

    def test_fixed_purpose_rejected(self):
        context = context_for(self.person, activity=Activity("work", clock(0, 8), 480))
        with self.assertRaises(ValueError):
            destination_utilities(context, self.world, self.params)

    def test_toy_params_cover_flexible_purposes(self):
        params = default_params().destination
        world = make_world(positions=(0.0, 3.0, 8.0))
        for purpose in ("business", "service", "leisure_outdoor", "strolling"):
            person = make_person(1, 1, (SHOPPING,), employment="retired")
            context = context_for(person, activity=Activity(purpose, clock(2, 15), 60))
            distribution = destination_probabilities(context, world, params)
            self.assertAlmostEqual(float(distribution.probabilities.sum()), 1.0, places=12)


class TestSampling(unittest.TestCase):
    """
    逆累积分布抽样
    """

    def test_one_uniform_per_draw(self):
        distribution = make_distribution(["a", "b", "c"], [0.2, 0.3, 0.5])
        first, second = np.random.default_rng(11), np.random.default_rng(11)
        sample(distribution, first)
        second.random()
        self.assertEqual(first.random(), second.random())

    def test_inverse_cdf(self):
        distribution = make_distribution(["a", "b", "c"], [0.2, 0.3, 0.5])
        u = np.random.default_rng(4).random()
        expected = "a" if u < 0.2 else ("b" if u < 0.5 else "c")
        self.assertEqual(sample(distribution, np.random.default_rng(4)), expected)

    def test_zero_probability_never_drawn(self):
        distribution = make_distribution(["a", "b"], [0.0, 1.0])
        rng = np.random.default_rng(0)
        self.assertTrue(all(sample(distribution, rng) == "b" for _ in range(200)))

    def test_frequencies(self):
        distribution = make_distribution(["a", "b"], [0.25, 0.75])
        rng = np.random.default_rng(7)
        draws = [sample(distribution, rng) for _ in range(4000)]
        self.assertAlmostEqual(draws.count("a") / 4000, 0.25, delta=0.03)

    def test_invalid_distribution(self):
        with self.assertRaises(ValueError):
            ChoiceDistribution(("a",), np.array([-1.0]))
        with self.assertRaises(ValueError):
            ChoiceDistribution((), np.array([]))
        with self.assertRaises(ValueError):
            make_distribution(["a", "b"], [0.0, 0.0])


class TestChoiceModel(unittest.TestCase):
    """
    选择模型入口
    """

    def setUp(self):
        self.world = make_world(positions=(0.0, 10.0))
        self.model = ChoiceModel(self.world, default_params())
        self.person = make_person(1, 1, (SHOPPING,))

    def test_exclusions_restrict_choice(self):
        context = context_for(self.person, free_cars=1)
        exclude = [Mode.CYCLING, Mode.PUBLIC_TRANSPORT, Mode.CAR_DRIVER, Mode.CAR_PASSENGER]
        rng = np.random.default_rng(2)
        self.assertTrue(all(self.model.choose_mode(context, "2", rng, exclude) == Mode.WALKING for _ in range(50)))

    def test_exclusions_never_empty_locked_set(self):
        context = context_for(self.person, at_home=False, previous_mode=Mode.CAR_DRIVER)
        mode = self.model.choose_mode(context, "2", np.random.default_rng(2), [Mode.CAR_DRIVER])
        self.assertEqual(mode, Mode.CAR_DRIVER)

    def test_destination_is_a_zone(self):
        destination = self.model.choose_destination(context_for(self.person), np.random.default_rng(5))
        self.assertIn(destination, self.world.zone_ids)

    def test_same_stream_same_choices(self):
        context = context_for(self.person, free_cars=1)
        first = [self.model.choose_mode(context, "2", np.random.default_rng(9)) for _ in range(3)]
        second = [self.model.choose_mode(context, "2", np.random.default_rng(9)) for _ in range(3)]
        self.assertEqual(first, second)


if __name__ == "__main__":
    unittest.main()
