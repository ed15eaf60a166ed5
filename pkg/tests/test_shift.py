import math

import numpy as np
import pytest

from specrad import fekete, shift
from specrad.shift import FiniteVector, WeightedShift


class TestWeightedShift:
    def test_rejects_increasing(self):
        with pytest.raises(ValueError, match="nonincreasing"):
            WeightedShift((0.5, 0.7))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            WeightedShift((0.5, -0.1))

    def test_tail_continues_last_weight(self):
        t = WeightedShift((1.0, 0.5, 0.25))
        assert t.weight(3) == 0.25
        assert t.weight(100) == 0.25
        assert t.tail == 0.25

    def test_harmonic_generator(self):
        t = shift.harmonic_weights(0.5, 1.0, 100)
        assert t.weight(1) == 1.5
        assert t.weight(4) == 0.75
        assert t.tail == 0.5 + 1.0 / 100


class TestFiniteVector:
    def test_norms(self):
        x = FiniteVector({1: 3.0, 2: -4.0}, 2.0)
        assert x.norm() == pytest.approx(5.0, rel=1e-15)
        assert FiniteVector({1: 3.0, 2: -4.0}, 1.0).norm() == pytest.approx(7.0)
        assert FiniteVector({1: 3.0, 2: -4.0}, math.inf).norm() == 4.0

    def test_zero(self):
        assert FiniteVector({}, 2.0).norm() == 0.0

    def test_rejects_bad_index(self):
        with pytest.raises(ValueError):
            FiniteVector({0: 1.0}, 2.0)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            FiniteVector({1: 1.0}, 0.5)


class TestApplyPower:
    def test_pure_shift(self):
        t = shift.constant_weights(1.0, 10)
        out = shift.apply_power(t, shift.unit_vector(2, 2.0), 1)
        assert out.values == {1: 1.0 + 0j}

    def test_shifted_off_front(self):
        t = shift.harmonic_weights(0.5, 1.0, 10)
        x = FiniteVector({1: 2.0, 3: -1.0}, 1.0)
        assert shift.apply_power(t, x, 3).values == {}

    def test_two_step_product(self):
        # weights 1/2, 1/3, ...: T^2 e_3 = (a_1 a_2) e_1 = e_1 / 6
        t = WeightedShift(tuple(1.0 / (j + 1) for j in range(1, 8)))
        out = shift.apply_power(t, shift.unit_vector(3, 2.0), 2)
        assert set(out.values) == {1}
        assert out.values[1] == pytest.approx(1.0 / 6.0, rel=1e-15)


class TestPowerNormFormula:
    def test_all_ones(self):
        t = shift.constant_weights(1.0, 5)
        for power in (1, 3, 17):
            assert shift.power_norm_formula(t, power) == 1.0

    def test_constant_half(self):
        t = shift.constant_weights(0.5, 5)
        for power in (1, 4, 20):
            assert shift.power_norm_formula(t, power) == pytest.approx(
                2.0**-power, rel=1e-12
            )

    def test_three_weights(self):
        t = WeightedShift((0.9, 0.8, 0.7))
        assert shift.power_norm_formula(t, 3) == pytest.approx(0.504, rel=1e-12)

    def test_zero_weight_short_circuits(self):
        t = WeightedShift((1.0, 0.5, 0.0))
        assert shift.power_norm_formula(t, 3) == 0.0
        assert shift.power_norm_formula(t, 50) == 0.0


class TestOpNormEmpirical:
    def test_all_ones(self):
        t = shift.constant_weights(1.0, 50)
        for p in (1.0, 2.0, math.inf):
            attained, ratio = shift.op_norm_empirical(t, 7, p, trials=10)
            assert attained == 1.0
            assert ratio <= 1.0 + 1e-12

    def test_constant_half_power_four(self):
        t = shift.constant_weights(0.5, 50)
        for p in (1.0, 2.0, math.inf):
            attained, _ = shift.op_norm_empirical(t, 4, p, trials=5)
            assert attained == pytest.approx(1.0 / 16.0, rel=1e-15)

    def test_harmonic_attainment(self):
        t = shift.harmonic_weights(0.5, 1.0, 100)
        attained, ratio = shift.op_norm_empirical(t, 5, 2.0, trials=40)
        direct = 1.0
        for j in range(1, 6):
            direct *= 0.5 + 1.0 / j
        assert attained == pytest.approx(direct, rel=1e-14)
        assert ratio <= attained * (1 + 1e-12)

    def test_matches_formula_every_p(self):
        t = shift.harmonic_weights(0.25, 2.0, 200)
        for power in (1, 2, 5, 13, 50):
            formula = shift.power_norm_formula(t, power)
            for p in (1.0, 2.0, math.inf):
                attained, _ = shift.op_norm_empirical(t, power, p, trials=3)
                assert abs(attained - formula) <= 1e-12 * max(attained, formula)

    def test_contraction_bound(self):
        rng = np.random.default_rng(89)
        t = shift.harmonic_weights(0.3, 1.5, 80)
        for _ in range(30):
            power = int(rng.integers(1, 20))
            p = float(rng.choice([1.0, 2.0, np.inf]))
            values = {
                int(j): complex(rng.standard_normal(), rng.standard_normal())
                for j in rng.integers(1, 60, size=6)
            }
            x = FiniteVector(values, p)
            bound = shift.power_norm_formula(t, power) * x.norm()
            assert shift.apply_power(t, x, power).norm() <= bound * (1 + 1e-12)


class TestShiftLimitExperiment:
    def test_constant_weight_roots(self):
        t = shift.constant_weights(0.75, 10)
        rep = shift.shift_limit_experiment(t, 40)
        for r in rep.roots():
            assert r == pytest.approx(0.75, rel=1e-12)

    def test_zero_weight_absorbs(self):
        t = WeightedShift((1.0, 0.5, 0.0))
        rep = shift.shift_limit_experiment(t, 6)
        assert rep.roots()[0] == 1.0
        assert rep.roots()[2:] == [0.0, 0.0, 0.0, 0.0]

    def test_harmonic_converges_to_tail(self):
        t = shift.harmonic_weights(0.5, 1.0, 4000)
        rep = shift.shift_limit_experiment(t, 2000)
        assert abs(rep.roots()[-1] - 0.5) <= 0.01
        mins = [e.running_min for e in rep.entries]
        assert all(a >= b for a, b in zip(mins, mins[1:]))

    def test_power_norms_are_submultiplicative(self):
        t = shift.harmonic_weights(0.4, 0.8, 60)
        seq = fekete.PrefixSequence(
            tuple(shift.power_norm_formula(t, l) for l in range(1, 41))
        )
        assert fekete.check_submultiplicative(seq) == []

    def test_limit_bracket_certifies_above_tail(self):
        t = shift.harmonic_weights(0.5, 1.0, 500)
        seq = fekete.PrefixSequence(
            tuple(shift.power_norm_formula(t, l) for l in range(1, 201))
        )
        upper, _ = fekete.limit_bracket(seq)
        assert upper >= t.tail


def test_weights_csv_round_trip():
    t = shift.harmonic_weights(0.5, 1.0, 20)
    back = shift.read_weights_csv(shift.weights_to_csv(t))
    assert back.weights == t.weights


def test_weights_csv_header_required():
    with pytest.raises(ValueError, match="header"):
        shift.read_weights_csv("x,y\n1,0.5\n")
