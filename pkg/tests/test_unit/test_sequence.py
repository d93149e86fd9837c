import warnings

import numpy as np
import pytest

from betahalton.process import _sequence
from betahalton.structure.point_set import HaltonConfig, PointSet
from betahalton.utils._checks import NotUnitIntervalError, OutsideHypothesesError

from tests.conftest import get_system


@pytest.fixture(scope="module")
def fib_base2():
    return HaltonConfig((get_system((1, 1)), get_system((2,))))


class TestVanDerCorput:
    def test_fibonacci(self, fib):
        values = [_sequence.vdc_point(n, fib) for n in range(1, 5)]

        np.testing.assert_allclose(
            values, [0.6180339887, 0.3819660113, 0.2360679775, 0.8541019662], atol=1e-10
        )

    def test_base_two(self, base2):
        assert [_sequence.vdc_point(n, base2) for n in range(1, 4)] == [0.5, 0.25, 0.75]

    def test_base_values(self, shipped_system):
        for k in range(30):
            assert _sequence.vdc_point(shipped_system.G[k], shipped_system) == pytest.approx(
                shipped_system.beta ** (-k - 1), rel=1e-12
            )

    def test_vectorised_is_bit_identical(self, shipped_system):
        indices = np.arange(3000)

        vectorised = _sequence.vdc_points(indices, shipped_system)
        scalar = [_sequence.vdc_point(int(n), shipped_system) for n in indices]

        assert vectorised.tolist() == scalar

    def test_points_in_unit_interval(self, shipped_system):
        values = _sequence.vdc_points(np.arange(10_000), shipped_system)

        assert np.all(values >= 0)
        assert np.all(values < 1)
        assert len(np.unique(values)) == values.size

    def test_top_of_range_stays_below_one(self, base2):
        """
        The sum ``1 - 2^-60`` rounds to 1.0 in floating point.
        """
        n = 2**60 - 1

        assert _sequence.vdc_point(n, base2) < 1
        assert _sequence.vdc_points([n], base2)[0] < 1
        assert _sequence.vdc_points([n], base2)[0] == _sequence.vdc_point(n, base2)

        point_set = _sequence.generate_point_set(HaltonConfig((base2,)), 1, skip=n - 1)
        assert point_set.points[0, 0] < 1

    def test_longest_word_stays_below_one(self):
        system = get_system((2, 2))

        assert _sequence.vdc_point(system.G[64] - 1, system) < 1

    def test_vectorised_edge_cases(self, fib):
        assert _sequence.vdc_points([], fib).size == 0
        assert _sequence.vdc_points([0, 0], fib).tolist() == [0.0, 0.0]

        with pytest.raises(ValueError):
            _sequence.vdc_points([-1], fib)

    def test_not_unit_interval(self):
        with pytest.raises(NotUnitIntervalError):
            _sequence.vdc_point(3, get_system((2, 1)))


class TestHalton:
    def test_points(self, fib_base2):
        assert _sequence.halton_point(1, fib_base2) == pytest.approx(
            (0.6180339887, 0.5), abs=1e-10
        )
        assert _sequence.halton_point(2, fib_base2) == pytest.approx(
            (0.3819660113, 0.25), abs=1e-10
        )

    def test_describe(self, fib_base2):
        assert fib_base2.describe() == "beta-halton[(1,1);(2)]"
        assert fib_base2.dimension == 2

    def test_empty_config(self):
        with pytest.raises(ValueError):
            HaltonConfig(())

    def test_generate_point_set(self, fib_base2):
        point_set = _sequence.generate_point_set(fib_base2, 4)

        assert point_set.points.shape == (4, 2)
        assert point_set.first_index == 1
        assert point_set.provenance == "beta-halton[(1,1);(2)]"
        np.testing.assert_array_equal(point_set.points[:, 1], [0.5, 0.25, 0.75, 0.125])

    def test_skip_and_zero(self, fib_base2):
        with_zero = _sequence.generate_point_set(fib_base2, 3, include_zero=True)
        skipped = _sequence.generate_point_set(fib_base2, 3, skip=2)

        assert with_zero.first_index == 0
        assert tuple(with_zero.points[0]) == (0.0, 0.0)
        assert skipped.first_index == 3
        assert tuple(skipped.points[0]) == _sequence.halton_point(3, fib_base2)

    def test_points_are_read_only(self, fib_base2):
        point_set = _sequence.generate_point_set(fib_base2, 4)

        with pytest.raises(ValueError):
            point_set.points[0, 0] = 0.1

    def test_parallel_matches_serial(self, fib_base2):
        serial = _sequence.generate_point_set(fib_base2, 200)
        parallel = _sequence.generate_point_set(fib_base2, 200, n_jobs=2)

        np.testing.assert_array_equal(serial.points, parallel.points)

    def test_orbit_matches_sequence(self, fib_base2):
        orbit = _sequence.orbit_point_set((0.0, 0.0), fib_base2, 500)
        sequence = _sequence.generate_point_set(fib_base2, 500, include_zero=True)

        assert orbit.first_index == 0
        np.testing.assert_allclose(orbit.points, sequence.points, atol=1e-12)

    def test_point_set_validation(self):
        with pytest.raises(ValueError):
            PointSet([[0.5, 1.0]])
        with pytest.raises(ValueError):
            PointSet(np.zeros((2, 2, 2)))

        assert PointSet([0.1, 0.2]).dimension == 1


class TestCompatibility:
    def test_pass(self, fib, base2):
        report = _sequence.compatibility_check([fib, base2])

        assert report.status == "PASS"
        assert report.pairs[0].coprime
        assert report.pairs[0].rational_hits == ()

    def test_fail(self, base2):
        report = _sequence.compatibility_check([base2, get_system((4,))])

        assert report.status == "FAIL"
        assert not report.pairs[0].coprime

    def test_identical_systems_warn(self, fib):
        with pytest.warns(UserWarning, match="rational"):
            report = _sequence.compatibility_check([fib, fib])

        assert report.status == "WARN"
        assert any(
            (hit.k, hit.l, hit.p, hit.q) == (1, 1, 1, 1)
            for hit in report.pairs[0].rational_hits
        )

    def test_three_systems(self, fib, base2):
        report = _sequence.compatibility_check([fib, base2, get_system((3,))])

        assert [(pair.i, pair.j) for pair in report.pairs] == [(0, 1), (0, 2), (1, 2)]
        assert report.pairs[1].status == "PASS"

    def test_outside_hypotheses(self, fib, sys101):
        with pytest.raises(OutsideHypothesesError):
            _sequence.compatibility_check([fib, sys101])

    def test_record(self, fib, base2):
        record = _sequence.compatibility_check([fib, base2], k_max=2).to_record()

        assert record["status"] == "PASS"
        assert record["k_max"] == 2
        assert record["pairs"][0]["b_i"] == 1
        assert record["pairs"][0]["b_j"] == 2

    def test_make_halton_config(self, fib, base2, sys101):
        cfg = _sequence.make_halton_config([fib, base2])
        assert cfg.compat is not None and cfg.compat.status == "PASS"

        with pytest.warns(UserWarning, match="constant coefficient"):
            cfg = _sequence.make_halton_config([sys101, base2])
        assert cfg.compat is None

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert _sequence.make_halton_config([sys101]).compat is None
