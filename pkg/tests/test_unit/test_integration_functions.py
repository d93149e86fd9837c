import numpy as np
import pytest

from betahalton.process import _integration, _sequence
from betahalton.structure.point_set import HaltonConfig, PointSet
from betahalton.utils._checks import UnknownTestFunctionError

from tests.conftest import get_system


@pytest.fixture(scope="module")
def fib_base2():
    return HaltonConfig((get_system((1, 1)), get_system((2,))))


class TestSuite:
    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_known_integrals(self, s):
        """
        A fine midpoint grid integrates every built-in function to high
        accuracy.
        """
        suite = _integration.test_function_suite(s)
        m = 64 if s < 3 else 32
        axis = (np.arange(m) + 0.5) / m
        grid = np.stack(np.meshgrid(*[axis] * s, indexing="ij"), axis=-1).reshape(-1, s)

        for function in suite.values():
            assert np.mean(function.func(grid)) == pytest.approx(
                function.integral, abs=1e-12
            )

    @pytest.mark.parametrize(
        "s, expected",
        [
            (1, {"constant": 0.0, "product": 1.0, "mean": 1.0, "genz_product": 0.5}),
            (2, {"constant": 0.0, "product": 3.0, "mean": 1.0, "genz_product": 1.5}),
        ],
    )
    def test_variations(self, s, expected):
        suite = _integration.test_function_suite(s, alpha=0.5)

        for name, variation in expected.items():
            assert suite[name].variation == pytest.approx(variation)

    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.5])
    def test_bad_alpha(self, alpha):
        with pytest.raises(ValueError):
            _integration.test_function_suite(1, alpha)


class TestQmcIntegrate:
    def test_constant(self, fib_base2):
        point_set = _sequence.generate_point_set(fib_base2, 100)
        result = _integration.qmc_integrate("constant", point_set)

        assert result.estimate == 1.0
        assert result.error == 0.0
        assert result.kh_bound == 0.0

    def test_koksma_hlawka_one_dimensional(self, fib):
        point_set = _sequence.generate_point_set(HaltonConfig((fib,)), 1000)
        result = _integration.qmc_integrate("mean", point_set)

        assert result.true_value == 0.5
        assert result.error <= result.kh_bound + 1e-12

    def test_product_improves(self, fib_base2):
        coarse = _integration.qmc_integrate(
            "product", _sequence.generate_point_set(fib_base2, 256)
        )
        fine = _integration.qmc_integrate(
            "product", _sequence.generate_point_set(fib_base2, 4096)
        )

        assert fine.true_value == 0.25
        assert fine.error < coarse.error

    def test_given_discrepancy(self, fib):
        point_set = _sequence.generate_point_set(HaltonConfig((fib,)), 10)
        result = _integration.qmc_integrate("product", point_set, d_star=0.2)

        assert result.kh_bound == pytest.approx(0.2)

    def test_bound_omitted_over_budget(self, fib_base2):
        point_set = _sequence.generate_point_set(fib_base2, 100)
        result = _integration.qmc_integrate("mean", point_set, work_budget=10)

        assert result.kh_bound is None

    def test_unknown_function(self):
        with pytest.raises(UnknownTestFunctionError):
            _integration.qmc_integrate("cosine", PointSet([0.5]))

    def test_record(self):
        record = _integration.qmc_integrate("mean", PointSet([0.5])).to_record()

        assert record == {
            "f_id": "mean",
            "N": 1,
            "estimate": 0.5,
            "true_value": 0.5,
            "error": 0.0,
            "kh_bound": 0.5,
        }
