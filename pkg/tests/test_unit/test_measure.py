import math

import mpmath
import pytest

from betahalton.process import _measure, _numeration
from betahalton.process._measure import CylinderSet, SpectrumCheck
from betahalton.utils._checks import (
    NotUnitIntervalError,
    NumerationRangeError,
    OutsideHypothesesError,
)

from tests.conftest import SHIPPED_COEFFS, TRANSPORT_COEFFS, get_system


def brute_force_count(expansions, prefix):
    return sum(1 for digits in expansions if digits[: len(prefix)] == tuple(prefix))


class TestCounting:
    @pytest.mark.parametrize("M, expected", [(1, 1), (2, 1)])
    def test_fibonacci_examples(self, fib, M, expected):
        assert _measure.count_prefix(CylinderSet(fib, (1,)), M) == expected

    def test_full_space(self, shipped_system):
        cylinder = CylinderSet(shipped_system)

        assert _measure.prefix_counts(cylinder, range(8)) == list(
            shipped_system.G[:8]
        )

    @pytest.mark.parametrize("coeffs", SHIPPED_COEFFS)
    def test_against_enumeration(self, coeffs):
        system = get_system(coeffs)
        M = max(m for m in range(system.max_index) if system.G[m] <= 3000)
        expansions = [
            _numeration.greedy_expansion(n, system).padded(M).digits
            for n in range(system.G[M])
        ]

        for depth in range(4):
            for digits in _numeration.enumerate_admissible(system, depth):
                cylinder = CylinderSet(system, digits)
                assert _measure.count_prefix(cylinder, M) == brute_force_count(
                    expansions, digits.digits
                )

    def test_M_out_of_range(self, fib):
        with pytest.raises(NumerationRangeError):
            _measure.count_prefix(CylinderSet(fib, (1, 0)), 1)

        with pytest.raises(NumerationRangeError):
            _measure.count_prefix(CylinderSet(fib), fib.max_index + 1)

    def test_inadmissible_prefix(self, fib):
        with pytest.raises(ValueError, match="not admissible"):
            CylinderSet(fib, (1, 1))


class TestMu:
    def test_fibonacci(self, fib):
        assert float(_measure.mu(CylinderSet(fib, (1,)))) == pytest.approx(
            0.3819660113, abs=1e-10
        )

    def test_full_space(self, shipped_system):
        assert abs(_measure.mu(CylinderSet(shipped_system)) - 1) < 1e-30

    def test_sandwich(self, sys101):
        value = _measure.mu(CylinderSet(sys101, (1,)))

        assert float(value) == pytest.approx(0.3176722919, abs=1e-10)
        with mpmath.workdps(50):
            assert abs(value - sys101.beta_mp**-3) < 1e-30

    @pytest.mark.parametrize("coeffs", TRANSPORT_COEFFS)
    def test_additivity(self, coeffs):
        system = get_system(coeffs)
        G = system.G

        for depth in range(4):
            for digits in _numeration.enumerate_admissible(system, depth):
                parent = _measure.mu(CylinderSet(system, digits))

                partial = _numeration.expansion_value(digits, system)
                children = [
                    _measure.mu(CylinderSet(system, digits.digits + (e,)))
                    for e in range((G[depth + 1] - 1 - partial) // G[depth] + 1)
                ]

                assert abs(parent - mpmath.fsum(children)) < 1e-12

    def test_sandwich_closed_forms(self, sys101):
        """
        The four closed forms of the (1, 0, 1) system, depending on how
        the prefix ends.
        """
        with mpmath.workdps(50):
            beta = sys101.beta_mp
            norm = beta**-2 + beta**-1 + 1

            cases = [
                ((0, 0, 0), beta**-3),
                ((1, 0, 0), beta**-3),
                ((0, 1, 0), beta**-3 * (beta**-2 + 1) / norm),
                ((0, 0, 1), beta**-3 / norm),
            ]
            for prefix, expected in cases:
                value = _measure.mu(CylinderSet(sys101, prefix))
                assert abs(value - expected) < 1e-30, prefix


class TestCylinderImage:
    def test_fibonacci(self, fib):
        image = _measure.cylinder_image(CylinderSet(fib, (1,)))

        assert image.lower == pytest.approx(1 / fib.beta, abs=1e-15)
        assert image.upper == pytest.approx(1.0, abs=1e-15)
        assert image.length == pytest.approx(fib.beta**-2, abs=1e-15)

        image = _measure.cylinder_image(CylinderSet(fib, (0,)))
        assert image.lower == 0.0
        assert image.upper == pytest.approx(1 / fib.beta, abs=1e-15)

    def test_sandwich(self, sys101):
        image = _measure.cylinder_image(CylinderSet(sys101, (1,)))

        assert image.lower == pytest.approx(1 / sys101.beta, abs=1e-15)
        assert image.upper == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize(
        "coeffs", SHIPPED_COEFFS + [(1, 2), (1, 0, 1, 1)]
    )
    def test_closed_form_matches_numeric(self, coeffs):
        system = get_system(coeffs)

        for depth in range(6):
            if system.G[depth] > 3000:
                break
            for digits in _numeration.enumerate_admissible(system, depth):
                cylinder = CylinderSet(system, digits)

                closed = _measure.tail_supremum(cylinder)
                numeric = _measure.tail_supremum_numeric(cylinder)

                assert abs(closed - numeric) < 1e-12, digits.digits

    def test_images_tile_unit_interval(self, shipped_system):
        images = sorted(
            (
                _measure.cylinder_image(CylinderSet(shipped_system, digits))
                for digits in _numeration.enumerate_admissible(shipped_system, 3)
            ),
            key=lambda image: image.lower,
        )

        assert images[0].lower == 0.0
        assert images[-1].upper == pytest.approx(1.0, abs=1e-12)
        for left, right in zip(images, images[1:]):
            assert left.upper == pytest.approx(right.lower, abs=1e-12)

    def test_not_unit_interval(self):
        system = get_system((2, 1))

        with pytest.raises(NotUnitIntervalError):
            _measure.tail_supremum(CylinderSet(system, (1,)))


class TestVerifyTransport:
    @pytest.mark.parametrize("coeffs", TRANSPORT_COEFFS)
    def test_covered_systems(self, coeffs):
        report = _measure.verify_transport(get_system(coeffs), 6)

        assert report.covered_by_theory
        assert report.max_deviation < 1e-10
        assert report.max_mass_error < 1e-12
        assert report.cylinders_checked == sum(get_system(coeffs).G[:7])

    @pytest.mark.parametrize("coeffs", [(1, 1), (1, 0, 1)])
    def test_depth_eight(self, coeffs):
        assert _measure.verify_transport(get_system(coeffs), 8).max_deviation < 1e-10

    def test_exploratory_system_warns(self):
        with pytest.warns(UserWarning, match="exploratory"):
            report = _measure.verify_transport(get_system((2, 1, 2)), 5)

        assert not report.covered_by_theory
        assert report.max_mass_error < 1e-12

    def test_record(self, fib):
        record = _measure.verify_transport(fib, 2).to_record()

        assert record["coeffs"] == [1, 1]
        assert record["depth"] == 2
        assert record["cylinders_checked"] == 1 + 2 + 3


class TestSpectrum:
    @pytest.mark.parametrize("l", [1, 2, 3])  # noqa: E741
    def test_fibonacci_limit(self, fib, l):  # noqa: E741
        check = _measure.eigenvalue_limit_check(SpectrumCheck(fib, c=1, l=l), 40)

        assert len(check.values) == 41
        assert check.values[30] < 1e-5
        tail = check.values[10:]
        assert all(x > y for x, y in zip(tail, tail[1:]))

    def test_zero_frequency(self, sys101):
        check = _measure.eigenvalue_limit_check(SpectrumCheck(sys101, c=0), 20)

        assert check.values == (0.0,) * 21

    def test_base_two(self, base2):
        check = _measure.eigenvalue_limit_check(SpectrumCheck(base2, c=1, m=3, l=0), 30)

        assert check.values[:3] == (0.125, 0.25, 0.5)
        assert all(value == 0.0 for value in check.values[3:])

    def test_non_constant_with_m(self, sys101):
        with pytest.raises(OutsideHypothesesError):
            _measure.eigenvalue_limit_check(SpectrumCheck(sys101, c=1, m=1), 10)

    def test_trivial_frequency(self, fib):
        """
        ``m = l = 0`` is the eigenvalue ``z = 1``.
        """
        check = _measure.eigenvalue_limit_check(
            SpectrumCheck(fib, c=1, l=0), 20
        )
        assert all(value == 0.0 for value in check.values)

    def test_bad_check_parameters(self, fib):
        with pytest.raises(ValueError):
            SpectrumCheck(fib, c=-1)

    def test_large_index_keeps_precision(self):
        system = get_system((1, 1), 300)
        check = _measure.eigenvalue_limit_check(SpectrumCheck(system, c=1), 300)

        assert check.values[300] < 1e-50
        assert not math.isnan(check.values[300])
