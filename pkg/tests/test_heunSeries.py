import numpy as np
import pytest
import sys

sys.path.append(sys.path[0] + "/..")
import pysusy as susy  # noqa: E402
from pysusy import heunSeries  # noqa: E402


class TestRecurrence():

    def test_first_coefficients(self):
        E, g = 1.7, 0.9
        for sigma in (1, -1):
            a = heunSeries.recurrence_coeffs(1.0, 0.5, E, g, sigma, 10)
            assert a[2] == pytest.approx(-E / 2.0)
            assert a[3] == pytest.approx(-E * 0.5 / 6.0)
            assert a[4] == pytest.approx(
                (2.0 * g * sigma * 0.5 - E * a[2]) / 12.0)

    def test_rejects_bad_arguments(self):
        with pytest.raises(susy.DomainError):
            heunSeries.recurrence_coeffs(1.0, 0.0, 1.0, 1.0, 1, 1)
        with pytest.raises(susy.DomainError):
            heunSeries.recurrence_coeffs(1.0, 0.0, 1.0, 1.0, 0, 10)
        with pytest.raises(susy.DomainError):
            susy.FrobeniusSeries(1.0, 0.0, 1.0, g=0.0)

    def test_parameters_reproduce_the_x_equation(self):
        g, E = 1.3, 2.2
        params = susy.heun_parameters(g, E)
        assert params.beta == 3.0 and params.gamma == 0.0
        x = np.linspace(0.0, 2.0, 5)
        drift, weight = params.in_x(x)
        assert drift == pytest.approx(-2.0 * g * x * x)
        assert weight == pytest.approx(np.full(5, E))


class TestTruncation():

    def test_zero_energy_truncates_even_branch(self):
        series = susy.FrobeniusSeries(1.0, 0.0, 0.0, j_max=200)
        assert susy.truncation_scan(series, 1) == 0
        assert susy.truncation_scan(series, -1) == 0
        assert np.max(np.abs(heunSeries.heun_residual(
            series, np.linspace(-2.0, 2.0, 21)))) == 0.0

    @pytest.mark.parametrize("E", [1.0, 1.96951, 5.50718])
    def test_no_truncation_at_nonzero_energy(self, E):
        for a0, a1 in ((1.0, 0.0), (0.0, 1.0)):
            series = susy.FrobeniusSeries(a0, a1, E, j_max=200)
            for sigma in (1, -1):
                assert susy.truncation_scan(series, sigma) is None

    def test_residual_of_long_series_is_small(self):
        series = susy.FrobeniusSeries(1.0, 0.0, 1.96951, j_max=200)
        xs = np.linspace(-1.0, 1.0, 41)
        assert np.max(np.abs(heunSeries.heun_residual(series, xs))) < 1e-10

    def test_dropped_term_shrinks_with_length(self):
        short = susy.FrobeniusSeries(1.0, 0.0, 1.0, j_max=20)
        long = susy.FrobeniusSeries(1.0, 0.0, 1.0, j_max=60)
        assert (heunSeries.first_dropped_term(long, 1.5)
                < heunSeries.first_dropped_term(short, 1.5))


class TestCandidate():

    def test_branches_meet_at_origin(self):
        series = susy.FrobeniusSeries(1.0, 0.3, 2.0, j_max=80)
        grid = susy.Grid(-1.0, 1.0, 0.01)
        psi = heunSeries.evaluate_candidate(series, grid)
        assert psi.at(0.0) == pytest.approx(1.0)
        assert psi.at(0.01) == pytest.approx(psi.at(-0.01), abs=0.01)

    def test_wide_grid_warns(self, capsys):
        series = susy.FrobeniusSeries(1.0, 0.0, 1.0, j_max=60)
        heunSeries.evaluate_candidate(series, susy.Grid(-4.0, 4.0, 0.1))
        assert "beyond" in capsys.readouterr().err

    def test_agrees_with_numerov_at_first_odd_level(self):
        E = 1.96951
        grid = susy.Grid(0.0, 2.0, 1e-3)
        psi = heunSeries.evaluate_candidate(susy.FrobeniusSeries(0.0, 1.0, E),
                                            grid)
        reference = susy.numerov_integrate(
            lambda x: x ** 4 - 2.0 * np.abs(x), E, grid, 0.0, 1.0)
        assert np.max(np.abs(psi.values - reference.values)) <= 1e-4
