import math
import numpy as np
import pytest
import sys

sys.path.append(sys.path[0] + "/..")
import pysusy as susy  # noqa: E402


XS = np.array([-2.5, -1.0, -0.3, 0.4, 1.7, 2.2])


class TestPartnerPotentials():

    def test_oscillator(self):
        pair = susy.partner_potentials(susy.OddMonomial(2.0, 0))
        assert pair.V_minus(XS) == pytest.approx(4.0 * XS ** 2 - 2.0)
        assert pair.V_plus(XS) == pytest.approx(4.0 * XS ** 2 + 2.0)
        assert pair.spike is None

    def test_sign_monomial_gives_quartic_pair(self):
        pair = susy.partner_potentials(susy.SignMonomial(1.0, 1))
        assert pair.V_minus(XS) == pytest.approx(XS ** 4 - 2.0 * np.abs(XS))
        assert pair.V_plus(XS) == pytest.approx(XS ** 4 + 2.0 * np.abs(XS))
        assert pair.spike is None

    def test_step_superpotential_carries_delta_spike(self):
        pair = susy.partner_potentials(susy.SignMonomial(1.5, 0))
        assert pair.spike.weight_minus == pytest.approx(-3.0)
        assert pair.spike.weight_plus == pytest.approx(3.0)
        assert pair.V_minus(XS) == pytest.approx(np.full(XS.shape, 2.25))

    def test_well_cotangent(self):
        L = 2.0
        kappa = math.pi / L
        pair = susy.partner_potentials(susy.WellCotangent(L))
        x = np.array([0.3, 0.9, 1.5])
        assert pair.V_minus(x) == pytest.approx(np.full(3, -kappa ** 2))
        assert pair.V_plus(x) == pytest.approx(
            -kappa ** 2 + 2.0 * kappa ** 2 / np.sin(kappa * x) ** 2)

    def test_coulomb_ground_member(self):
        pair = susy.partner_potentials(susy.CoulombRadial(2.0, 0, 0))
        r = np.array([0.5, 1.0, 4.0])
        assert pair.V_minus(r) == pytest.approx(1.0 - 2.0 / r)

    def test_rejects_bad_parameters(self):
        with pytest.raises(susy.DomainError):
            susy.OddMonomial(0.0, 1)
        with pytest.raises(susy.DomainError):
            susy.SignMonomial(1.0, -1)
        with pytest.raises(susy.DomainError):
            susy.EvenMonomial(1.0, 0)


class TestSusyStatus():

    def test_odd_monomial_is_preserved_in_minus(self):
        status = susy.susy_status(susy.OddMonomial(1.0, 1))
        assert status == susy.SusyStatus(susy.SusyState.PRESERVED,
                                         susy.Sector.MINUS)

    def test_negated_moves_zero_mode_to_plus(self):
        status = susy.susy_status(susy.OddMonomial(1.0, 0).negated())
        assert status.preserved
        assert status.sector == susy.Sector.PLUS

    def test_even_monomial_breaks_susy(self):
        w = susy.EvenMonomial(1.0, 1)
        assert not susy.susy_status(w).preserved
        with pytest.raises(susy.SusyBrokenError):
            susy.ground_state(w, susy.Grid(-3.0, 3.0, 0.01))

    def test_tabulated_agrees_with_closed_form(self):
        grid = susy.Grid(-4.0, 4.0, 0.01)
        w = susy.Tabulated.from_function(lambda x: x ** 3, grid)
        assert susy.susy_status(w).sector == susy.Sector.MINUS
        assert w.integral(2.0) == pytest.approx(4.0, abs=1e-3)


class TestGroundState():

    def test_oscillator_matches_closed_norm(self):
        grid = susy.Grid(-8.0, 8.0, 1e-3)
        psi = susy.ground_state(susy.OddMonomial(1.0, 0), grid)
        assert psi.norm() == pytest.approx(1.0, abs=1e-12)
        assert psi.at(0.0) == pytest.approx(susy.odd_monomial_norm(1.0, 0),
                                            abs=1e-6)
        assert susy.odd_monomial_norm(1.0, 0) == pytest.approx(
            math.pi ** -0.25)

    def test_quartic_zero_mode_solves_schroedinger(self):
        grid = susy.Grid(-4.0, 4.0, 1e-4)
        psi = susy.ground_state(susy.SignMonomial(1.0, 1), grid)
        d2 = psi.second_derivative()
        V = d2.x ** 4 - 2.0 * np.abs(d2.x)
        residual = -d2.values + V * psi.values[1:-1]
        assert np.max(np.abs(residual)) <= 1e-4

    def test_A_annihilates_zero_mode(self):
        w = susy.OddMonomial(1.0, 0)
        psi = susy.ground_state(w, susy.Grid(-6.0, 6.0, 1e-3))
        assert np.max(np.abs(susy.apply_A(w, psi).values)) < 1e-5

    def test_Adag_raises_to_first_excited(self):
        w = susy.OddMonomial(1.0, 0)
        psi = susy.ground_state(w, susy.Grid(-6.0, 6.0, 1e-3))
        excited = susy.apply_Adag(w, psi)
        expected = 2.0 * excited.x * psi.values[1:-1]
        assert np.max(np.abs(excited.values - expected)) < 1e-5

    @pytest.mark.parametrize("w", [susy.OddMonomial(1.0, 0),
                                   susy.SignMonomial(1.0, 0),
                                   susy.SignMonomial(1.0, 1)])
    def test_zero_mode_is_positive_and_peaked_at_origin(self, w):
        psi = susy.ground_state(w, susy.Grid(-4.0, 4.0, 1e-3))
        assert np.all(psi.values > 0.0)
        assert psi.node_count() == 0
        assert psi.at(0.0) == pytest.approx(np.max(psi.values))
        assert psi.values[0] < 1e-3 * psi.at(0.0)
        assert psi.values[-1] < 1e-3 * psi.at(0.0)

    def test_step_superpotential_zero_mode(self):
        psi = susy.ground_state(susy.SignMonomial(1.0, 0),
                                susy.Grid(-10.0, 10.0, 1e-3))
        assert psi.at(0.0) == pytest.approx(1.0, abs=1e-5)
        assert psi.at(1.0) == pytest.approx(math.exp(-1.0), abs=1e-5)

    def test_plus_sector_zero_mode(self):
        w = susy.OddMonomial(1.0, 0).negated()
        psi = susy.ground_state(w, susy.Grid(-6.0, 6.0, 1e-3))
        assert psi.at(0.0) == pytest.approx(math.pi ** -0.25, abs=1e-6)
        assert np.max(np.abs(susy.apply_Adag(w, psi).values)) < 1e-5

    def test_A_and_Adag_are_adjoint(self):
        grid = susy.Grid(-8.0, 8.0, 1e-3)
        w = susy.SignMonomial(1.0, 1)
        phi = susy.GridFunction.from_function(
            lambda x: np.exp(-x * x) * (1.0 + x), grid)
        chi = susy.GridFunction.from_function(
            lambda x: np.exp(-0.5 * (x - 0.3) ** 2), grid)
        left = susy.apply_A(w, phi).inner(chi)
        right = phi.inner(susy.apply_Adag(w, chi))
        assert left == pytest.approx(right, abs=1e-8)

    def test_partner_of_first_oscillator_level(self):
        grid = susy.Grid(-8.0, 8.0, 1e-3)
        w = susy.OddMonomial(1.0, 0)
        psi1 = susy.GridFunction.from_function(
            lambda x: math.sqrt(2.0) * math.pi ** -0.25 * x
            * np.exp(-0.5 * x * x), grid)
        mapped = susy.apply_A(w, psi1).scaled(1.0 / math.sqrt(2.0))
        expected = math.pi ** -0.25 * np.exp(-0.5 * mapped.x ** 2)
        assert np.max(np.abs(mapped.values - expected)) < 1e-5
        assert mapped.norm() == pytest.approx(1.0, abs=1e-6)

    def test_coarse_grid_warns(self, capsys):
        w = susy.OddMonomial(1.0, 0)
        psi = susy.ground_state(w, susy.Grid(-4.0, 4.0, 0.5))
        susy.apply_A(w, psi)
        assert "too coarse" in capsys.readouterr().err


class TestScaling():

    def test_g_two_thirds_rule(self):
        assert susy.energy_scaling(1.0, 8.0, 2) == pytest.approx(4.0)

    def test_oscillator_scales_linearly(self):
        assert susy.energy_scaling(2.0, 3.0, 1) == pytest.approx(6.0)
