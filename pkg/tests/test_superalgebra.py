import numpy as np
import pytest
import sys

sys.path.append(sys.path[0] + "/..")
import pysusy as susy  # noqa: E402
from pysusy import superalgebra  # noqa: E402


class TestFockOperators():

    def setup_method(self):
        self.ops = susy.build_operators(6)

    def test_dimensions(self):
        for name, matrix in self.ops.as_dict().items():
            assert matrix.shape == (12, 12), name

    def test_hamiltonian_is_n_plus_m(self):
        for m in (0, 1):
            for n in range(6):
                i = self.ops.index(n, m)
                assert self.ops.H[i, i] == pytest.approx(n + m)
        off = self.ops.H - np.diag(np.diag(self.ops.H))
        assert np.max(np.abs(off)) == 0.0

    def test_number_operators(self):
        bosons, fermions = superalgebra.number_operators(self.ops)
        assert list(bosons) == pytest.approx(list(range(6)) * 2)
        assert list(fermions) == pytest.approx([0] * 6 + [1] * 6)

    def test_Q_moves_fermion_into_boson(self):
        v = self.ops.Q @ self.ops.basis_vector(2, 1)
        expected = np.sqrt(3.0) * self.ops.basis_vector(3, 0)
        assert v == pytest.approx(expected)

    def test_rejects_tiny_truncation(self):
        with pytest.raises(susy.DomainError):
            susy.FockOperators(1)


class TestSuperalgebra():

    def test_identities_hold_at_six(self):
        report = susy.check_superalgebra(6)
        assert report.passed
        names = [row[0] for row in report.rows()]
        assert names == ["{Q,Qdag}-H", "Q^2", "Qdag^2", "[Q,H]", "[Qdag,H]",
                         "[a,adag]-1", "{b,bdag}-1", "b^2"]
        for name, deviation, passed in report.rows():
            assert deviation <= 1e-12 and passed

    @pytest.mark.parametrize("N_max", [3, 4, 9])
    def test_identities_hold_for_other_truncations(self, N_max):
        assert susy.check_superalgebra(N_max).passed

    def test_requires_three_levels(self):
        with pytest.raises(susy.DomainError):
            susy.check_superalgebra(2)

    def test_violation_lists_entries(self):
        err = susy.AlgebraViolation([("Q^2", 0, 1, 1.0)])
        assert err.entries == [("Q^2", 0, 1, 1.0)]
        assert "Q^2[0,1]" in str(err)

    def test_truncation_edge_breaks_commutator(self):
        ops = susy.build_operators(4)
        full = ops.a @ ops.adag - ops.adag @ ops.a - np.eye(8)
        assert np.max(np.abs(full)) > 1.0

    def test_degeneracy_pairs_excited_levels(self):
        table = susy.degeneracy_table(6)
        assert table == [(0, 1), (1, 2), (2, 2), (3, 2), (4, 2)]
