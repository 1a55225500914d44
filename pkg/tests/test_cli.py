import csv
import io
import json
import os
import pytest
import sys

sys.path.append(sys.path[0] + "/..")
import pysusy as susy  # noqa: E402
from pysusy import cli  # noqa: E402


TEST_TIMEOUT = 60
HERE = os.path.dirname(os.path.abspath(__file__))


def run(capsys, *argv, environ=None):
    code = cli.main(list(argv), environ=environ if environ is not None
                    else {})
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(out):
    body = [l for l in out.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


class TestExitCodes():

    def test_success(self, capsys):
        code, out, _ = run(capsys, "scatter", "--g", "1", "--E", "2")
        assert code == cli.EXIT_OK
        row = rows_of(out)[0]
        assert row["R"] == "0.500000"
        assert row["T"] == "0.500000"

    def test_missing_coupling_is_usage_error(self, capsys):
        code, _, err = run(capsys, "partner", "--family", "odd-monomial",
                           "--n", "0")
        assert code == cli.EXIT_USAGE
        assert "--g" in err

    def test_bad_family_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "partner", "--family", "cubic", "--g", "1")
        assert code == cli.EXIT_USAGE

    def test_unknown_command_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "plot")
        assert code == cli.EXIT_USAGE

    def test_bad_basis_size_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "variational", "--m", "0")
        assert code == cli.EXIT_USAGE

    def test_computation_error(self, capsys):
        code, out, err = run(capsys, "scatter", "--g", "1", "--E", "0.5")
        assert code == cli.EXIT_FAILURE
        assert out == ""
        assert "threshold" in err

    def test_missing_config_file(self, capsys):
        code, _, _ = run(capsys, "variational", "--config",
                         os.path.join(HERE, "no-such-file.json"))
        assert code == cli.EXIT_USAGE

    def test_unwritable_output_is_failure(self, capsys, tmp_path):
        target = tmp_path / "missing-dir" / "levels.csv"
        code, out, _ = run(capsys, "levels", "--m", "2", "--output",
                           str(target))
        assert code == cli.EXIT_FAILURE
        assert out == ""
        assert not target.exists()


class TestPartner():

    def test_quartic_pair(self, capsys):
        code, out, _ = run(capsys, "partner", "--family", "sign-monomial",
                           "--n", "1", "--g", "1", "--dx", "0.5")
        assert code == 0
        rows = rows_of(out)
        assert len(rows) == 13
        for row in rows:
            x = float(row["x"])
            assert float(row["V_minus"]) == pytest.approx(x ** 4 - 2 * abs(x),
                                                          abs=1e-6)
            assert float(row["V_plus"]) == pytest.approx(x ** 4 + 2 * abs(x),
                                                         abs=1e-6)

    def test_oscillator_pair_and_status(self, capsys):
        code, out, _ = run(capsys, "partner", "--family", "odd-monomial",
                           "--n", "0", "--g", "2", "--dx", "1")
        assert code == 0
        assert "# susy preserved (zero mode in the minus sector)" in out
        for row in rows_of(out):
            x = float(row["x"])
            assert float(row["V_minus"]) == pytest.approx(4 * x * x - 2)

    def test_delta_spike_side_channel(self, capsys):
        _, out, _ = run(capsys, "partner", "--family", "sign-monomial",
                        "--n", "0", "--g", "1", "--dx", "1")
        assert "# delta x=0 minus=-2.000000 plus=2.000000" in out

    def test_environment_sets_spacing(self, capsys):
        _, out, _ = run(capsys, "partner", "--family", "odd-monomial",
                        "--g", "1", environ={"SUSYQM_GRID_DX": "0.5"})
        assert len(rows_of(out)) == 13

    def test_flag_beats_environment(self, capsys):
        _, out, _ = run(capsys, "partner", "--family", "odd-monomial",
                        "--g", "1", "--dx", "1",
                        environ={"SUSYQM_GRID_DX": "0.5"})
        assert len(rows_of(out)) == 7


class TestVariational():

    def test_minus_row(self, capsys):
        code, out, _ = run(capsys, "variational", "--sector", "minus",
                           "--m", "10", "--compare-thesis")
        assert code == 0
        rows = rows_of(out)
        assert len(rows) == 10
        for row in rows[:8]:
            assert float(row["abs_deviation"]) <= 5e-5
        assert rows[8]["published"] == ""

    def test_sweep_covers_table(self, capsys):
        code, out, _ = run(capsys, "variational", "--sector", "both",
                           "--sweep", "1..10")
        assert code == 0
        rows = rows_of(out)
        assert len(rows) == 2 * 55
        assert [r["m"] for r in rows[:3]] == ["1", "2", "2"]
        assert rows[55]["sector"] == "plus"

    def test_json_from_config_file(self, capsys):
        code, out, _ = run(capsys, "variational", "--config",
                           os.path.join(HERE, "variational-plus.json"))
        assert code == 0
        document = json.loads(out)
        assert list(document) == ["command", "config", "rows"]
        assert document["command"] == "variational"
        assert document["config"]["sector"] == "plus"
        row = document["rows"][0]
        assert row["energy"] == pytest.approx(2.31447, abs=5e-5)
        assert row["abs_deviation"] <= 5e-5

    def test_quartic_ladder(self, capsys):
        code, out, _ = run(capsys, "variational", "--problem", "quartic",
                           "--m", "5")
        assert code == 0
        row = rows_of(out)[0]
        assert float(row["energy"]) == pytest.approx(0.668530, abs=1e-5)
        assert float(row["deviation_percent"]) == pytest.approx(0.08,
                                                                abs=0.1)

    def test_coefficients(self, capsys):
        _, out, _ = run(capsys, "variational", "--m", "3", "--coefficients")
        rows = rows_of(out)
        assert len(rows) == 9
        assert rows[0]["j"] == "1"

    def test_large_basis_warns(self, capsys):
        code, _, err = run(capsys, "variational", "--m", "21")
        assert code in (cli.EXIT_OK, cli.EXIT_FAILURE)
        assert "badly conditioned" in err

    def test_output_is_deterministic(self, capsys):
        _, first, _ = run(capsys, "variational", "--sector", "both", "--m",
                          "6")
        _, second, _ = run(capsys, "variational", "--sector", "both", "--m",
                           "6")
        assert first == second

    def test_csv_energies_round_trip(self, capsys):
        code, out, _ = run(capsys, "variational", "--sector", "plus", "--m",
                           "5")
        assert code == 0
        rows = rows_of(out)
        expected = susy.eps_x2_levels(5, susy.Sector.PLUS).energies
        assert len(rows) == len(expected)
        for row, energy in zip(rows, expected):
            assert len(row["energy"].split(".")[1]) == 6
            assert float(row["energy"]) == pytest.approx(energy, abs=5e-7)

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "levels.tsv"
        code, out, _ = run(capsys, "levels", "--sector", "both", "--m", "4",
                           "--format", "tsv", "--output", str(target))
        assert code == 0 and out == ""
        lines = target.read_text().split("\n")
        assert lines[0] == "sector\tlevel\tenergy\tparity"
        first = lines[1].split("\t")
        assert first[:2] == ["minus", "0"]
        assert abs(float(first[2])) < 1e-6


class TestOtherCommands():

    @pytest.mark.timeout(TEST_TIMEOUT)
    def test_shoot(self, capsys):
        code, out, _ = run(capsys, "shoot", "--sector", "both", "--levels",
                           "7", "--compare-thesis")
        assert code == 0
        rows = rows_of(out)
        assert len(rows) == 14
        for row in rows:
            assert float(row["abs_deviation"]) <= 1e-3
        assert "# pairing" in out

    @pytest.mark.timeout(TEST_TIMEOUT)
    def test_lpt(self, capsys):
        code, out, _ = run(capsys, "lpt", "--problem", "eps-x2", "--order",
                           "1", "--delta", "1", "--sector", "both")
        assert code == 0
        energies = [float(r["energy"]) for r in rows_of(out)]
        assert energies == pytest.approx([0.30685, 1.72964], abs=1e-4)

    @pytest.mark.timeout(TEST_TIMEOUT)
    def test_lpt_defaults_to_both_sectors(self, capsys):
        code, out, _ = run(capsys, "lpt", "--problem", "eps-x2", "--order",
                           "1", "--delta", "1")
        assert code == 0
        rows = rows_of(out)
        assert [r["sector"] for r in rows] == ["minus", "plus"]
        assert [float(r["energy"]) for r in rows] == pytest.approx(
            [0.30685, 1.72964], abs=1e-4)

    def test_hydrogen(self, capsys):
        code, out, _ = run(capsys, "hydrogen", "--levels", "3")
        assert code == 0
        rows = rows_of(out)
        assert [float(r["energy"]) for r in rows] == pytest.approx(
            [-1.0, -0.25, -1.0 / 9.0], abs=1e-6)
        assert [r["nodes"] for r in rows] == ["0", "1", "2"]

    def test_heun(self, capsys):
        code, out, _ = run(capsys, "heun", "--E", "0", "--j-max", "10")
        assert code == 0
        assert "# x>0 truncates at degree 0" in out
        assert len(rows_of(out)) == 11

    def test_heun_without_truncation(self, capsys):
        _, out, _ = run(capsys, "heun", "--E", "1.96951")
        assert "# x>0 no truncation" in out

    def test_superalgebra(self, capsys):
        code, out, _ = run(capsys, "superalgebra", "--n-max", "6")
        assert code == 0
        assert all(r["passed"] == "true" for r in rows_of(out))

    def test_degeneracy(self, capsys):
        _, out, _ = run(capsys, "superalgebra", "--degeneracy")
        assert [r["multiplicity"] for r in rows_of(out)] == ["1", "2", "2",
                                                             "2", "2"]

    def test_well(self, capsys):
        code, out, _ = run(capsys, "well", "--levels", "2")
        assert code == 0
        rows = rows_of(out)
        assert [float(r["E_minus"]) for r in rows] == pytest.approx([3, 8])

    def test_wavefunctions(self, capsys):
        code, out, _ = run(capsys, "wavefunctions", "--sector", "plus",
                           "--m", "6", "--levels", "3", "--dx", "0.01")
        assert code == 0
        rows = rows_of(out)
        assert list(rows[0]) == ["x", "psi_0", "psi_1", "psi_2"]
        assert float(rows[0]["x"]) == pytest.approx(-3.0)

    def test_residual_columns(self, capsys):
        _, out, _ = run(capsys, "wavefunctions", "--sector", "minus",
                        "--m", "3", "--levels", "1", "--dx", "0.01",
                        "--residual")
        rows = rows_of(out)
        assert list(rows[0]) == ["x", "residual_0"]
        assert max(abs(float(r["residual_0"])) for r in rows) < 0.05

    def test_wavefunctions_need_one_sector(self, capsys):
        code, _, _ = run(capsys, "wavefunctions", "--sector", "both")
        assert code == cli.EXIT_USAGE
