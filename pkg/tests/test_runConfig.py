import os
import pytest
import sys

sys.path.append(sys.path[0] + "/..")
import pysusy as susy  # noqa: E402
from pysusy import runConfig  # noqa: E402


HERE = os.path.dirname(os.path.abspath(__file__))


class TestRunConfig():

    def test_defaults(self):
        cfg = susy.RunConfig(environ={})
        assert cfg["m"] == 10
        assert cfg["dx"] == 1e-3
        assert cfg["format"] == "csv"
        assert cfg["output"] is None

    def test_set_and_default(self):
        cfg = susy.RunConfig(environ={})
        cfg.set("m", 4)
        assert cfg["m"] == 4
        cfg.set("m", None)
        assert cfg["m"] == 4
        cfg.default("m")
        assert cfg["m"] == 10

    def test_unknown_property(self):
        with pytest.raises(susy.ConfigError):
            susy.RunConfig(environ={}).set("basis", 3)

    def test_environment_grid_spacing(self):
        cfg = susy.RunConfig(environ={runConfig.ENV_GRID_DX: "0.25"})
        assert cfg["dx"] == 0.25
        with pytest.raises(susy.ConfigError):
            susy.RunConfig(environ={runConfig.ENV_GRID_DX: "fine"})

    @pytest.mark.parametrize("prop,value", [("m", 0), ("dx", -0.1),
                                            ("format", "xml"),
                                            ("sector", "both-ish"),
                                            ("order", -1)])
    def test_validation(self, prop, value):
        cfg = susy.RunConfig(environ={})
        cfg.set("command", "variational")
        cfg.set(prop, value)
        with pytest.raises(susy.ConfigError):
            cfg.validate()

    def test_unknown_command(self):
        cfg = susy.RunConfig(environ={})
        cfg.set("command", "plot")
        with pytest.raises(susy.ConfigError):
            cfg.validate()

    @pytest.mark.parametrize("text,sizes", [("1..3", [1, 2, 3]),
                                            ("2,5", [2, 5]),
                                            ("4", [4])])
    def test_sweep(self, text, sizes):
        assert runConfig.parse_sweep(text) == sizes

    def test_bad_sweep(self):
        with pytest.raises(susy.ConfigError):
            runConfig.parse_sweep("one..ten")


class TestJsonFile():

    def test_loads_properties(self):
        cfg = susy.RunConfig.from_jsonfile(
            os.path.join(HERE, "variational-plus.json"), environ={})
        assert cfg["sector"] == "plus"
        assert cfg["m"] == 1
        assert cfg["compare-thesis"] is True

    def test_overrides_beat_the_file(self):
        cfg = susy.RunConfig.from_jsonfile(
            os.path.join(HERE, "variational-plus.json"), environ={}, m=3)
        assert cfg["m"] == 3

    def test_file_beats_environment(self):
        cfg = susy.RunConfig.from_jsonfile(
            os.path.join(HERE, "shoot-minus.json"),
            environ={runConfig.ENV_GRID_DX: "0.5"})
        assert cfg["dx"] == 0.001

    def test_unknown_member_warns(self, capsys):
        cfg = susy.RunConfig.from_jsonfile(
            os.path.join(HERE, "shoot-minus.json"), environ={})
        assert cfg["levels"] == 7
        assert "colour" in capsys.readouterr().err

    def test_missing_root(self):
        with pytest.raises(susy.ConfigError):
            susy.RunConfig.from_jsonfile(os.path.join(HERE,
                                                      "broken-root.json"),
                                         environ={})

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(susy.ConfigError):
            susy.RunConfig.from_jsonfile(str(path), environ={})

    def test_missing_file(self, tmp_path):
        with pytest.raises(susy.ConfigError) as info:
            susy.RunConfig.from_jsonfile(str(tmp_path / "absent.json"),
                                         environ={})
        assert "cannot read" in str(info.value)

    def test_sector_is_unset_by_default(self):
        cfg = susy.RunConfig(environ={})
        assert cfg["sector"] is None
