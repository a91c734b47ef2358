import pytest
from pydantic import ValidationError

from vlsfbec import cli_options as c
from vlsfbec.types import MessagePolicy, OutputFormat, Scheme, SolverMethod


class TestCLIOptionsRoot:
    """
    Tests covering base CLIOptionsRoot model and validation of its attributes
    """

    def test_cli_options_root_model(self):
        cli_options = c.CLIOptionsRoot()
        assert cli_options.seed == 20240611
        assert cli_options.out == "-"
        assert cli_options.format is OutputFormat.CSV
        assert cli_options.log_level == "WARN"

    def test_cli_options_with_lower_log_level(self):
        cli_options = c.CLIOptionsRoot(log_level="debug")
        assert cli_options.log_level == "DEBUG"

    def test_cli_options_with_invalid_log_level(self):
        with pytest.raises(ValueError):
            c.CLIOptionsRoot(log_level="invalid_log_level")

    def test_format_is_case_insensitive(self):
        assert c.CLIOptionsRoot(format="JSON").format is OutputFormat.JSON

    def test_invalid_format(self):
        with pytest.raises(ValidationError, match="must be one of"):
            c.CLIOptionsRoot(format="xlsx")

    def test_svg_needs_a_file(self):
        with pytest.raises(ValidationError, match="svg output needs a file path"):
            c.CLIOptionsRoot(format="svg")
        assert c.CLIOptionsRoot(format="svg", out="plot.svg").out == "plot.svg"

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed):
        with pytest.raises(ValidationError):
            c.CLIOptionsRoot(seed=seed)

    def test_workers(self):
        with pytest.raises(ValidationError):
            c.CLIOptionsRoot(workers=0)

    def test_config_exists(self, tmp_path):
        config_file = tmp_path / "config.yaml"
        config_file.write_text("config")
        cli_options = c.CLIOptionsRoot(config_file=str(config_file))
        assert cli_options.config_file == str(config_file)

    def test_config_relative_path(self, tmp_path, monkeypatch):
        (tmp_path / "config.yaml").write_text("config")
        monkeypatch.chdir(tmp_path)
        cli_options = c.CLIOptionsRoot(config_file="config.yaml")
        assert cli_options.config_file == str(tmp_path / "config.yaml")

    def test_config_does_not_exist(self):
        with pytest.raises(ValueError):
            c.CLIOptionsRoot(config_file="config_file")

    def test_config_file_is_dir(self, tmp_path):
        config_file = tmp_path / "config.yaml"
        config_file.mkdir()
        with pytest.raises(ValueError):
            c.CLIOptionsRoot(config_file=str(config_file))

    def test_no_default_config(self, tmp_path, monkeypatch):
        monkeypatch.setattr(c.const, "DEFAULT_CONFIG", str(tmp_path / "vlsf.yaml"))
        assert c.CLIOptionsRoot(config_file=None).config_file is None

    def test_default_config(self, tmp_path, monkeypatch):
        default = tmp_path / "vlsf.yaml"
        default.write_text("vlsf: {}")
        monkeypatch.setattr(c.const, "DEFAULT_CONFIG", str(default))
        assert c.CLIOptionsRoot(config_file=None).config_file == str(default)


class TestCLIOptionsBounds:
    def test_defaults(self):
        options = c.CLIOptionsBounds()
        assert options.ks == list(range(1, 23))
        assert options.ps == [0.1]

    def test_single_values_win(self):
        options = c.CLIOptionsBounds(k=5, k_range="1:3", p=0.4, p_grid="0.1:0.3:0.1")
        assert options.ks == [5]
        assert options.ps == [0.4]

    def test_range_from_list(self):
        assert c.CLIOptionsBounds(k_range=[2, 4]).ks == [2, 3, 4]

    @pytest.mark.parametrize(
        "kwargs", [{"k": 0}, {"p": 1.0}, {"p": -0.1}, {"k_range": "0:3"}, {"p_grid": "0.5:1:0.5"}]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            c.CLIOptionsBounds(**kwargs)


class TestCLIOptionsBackoff:
    def test_defaults(self):
        options = c.CLIOptionsBackoff()
        assert options.k == 3
        assert len(options.ps) == 99

    def test_grid_required(self):
        with pytest.raises(ValidationError, match="a p grid is required"):
            c.CLIOptionsBackoff(p_grid=None)


class TestCLIOptionsRankgap:
    def test_defaults(self):
        options = c.CLIOptionsRankgap()
        assert options.ks == list(range(1, 101))
        assert options.p == 0.1


class TestCLIOptionsSchedules:
    def test_defaults(self):
        options = c.CLIOptionsSchedules()
        assert options.ks == list(range(1, 21))
        assert options.ms == [1, 2, 4, 8, 16]
        assert options.delta == 1e-3
        assert options.method is SolverMethod.DP

    def test_m_list_from_yaml_list(self):
        assert c.CLIOptionsSchedules(m_list=[1, 3]).m_list == "1,3"

    def test_method(self):
        assert c.CLIOptionsSchedules(method="Exhaustive").method is SolverMethod.EXHAUSTIVE
        with pytest.raises(ValidationError, match="must be one of"):
            c.CLIOptionsSchedules(method="annealing")

    @pytest.mark.parametrize("kwargs", [{"delta": 0.0}, {"delta": 1.0}, {"m_list": "1,0"}, {"p": 1.0}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            c.CLIOptionsSchedules(**kwargs)


class TestCLIOptionsSimulate:
    def test_defaults(self):
        options = c.CLIOptionsSimulate()
        assert options.scheme is Scheme.ST_RLFC
        assert options.message_policy is MessagePolicy.RANDOM
        assert options.times is None
        assert options.observe_times == []
        assert options.trials == 100_000

    def test_schedule(self):
        assert c.CLIOptionsSimulate(schedule="2, 4").times == [2, 4]
        assert c.CLIOptionsSimulate(schedule=[3, 9]).times == [3, 9]
        assert c.CLIOptionsSimulate(schedule="Unbounded").times is None

    def test_schedule_must_increase(self):
        with pytest.raises(ValidationError, match="strictly increasing"):
            c.CLIOptionsSimulate(schedule="4,4")

    def test_observe(self):
        assert c.CLIOptionsSimulate(observe="3,6").observe_times == [3, 6]

    def test_fixed_message(self):
        options = c.CLIOptionsSimulate(k=2, message_policy="fixed", message="10")
        assert options.message == "10"

    def test_fixed_needs_message(self):
        with pytest.raises(ValidationError, match="needs --message"):
            c.CLIOptionsSimulate(message_policy="fixed")

    def test_message_length(self):
        with pytest.raises(ValidationError, match="message has 2 bits, k is 3"):
            c.CLIOptionsSimulate(message_policy="fixed", message="10")

    def test_message_alphabet(self):
        with pytest.raises(ValidationError, match="string of 0 and 1"):
            c.CLIOptionsSimulate(k=2, message_policy="fixed", message="12")

    @pytest.mark.parametrize("kwargs", [{"trials": 0}, {"k": 0}, {"scheme": "lt"}, {"p": 1.0}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            c.CLIOptionsSimulate(**kwargs)


class TestCLIOptionsRender:
    def test_source_must_exist(self, tmp_path):
        with pytest.raises(ValidationError, match="does not exist"):
            c.CLIOptionsRender(source=str(tmp_path / "missing.csv"))

    def test_source_is_absolute(self, tmp_path, monkeypatch):
        (tmp_path / "data.csv").write_text("k\n1\n")
        monkeypatch.chdir(tmp_path)
        assert c.CLIOptionsRender(source="data.csv").source == str(tmp_path / "data.csv")
