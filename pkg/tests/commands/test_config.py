import click
import pytest

import vlsfbec.commands.config as c
from vlsfbec.app_state import AppState
from vlsfbec.cli_options import CLIOptionsBounds, CLIOptionsRoot, CLIOptionsSchedules
from vlsfbec.exceptions import ConfigError
from vlsfbec.types import ConfigFile


class TestLoadConfig:
    def test_no_file(self):
        config = c.load_config(None, {})
        assert config.options == {}
        assert config.description is None

    def test_template_vars(self, fixture_path):
        config = c.load_config(fixture_path("vlsf_config.yaml"), {"k": "5"})
        assert config.options == {"k": 5, "p_grid": "0.1:0.3:0.1", "seed": 7}
        assert config.description.startswith("backoff from capacity")

    def test_env_namespace(self, tmp_path, monkeypatch):
        monkeypatch.setenv("VLSF_TEST_P", "0.25")
        path = tmp_path / "env.yaml"
        path.write_text("vlsf:\n  options:\n    p: {{ env.VLSF_TEST_P }}\n")
        assert c.load_config(str(path), {}).options == {"p": 0.25}

    def test_empty_section(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("vlsf:\n")
        assert c.load_config(str(path), {}).options == {}

    def test_undefined_var(self, fixture_path):
        with pytest.raises(ConfigError, match="invalid template substitutions"):
            c.load_config(fixture_path("vlsf_config_invalid_j2.yaml"), {})

    def test_template_syntax(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("vlsf:\n  options:\n    k: {{ var.k \n")
        with pytest.raises(ConfigError, match="invalid template syntax"):
            c.load_config(str(path), {"k": "1"})

    def test_missing_root_key(self, fixture_path):
        with pytest.raises(ConfigError, match="top level 'vlsf' key"):
            c.load_config(fixture_path("vlsf_config_no_root.yaml"), {})

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("vlsf:\n  options: [k: 3\n")
        with pytest.raises(ConfigError, match="not valid YAML"):
            c.load_config(str(path), {})


class TestUnknownOptions:
    def test_known(self):
        c.check_unknown_options(ConfigFile(options={"k": 3, "delta": 0.01, "seed": 1}))

    def test_unknown(self, fixture_path):
        config = c.load_config(fixture_path("vlsf_config_unknown_key.yaml"), {})
        with pytest.raises(ConfigError, match="blocklength"):
            c.check_unknown_options(config)


def test_model_classes():
    names = {m.__name__ for m in c.get_cli_options_model_classes()}
    assert {"CLIOptionsRoot", "CLIOptionsBounds", "CLIOptionsSimulate", "CLIOptionsRender"} <= names


class TestResolve:
    def test_file_values_fill_models(self):
        app_state = AppState(
            root_options=CLIOptionsRoot(),
            bounds_options=CLIOptionsBounds(),
            loaded_config=ConfigFile(options={"k": 4, "seed": 9, "p_grid": "0.2:0.4:0.1"}),
        )
        with click.Context(click.Command("bounds")):
            c.resolve_model_with_cli_options(app_state)
        assert app_state.bounds_options.ks == [4]
        assert app_state.bounds_options.ps == [0.2, 0.3, 0.4]
        assert app_state.root_options.seed == 9
        # resolved values are written back
        assert app_state.loaded_config.options["k_range"] == "1:22"

    def test_command_line_wins(self):
        command = click.Command("schedules", params=[click.Option(["--delta"], type=float)])
        ctx = command.make_context("schedules", ["--delta", "0.01"])
        app_state = AppState(
            schedules_options=CLIOptionsSchedules(delta=0.01),
            loaded_config=ConfigFile(options={"delta": 0.2, "p": 0.3}),
        )
        with ctx:
            c.resolve_model_with_cli_options(app_state)
        assert app_state.schedules_options.delta == 0.01
        assert app_state.schedules_options.p == 0.3

    def test_requires_loaded_config(self):
        with pytest.raises(ValueError, match="loaded_config is not set"):
            c.resolve_model_with_cli_options(AppState())
