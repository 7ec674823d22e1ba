import json

import numpy as np
import pytest

from app.config import load_config_section
from app.constants import RunMode
from app.exceptions import ConfigError
from app.models.run_config import load_config, parse_config
from app.utils.json_utils import parse_json_document, set_key_path
from app.utils.logger import get_logger, logger
from app.utils.settings import SettingsManager, get_settings, settings


def _count_document(**overrides) -> dict:
    document = {
        "mode": "count",
        "problem": {
            "abstract": {
                "coefficients": [[[1.0, 0.0], [0.0, 4.0]], [[-1.0, 0.0], [0.0, -1.0]]],
                "lambda_interval": [-10.0, 10.0],
            }
        },
        "interval": [0.0, 5.0],
    }
    document.update(overrides)
    return document


def _differential_document(**overrides) -> dict:
    differential = {
        "n": 1,
        "interval": [0.0, 1.0],
        "lambda_interval": [-5.0, 5.0],
        "coefficients": ["1", "-lambda"],
        "boundary": {"form": "constant", "u0": [[1.0, 0.0], [0.0, 1.0]]},
    }
    differential.update(overrides)
    return {"mode": "count", "problem": {"differential": differential}, "interval": [0.0, 1.0]}


def _key_path(document) -> str:
    with pytest.raises(ConfigError) as excinfo:
        parse_config(document)
    return excinfo.value.key_path


class TestLoad:
    def test_dirichlet(self, problems_dir):
        config = load_config(problems_dir / "dirichlet.json")
        assert config.mode is RunMode.COUNT
        assert config.interval == (1.5, 10.0)
        problem = config.differential_problem()
        assert problem.n == 1
        assert problem.mesh == 64
        assert config.output.prefix == "dirichlet"
        assert config.grid().size == 121

    @pytest.mark.parametrize(
        "name", ["dirichlet", "neumann", "clamped_beam", "diagonal_pencil", "scalar_quadratic"]
    )
    def test_shipped_problems_are_valid(self, problems_dir, name):
        config = load_config(problems_dir / f"{name}.json")
        assert config.output.prefix == name

    def test_abstract_coefficients(self, problems_dir):
        config = load_config(problems_dir / "scalar_quadratic.json")
        coefficients = config.problem.abstract.coefficients
        assert [C.shape for C in coefficients] == [(1, 1)] * 3
        assert config.lambda_interval == (-np.inf, np.inf)

    def test_prefix_defaults_to_file_name(self, tmp_path):
        path = tmp_path / "pencil.json"
        path.write_text(json.dumps(_count_document()), encoding="utf-8")
        assert load_config(path).output.prefix == "pencil"

    def test_overrides(self, problems_dir, tmp_path):
        overrides = {
            "mode": "verify",
            "mesh": 16,
            "lambda_grid.steps": 11,
            "output.directory": str(tmp_path),
        }
        config = load_config(problems_dir / "dirichlet.json", overrides)
        assert config.mode is RunMode.VERIFY
        assert config.differential_problem().mesh == 16
        assert config.grid().size == 11
        assert config.output.directory == str(tmp_path)

    def test_unset_overrides_are_ignored(self, problems_dir):
        config = load_config(problems_dir / "dirichlet.json", {"mesh": None})
        assert config.mesh == 64

    def test_grid_steps_without_a_grid(self, tmp_path):
        path = tmp_path / "pencil.json"
        path.write_text(json.dumps(_count_document()), encoding="utf-8")
        config = load_config(path, {"lambda_grid.steps": 6})
        np.testing.assert_allclose(config.grid(), [0.0, 1.0, 2.0, 3.0, 4.0, 5.0])

    def test_default_grid_spans_the_interval(self):
        config = parse_config(_count_document())
        grid = config.grid()
        assert grid.size == settings.GRID_STEPS
        assert (grid[0], grid[-1]) == (0.0, 5.0)

    def test_count_options(self):
        config = parse_config(_count_document(tolerances={"zero_tol": 1e-5}, scan_step=0.5))
        options = config.count_options()
        assert options.zero_tol == 1e-5
        assert options.grid_step == 0.5
        assert options.cluster_tol == settings.CLUSTER_TOL

    def test_one_tol_reaches_the_problem(self):
        config = parse_config({**_differential_document(), "tolerances": {"one_tol": 1e-6}})
        assert config.differential_problem().one_tol == 1e-6


class TestErrors:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.json")

    def test_syntax_error_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "mode": "count",\n  oops\n}\n', encoding="utf-8")
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert (excinfo.value.line, excinfo.value.column) == (3, 3)
        assert "line 3" in str(excinfo.value)

    def test_not_an_object(self):
        with pytest.raises(ConfigError):
            parse_config([1, 2])

    def test_unknown_mode(self):
        assert _key_path(_count_document(mode="solve")) == "mode"

    def test_reversed_interval(self):
        assert _key_path(_count_document(interval=[3.0, 2.0])) == "interval"

    def test_interval_outside_lambda_interval(self):
        assert _key_path(_count_document(interval=[-30.0, 1.0])) == "interval"

    def test_count_needs_interval(self):
        document = _count_document(lambda_grid={"start": 0.0, "stop": 1.0})
        del document["interval"]
        assert _key_path(document) == "interval"

    def test_scan_needs_a_grid_or_interval(self):
        document = _count_document(mode="nu-scan")
        del document["interval"]
        assert _key_path(document) == "lambda_grid"

    def test_grid_steps(self):
        document = _count_document(lambda_grid={"start": 0.0, "stop": 1.0, "steps": 1})
        assert _key_path(document) == "lambda_grid.steps"

    def test_grid_outside_lambda_interval(self):
        document = _count_document(lambda_grid={"start": -20.0, "stop": 1.0})
        assert _key_path(document) == "lambda_grid"

    def test_problem_needs_exactly_one_kind(self):
        assert _key_path(_count_document(problem={})) == "problem"

    def test_bad_coefficient_expression(self):
        document = _differential_document(coefficients=["1", "-lambda )"])
        assert _key_path(document) == "problem.differential.coefficients"

    def test_convergence_needs_a_differential_problem(self):
        assert _key_path(_count_document(convergence_levels=3)) == "convergence_levels"

    def test_message_names_the_key(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config(_count_document(interval=[3.0, 2.0]))
        assert str(excinfo.value).startswith("interval: ")


class TestJsonUtils:
    def test_parse(self):
        assert parse_json_document('{"a": [1, 2.5]}') == {"a": [1, 2.5]}

    def test_set_key_path_creates_objects(self):
        document = {"output": "x"}
        set_key_path(document, "output.directory", "out")
        set_key_path(document, "lambda_grid.steps", 5)
        assert document == {"output": {"directory": "out"}, "lambda_grid": {"steps": 5}}


class TestSettings:
    def test_singleton(self):
        assert SettingsManager() is settings
        assert get_settings() is settings

    def test_defaults_from_yaml(self):
        section = load_config_section("numerics")
        assert settings.ONE_TOL == pytest.approx(float(section["one_tol"]))
        assert settings.EIGEN_SOLVER in ("lapack", "jacobi")

    def test_missing_section_uses_defaults(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("numerics: [1, 2]\n", encoding="utf-8")
        assert load_config_section("numerics", {"mesh": 8}, path) == {"mesh": 8}
        absent = tmp_path / "absent.yaml"
        assert load_config_section("output", {"directory": "out"}, absent) == {"directory": "out"}

    def test_unknown_key(self):
        assert settings.get("NOT_A_SETTING", "fallback") == "fallback"

    def test_logger(self):
        assert logger.name == "spectral_count"
        assert not logger.propagate
        assert get_logger() is logger
