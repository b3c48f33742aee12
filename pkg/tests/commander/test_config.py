import math
from pathlib import Path

import pytest

from beurlab.commander import (
    ConfigError,
    ExperimentConfig,
    build_config,
    load_config,
    parse_config_text,
    parse_overrides,
)


CONFIG_TEXT = """
# limit of log along phi(x) = x
F = log(x)
phi = linear(1)
fit-model = c_log_eta   # dashes become underscores

seed = 5
format = csv
"""


def test_parse_config_text():
    # Action
    values = parse_config_text(CONFIG_TEXT)

    # Assert
    assert values == {"F": "log(x)", "phi": "linear(1)", "fit_model": "c_log_eta", "seed": "5", "format": "csv"}


@pytest.mark.parametrize("text, fragment", [("x0 100", "<config>:1"), ("a = 1\na = 2", "duplicate"), ("= 3", "expected")])
def test_parse_config_text_errors(text: str, fragment: str):
    # Assert
    with pytest.raises(ConfigError) as info:
        parse_config_text(text)
    assert fragment in str(info.value)


def test_load_config(tmp_path: Path):
    # Setup
    path = tmp_path / "limit.cfg"
    path.write_text(CONFIG_TEXT, encoding="utf-8")

    # Assert
    assert load_config(path)["phi"] == "linear(1)"
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.cfg")


def test_parse_overrides():
    # Assert
    assert parse_overrides(["--x0", "1e3", "--fit-model", "c_linear"]) == {"x0": "1e3", "fit_model": "c_linear"}
    with pytest.raises(ConfigError):
        parse_overrides(["--x0"])
    with pytest.raises(ConfigError):
        parse_overrides(["x0", "1"])
    with pytest.raises(ConfigError):
        parse_overrides(["--", "1"])


def test_typed_getters():
    # Setup
    cfg = ExperimentConfig("limit", {"tol": "1e-3", "n": "4", "t_grid": "1, 2,3", "bad": "abc", "zero": "0"})

    # Assert
    assert cfg.get_float("tol") == 1e-3
    assert cfg.get_float("absent", 2.0) == 2.0
    assert cfg.get_int("n") == 4
    assert cfg.get_list("t_grid") == (1.0, 2.0, 3.0)
    assert cfg.get_str("absent", "x") == "x"
    assert "tol" in cfg and "absent" not in cfg
    assert cfg.bindings() == {"tol": 1e-3, "n": 4.0, "zero": 0.0}
    with pytest.raises(ConfigError) as info:
        cfg.get_float("bad")
    assert "'bad'" in str(info.value)
    with pytest.raises(ConfigError):
        cfg.get_int("tol")
    with pytest.raises(ConfigError):
        cfg.get_list("bad")
    with pytest.raises(ConfigError):
        cfg.get_tol("zero", 1.0)
    with pytest.raises(ConfigError):
        cfg.get_float("absent")


def test_grid_from_config():
    # Setup
    cfg = ExperimentConfig("limit", {"x0": "10", "count": "3", "limit_tol": "1e-6"})

    # Action
    grid = cfg.grid()

    # Assert
    assert grid.x_grid == [10.0, 100.0, 1000.0]
    assert grid.tol == 1e-6
    with pytest.raises(ConfigError) as info:
        ExperimentConfig("limit", {"ratio": "1"}).grid()
    assert "Invalid grid" in str(info.value)


def test_get_flow_registry_and_expression():
    # Setup
    cfg = ExperimentConfig(
        "limit",
        {"phi": "linear(2)", "psi": "log()", "chi": "k*x + 1", "chi_rho": "1", "k": "1", "bad": "power(2)", "odd": "unknown(1)"},
    )

    # Action
    phi = cfg.get_flow("phi")
    log_phi = cfg.get_flow("psi")
    chi = cfg.get_flow("chi")

    # Assert
    assert (phi.family, phi.params, phi(3.0)) == ("linear", (2.0,), 6.0)
    assert log_phi.domain_min == math.e
    assert chi.declared_rho == 1.0
    assert chi(1.0) == 2.0
    with pytest.raises(ConfigError):
        cfg.get_flow("bad")
    with pytest.raises(ConfigError):
        cfg.get_flow("odd")
    assert cfg.get_flow("absent", "constant(3)")(10.0) == 3.0


def test_get_function_with_domain():
    # Setup
    cfg = ExperimentConfig("limit", {"F": "c*log(x)", "c": "2", "F_lower": "0"})

    # Action
    F = cfg.get_function("F")

    # Assert
    assert F(math.e) == pytest.approx(2.0)
    assert not F.contains(0.0)
    assert cfg.get_function("G", "2*x")(3.0) == 6.0


def test_build_config_merges_file_and_overrides(tmp_path: Path):
    # Setup
    path = tmp_path / "limit.cfg"
    path.write_text(CONFIG_TEXT, encoding="utf-8")

    # Action
    cfg = build_config("limit", path, ["--phi", "linear(2)", "--out", str(tmp_path / "r.csv")])

    # Assert
    assert cfg.values["phi"] == "linear(2)"
    assert cfg.seed == 5
    assert cfg.fmt == "csv"
    assert cfg.output == tmp_path / "r.csv"
    assert not {"seed", "format", "out"} & cfg.values.keys()


def test_build_config_explicit_arguments_win(tmp_path: Path):
    # Setup
    path = tmp_path / "limit.cfg"
    path.write_text(CONFIG_TEXT, encoding="utf-8")

    # Action
    cfg = build_config("limit", path, seed=9, fmt="json")

    # Assert
    assert cfg.seed == 9
    assert cfg.fmt == "json"
    assert cfg.output is None


def test_build_config_defaults_format_to_json():
    # Action
    cfg = build_config("limit", overrides=["--seed", "2"])

    # Assert
    assert cfg.fmt == "json"
    assert cfg.seed == 2


def test_build_config_errors():
    # Assert
    with pytest.raises(ConfigError):
        build_config("limit", overrides=["--seed", "abc"])
    with pytest.raises(ConfigError):
        build_config("limit", fmt="xml")
