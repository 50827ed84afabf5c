import json

import pytest

from classes.errors import ConfigError
from config import FIGURES, RunConfig, build_config, load_config_file


def test_defaults():
    cfg = build_config()
    assert cfg.alpha == "0.5" and cfg.beta == "2.5"
    assert cfg.a == "-1"
    assert cfg.n_max == 30
    assert cfg.output_format == "csv"
    assert cfg.to_dict()["scan_n_max"] == 4096


def test_cli_overrides_file():
    cfg = build_config({"alpha": "1", "n_max": 12}, {"alpha": "2", "n_max": None})
    assert cfg.alpha == "2"
    assert cfg.n_max == 12


def test_values_are_coerced():
    cfg = build_config({"M": 3, "n_max": "7"})
    assert cfg.M == "3"
    assert cfg.n_max == 7


@pytest.mark.parametrize(
    "values",
    [
        {"M": "-1"},
        {"N": "-0.5"},
        {"alpha": "-1"},
        {"beta": "abc"},
        {"precision_bits": 32},
        {"n_max": 0},
        {"output_format": "xml"},
        {"scan_n0": 64, "scan_n_max": 32},
        {"n_max": "many"},
        {"colour": "blue"},
        {"log_level": "loud"},
    ],
)
def test_invalid_values_are_rejected(values):
    with pytest.raises(ConfigError):
        build_config(values)


def test_load_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"beta": "3", "seed": 5}))
    assert build_config(load_config_file(path)).seed == 5

    with pytest.raises(ConfigError):
        load_config_file(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config_file(bad)
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_config_file(listed)


def test_real_fields_parse_at_current_precision():
    assert RunConfig(alpha="0.25").real("alpha") == 0.25
    with pytest.raises(ConfigError):
        RunConfig(alpha="x").real("alpha")


def test_figures_are_defined_for_both_panels():
    assert set(FIGURES) == {"fig1a", "fig1b"}
    assert FIGURES["fig1a"]["j"] == 2
