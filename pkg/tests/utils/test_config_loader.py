import pytest
import yaml

from src.utils.config_loader import (
    AnalysisLimits, WalkConfig, load_yaml_config, validate_config,
)
from src.utils.errors import ValidationError


def test_shipped_config_is_complete():
    config = load_yaml_config("config/config.yaml")
    validate_config(config, ["paths", "analysis", "walk", "experiment",
                             "seeds"])
    limits = AnalysisLimits.from_config(config)
    assert limits == AnalysisLimits()
    walk = WalkConfig.from_config(config)
    assert walk.checkpoints == (5, 10, 20, 40)
    assert walk.steps == 40
    assert walk.trials == 200
    assert walk.seed == 42


def test_missing_or_empty_config(tmp_path):
    with pytest.raises(ValidationError):
        load_yaml_config(str(tmp_path / "missing.yaml"))
    empty = tmp_path / "empty.yaml"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_yaml_config(str(empty))
    with pytest.raises(ValidationError):
        validate_config({"paths": {}}, ["paths", "analysis"])


def test_environment_selects_the_config(tmp_path, monkeypatch):
    path = tmp_path / "custom.yaml"
    path.write_text(yaml.safe_dump({"analysis": {"max_steps": 7}}),
                    encoding="utf-8")
    monkeypatch.setenv("FREEWALK_CONFIG", str(path))
    assert AnalysisLimits.from_config(load_yaml_config()).max_steps == 7


def test_analysis_limits_validation():
    with pytest.raises(ValidationError):
        AnalysisLimits.from_config({"analysis": {"max_fold_steps": 3}})
    with pytest.raises(ValidationError):
        AnalysisLimits.from_config({"analysis": {"max_steps": -1}})
    with pytest.raises(ValidationError):
        AnalysisLimits.from_config({"analysis": {"pnp_slack": 0.5}})


def test_walk_overrides():
    config = {"experiment": {"steps": 10, "checkpoints": [5, 10],
                             "trials": 3, "seed": 1},
              "walk": {"workers": 2}}
    walk = WalkConfig.from_config(config, steps=20, checkpoints=[4, 20],
                                  trials=None)
    assert (walk.steps, walk.checkpoints, walk.trials) == (20, (4, 20), 3)
    assert walk.workers == 2
    with pytest.raises(ValidationError):
        WalkConfig.from_config({"experiment": {"steps": 3}})
    with pytest.raises(ValidationError):
        WalkConfig.from_config(config, colour="blue")


@pytest.mark.parametrize("overrides", [
    {"steps": 0},
    {"trials": 0},
    {"checkpoints": ()},
    {"checkpoints": (5, 5)},
    {"checkpoints": (20,)},
    {"letter_budget": 0},
    {"workers": 0},
])
def test_walk_config_validation(overrides):
    values = {"steps": 10, "checkpoints": (5, 10), "trials": 2, "seed": 0}
    values.update(overrides)
    with pytest.raises(ValidationError):
        WalkConfig(**values)
