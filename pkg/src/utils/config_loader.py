from dataclasses import dataclass, field

import yaml

from src.utils.env_utils import load_environment_variables
from src.utils.errors import ValidationError
from src.utils.logger import setup_logging

# Instantiate a logger for the config loader
logger = setup_logging("config_loader")


def load_yaml_config(file_path: str | None = None) -> dict:
    """
    Loads and validates a YAML configuration file.

    :param file_path: Path to the YAML file. Defaults to ``FREEWALK_CONFIG``.
    :return: Parsed configuration dictionary.
    :raises ValidationError: If the file is missing, unreadable or empty.
    """
    if file_path is None:
        file_path = load_environment_variables()["FREEWALK_CONFIG"]
    try:
        with open(file_path, "r", encoding="utf-8") as file:
            config = yaml.safe_load(file)
    except (OSError, yaml.YAMLError) as e:
        logger.exception(f"❌ Failed to load YAML file {file_path}: {e}")
        raise ValidationError(f"cannot load {file_path}: {e}") from e
    if not config:
        raise ValidationError(f"Invalid or empty configuration file "
                              f"{file_path}.")
    return config


def validate_config(config: dict, required_keys: list):
    """
    Validates that the required keys exist in the configuration.

    :param config: The configuration dictionary to validate.
    :param required_keys: A list of keys that must exist in the configuration.
    :raises ValidationError: If any required key is missing.
    """
    missing_keys = [key for key in required_keys if key not in config]
    if missing_keys:
        raise ValidationError(
            f"Missing required keys in configuration: {missing_keys}"
        )


@dataclass(frozen=True)
class AnalysisLimits:
    """Bounds handed to the analysis pipeline."""

    max_steps: int = 500
    pnp_slack: float = 2.0
    pnp_max_candidates: int = 200_000
    pnp_max_subdivisions: int = 64
    eigen_tolerance: float = 1e-10
    eigen_max_iterations: int = 100_000

    @classmethod
    def from_config(cls, config: dict | None) -> "AnalysisLimits":
        section = dict((config or {}).get("analysis", {}))
        unknown = set(section) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(
                f"Unknown analysis settings: {sorted(unknown)}")
        limits = cls(**section)
        if limits.max_steps < 0:
            raise ValidationError("analysis.max_steps must be >= 0")
        if limits.pnp_slack < 1:
            raise ValidationError("analysis.pnp_slack must be >= 1")
        return limits


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of one random-walk experiment."""

    steps: int
    checkpoints: tuple[int, ...]
    trials: int
    seed: int
    letter_budget: int = 1_000_000
    workers: int = 1
    also_inverse: bool = False
    limits: AnalysisLimits = field(default_factory=AnalysisLimits)

    def __post_init__(self):
        if self.steps < 1:
            raise ValidationError("walk steps must be >= 1")
        if self.trials < 1:
            raise ValidationError("walk trials must be >= 1")
        if not self.checkpoints:
            raise ValidationError("at least one checkpoint is required")
        if list(self.checkpoints) != sorted(set(self.checkpoints)):
            raise ValidationError(
                f"checkpoints {list(self.checkpoints)} must be strictly "
                "increasing")
        if self.checkpoints[0] < 1 or self.checkpoints[-1] > self.steps:
            raise ValidationError(
                f"checkpoints must lie in [1, {self.steps}]")
        if self.letter_budget < 1 or self.workers < 1:
            raise ValidationError(
                "walk.letter_budget and walk.workers must be positive")

    @classmethod
    def from_config(cls, config: dict | None, **overrides) -> "WalkConfig":
        """
        Merge the ``experiment`` and ``walk`` sections with ``overrides``.

        :param config: Parsed YAML configuration.
        :param overrides: Explicit values (for example from the CLI); None
            values are ignored.
        """
        config = config or {}
        values = {key: config.get("experiment", {}).get(key)
                  for key in ("steps", "checkpoints", "trials", "seed")}
        values.update(config.get("walk", {}))
        values.update({k: v for k, v in overrides.items() if v is not None})
        values.setdefault("limits", AnalysisLimits.from_config(config))
        unknown = set(values) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(f"Unknown walk settings: {sorted(unknown)}")
        missing = [k for k in ("steps", "checkpoints", "trials", "seed")
                   if values.get(k) is None]
        if missing:
            raise ValidationError(f"Missing walk settings: {missing}")
        values["checkpoints"] = tuple(int(n) for n in values["checkpoints"])
        return cls(**values)
