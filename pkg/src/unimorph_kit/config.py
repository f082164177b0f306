"""
Configuration Management for UniMorph Kit
Pydantic Settings-based configuration loaded from YAML.

Loading Priority (highest to lowest):
1. Explicit file passed with --config
2. YAML Configuration Files (configs/*.yaml)
3. Model defaults

Environment variables are deliberately not consulted so that a given set of
inputs and flags always produces the same output.
"""
from pathlib import Path
from typing import Any, Optional

import yaml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic_settings.sources import PydanticBaseSettingsSource

from unimorph_kit.errors import UniMorphError


class ConfigError(UniMorphError):
    """The configuration file exists but does not validate."""

    code = "ConfigError"


# --- 1. Section Schemas ---


class SegmentationConfig(BaseModel):
    """Schema for the 'segmentation' section."""
    model_config = ConfigDict(extra="forbid")

    max_path_length: int = Field(default=16, ge=1, description="Longest edge path explored per form")
    all_parses: bool = False


class DerivationConfig(BaseModel):
    """Schema for the 'derivations' section (affix inference thresholds)."""
    model_config = ConfigDict(extra="forbid")

    truncation_min_prefix: int = Field(default=3, ge=1)
    truncation_slack: int = Field(default=3, ge=0)


class EvaluationConfig(BaseModel):
    """Schema for the 'evaluation' section."""
    model_config = ConfigDict(extra="forbid")

    partial_match: bool = False


class DatasetConfig(BaseModel):
    """Schema for the 'dataset' section."""
    model_config = ConfigDict(extra="forbid")

    require_nfc: bool = True
    schema_mode: str = Field(default="auto", pattern="^(flat|hierarchical|auto)$")
    parse_mode: str = Field(default="lax", pattern="^(strict|lax)$")


class LoggingConfig(BaseModel):
    """Schema for the 'logging' section."""
    model_config = ConfigDict(extra="forbid")

    level: str = Field(default="WARNING", pattern="^(TRACE|DEBUG|INFO|SUCCESS|WARNING|ERROR|CRITICAL)$")


class SystemConfig(BaseModel):
    """Schema for system-level configuration."""
    model_config = ConfigDict(extra="forbid")

    jobs: int = Field(default=1, ge=1, description="Worker processes for multi-file commands")


# --- 2. Main Configuration Class ---


class UniMorphSettings(BaseSettings):
    """Settings object assembled from YAML data passed as init kwargs."""

    model_config = SettingsConfigDict(extra="ignore")

    segmentation: SegmentationConfig = Field(default_factory=SegmentationConfig)
    derivations: DerivationConfig = Field(default_factory=DerivationConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    dataset: DatasetConfig = Field(default_factory=DatasetConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    system: SystemConfig = Field(default_factory=SystemConfig)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Only the YAML data passed to the constructor is a source."""
        return (init_settings,)


# --- 3. Helper Functions ---


def _load_yaml_config(yaml_path: Path, strict: bool = False) -> dict[str, Any]:
    """Load and return YAML configuration as dictionary. With `strict`, unreadable files raise ConfigError."""
    if not yaml_path.exists():
        logger.warning(f"Config file not found: {yaml_path}")
        return {}

    try:
        with open(yaml_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        if strict:
            raise ConfigError(f"cannot read {yaml_path}: {e}") from e
        logger.warning(f"Failed to load {yaml_path}: {e}")
        return {}
    if not isinstance(data, dict):
        if strict:
            raise ConfigError(f"{yaml_path}: top level is not a mapping")
        logger.warning(f"Ignoring {yaml_path}: top level is not a mapping")
        return {}
    return data


def _deep_merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    """Recursively merge dictionary 'update' into 'base'."""
    result = base.copy()

    for key, value in update.items():
        if isinstance(value, dict) and key in result and isinstance(result[key], dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value

    return result


def _build_settings(data: dict[str, Any], origin: str) -> UniMorphSettings:
    try:
        return UniMorphSettings(**data)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration in {origin}: {e}") from e


def _load_config(config_dir: Optional[Path | str] = None) -> UniMorphSettings:
    """
    Load every YAML file in the configs directory, merged in name order.

    Args:
        config_dir: Optional path to configuration directory. Defaults to 'configs/'.
    """
    if config_dir is None:
        candidates = [
            Path.cwd() / "configs",
            Path(__file__).resolve().parents[2] / "configs",
        ]
        config_dir = next((p for p in candidates if p.exists()), None)

    if not config_dir:
        logger.debug("Config directory 'configs/' not found. Using defaults.")
        return UniMorphSettings()

    config_dir = Path(config_dir)
    logger.debug(f"Loading configuration from: {config_dir}")

    yaml_files = sorted(list(config_dir.glob("*.yaml")) + list(config_dir.glob("*.yml")))
    master_data: dict[str, Any] = {}
    for file_path in yaml_files:
        file_data = _load_yaml_config(file_path)
        if file_data:
            logger.debug(f"Loaded {file_path.name} -> Keys: {list(file_data.keys())}")
            master_data = _deep_merge(master_data, file_data)

    return _build_settings(master_data, str(config_dir))


def load_config(path: Path | str) -> UniMorphSettings:
    """
    Make one YAML file the active configuration. Its values override the model
    defaults only; files under configs/ are not read.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    settings = _build_settings(_load_yaml_config(path, strict=True), str(path))
    Config.get_instance()._config = settings
    return settings


class Config:
    """Singleton configuration manager."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            settings = _load_config()
            cls._instance = super(Config, cls).__new__(cls)
            cls._instance._config = settings
        return cls._instance

    @staticmethod
    def get_instance() -> "Config":
        """Get the singleton configuration instance."""
        if Config._instance is None:
            Config._instance = Config()
        return Config._instance

    def load(self) -> UniMorphSettings:
        """Return the active configuration."""
        return self._config


def get_config() -> UniMorphSettings:
    """Get the active configuration."""
    return Config.get_instance().load()


def reset_config() -> None:
    """Forget the active configuration so the next access reloads it."""
    Config._instance = None
