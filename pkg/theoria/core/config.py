"""Configuration models and loading."""

from dataclasses import dataclass, field
from typing import List, Optional
from pathlib import Path
import logging
import os

import yaml
from dotenv import load_dotenv

from theoria.utils.validation import (
    SUCCESSOR_PREFIX,
    is_constant_symbol,
    validate_log_level,
)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("config/theoria.yaml")


@dataclass
class EngineConfig:
    """Saturation engine configuration."""
    max_rounds: int = 10_000
    concurrency: int = 4

    @property
    def occurs_check(self) -> bool:
        # Unification always runs the occurs-check.
        return True


@dataclass
class StoreConfig:
    """Fact store configuration."""
    default_situation: str = "sigma0"
    csv_encoding: str = "utf-8"


@dataclass
class OutputConfig:
    """CLI rendering configuration."""
    json: bool = False
    color: bool = True
    indent: Optional[int] = None


@dataclass
class TheoriaConfig:
    """Main system configuration."""
    debug_mode: bool = False
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    engine: EngineConfig = field(default_factory=EngineConfig)
    store: StoreConfig = field(default_factory=StoreConfig)
    output: OutputConfig = field(default_factory=OutputConfig)


def _apply_yaml(config: TheoriaConfig, data: dict) -> None:
    for key in ("debug_mode", "log_level", "log_file"):
        if key in data:
            setattr(config, key, data[key])
    sections = {
        "engine": config.engine,
        "store": config.store,
        "output": config.output,
    }
    for name, section in sections.items():
        values = data.get(name) or {}
        for key, value in values.items():
            if hasattr(section, key) and key != "occurs_check":
                setattr(section, key, value)
            else:
                logger.warning(f"Ignoring unknown config key {name}.{key}")


def load_config(path: Optional[Path] = None) -> TheoriaConfig:
    """Load configuration from defaults, YAML file and environment."""
    load_dotenv()

    config = TheoriaConfig()

    config_path = path or DEFAULT_CONFIG_PATH
    if config_path.exists():
        try:
            with open(config_path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            _apply_yaml(config, data)
        except (OSError, yaml.YAMLError) as e:
            logger.warning(f"Failed to load {config_path}: {e}. Using defaults.")

    config.debug_mode = os.getenv(
        "THEORIA_DEBUG", str(config.debug_mode)
    ).lower() == "true"
    config.log_level = os.getenv("THEORIA_LOG_LEVEL", config.log_level)
    config.log_file = os.getenv("THEORIA_LOG_FILE", config.log_file or "") or None

    config.engine.max_rounds = int(
        os.getenv("THEORIA_MAX_ROUNDS", str(config.engine.max_rounds))
    )
    config.engine.concurrency = int(
        os.getenv("THEORIA_CONCURRENCY", str(config.engine.concurrency))
    )
    config.store.default_situation = os.getenv(
        "THEORIA_DEFAULT_SITUATION", config.store.default_situation
    )

    if os.getenv("THEORIA_NO_COLOR"):
        config.output.color = False

    return config


def validate_config(config: TheoriaConfig) -> List[str]:
    """Validate configuration and return errors."""
    errors = []

    if not validate_log_level(config.log_level):
        errors.append(f"log_level '{config.log_level}' is not a logging level name")

    if config.engine.max_rounds < 1:
        errors.append("engine max_rounds must be at least 1")

    if config.engine.concurrency < 1:
        errors.append("engine concurrency must be at least 1")

    situation = config.store.default_situation
    if not is_constant_symbol(situation) or situation.startswith(SUCCESSOR_PREFIX):
        errors.append(
            f"default_situation '{situation}' must be a lower-case constant "
            f"not starting with '{SUCCESSOR_PREFIX}'"
        )

    return errors
