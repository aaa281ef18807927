"""Configuration layer.

Usage:
    from theoria.core import load_config, validate_config

    config = load_config()
    problems = validate_config(config)
"""

from theoria.core.config import (
    EngineConfig,
    OutputConfig,
    StoreConfig,
    TheoriaConfig,
    load_config,
    validate_config,
)

__all__ = [
    "TheoriaConfig",
    "EngineConfig",
    "StoreConfig",
    "OutputConfig",
    "load_config",
    "validate_config",
]


def create_default_config() -> TheoriaConfig:
    """Create a default system configuration."""
    return TheoriaConfig()
