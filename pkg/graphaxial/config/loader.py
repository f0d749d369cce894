"""
Configuration loader module for graphaxial.

A configuration file may pull in others through a top-level ``imports`` list.
Paths are taken relative to the importing file, and the importing file wins
over everything it imports.
"""

import logging
from pathlib import Path
from typing import Any, Dict, FrozenSet, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError

from graphaxial.errors import ConfigError

logger = logging.getLogger(__name__)


def deep_merge_dicts(base: Dict[str, Any], overlay: Dict[str, Any]) -> Dict[str, Any]:
    """Merge ``overlay`` into a copy of ``base``.

    Nested mappings merge key by key, lists are concatenated and any other
    value from ``overlay`` replaces the one in ``base``.
    """
    merged = dict(base)
    for key, value in overlay.items():
        current = merged.get(key)
        if isinstance(current, dict) and isinstance(value, dict):
            merged[key] = deep_merge_dicts(current, value)
        elif isinstance(current, list) and isinstance(value, list):
            merged[key] = current + value
        else:
            merged[key] = value
    return merged


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        raise ConfigError(f"Error parsing YAML file {path}: {e}")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Configuration file {path} must hold a mapping")
    return data


def resolve_imports(path: Union[str, Path], chain: FrozenSet[Path] = frozenset()) -> Dict[str, Any]:
    """
    Read ``path`` and fold its imports into it, depth first.

    Args:
        path: The configuration file to read
        chain: Files on the current import path, used to detect cycles

    Returns:
        The merged configuration dictionary without the ``imports`` key

    Raises:
        ConfigError: On a circular or malformed import
        FileNotFoundError: If the file or an imported file does not exist
    """
    path = Path(path).resolve()
    if path in chain:
        raise ConfigError(f"Circular import detected: {path}")
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")

    config = _read_yaml(path)
    imports = config.pop("imports", [])
    if not isinstance(imports, list) or not all(isinstance(item, str) for item in imports):
        raise ConfigError(f"'imports' in {path} must be a list of file paths")

    merged: Dict[str, Any] = {}
    for item in imports:
        logger.debug(f"Processing import: {item} (from {path.name})")
        merged = deep_merge_dicts(merged, resolve_imports(path.parent / item, chain | {path}))
    return deep_merge_dicts(merged, config)


class EnumerationSettings(BaseModel):
    """Idempotent sweeps."""

    cap: int = Field(default=2**24, ge=1)
    workers: int = Field(default=1, ge=1)
    split_depth: int = Field(default=2, ge=0)


class FruchtSettings(BaseModel):
    """Gadget construction for prescribed automorphism groups."""

    base_tag_height: int = Field(default=1, ge=1)
    retry_bound: int = Field(default=3, ge=0)
    pendant_gadget: bool = True


class FusionSettings(BaseModel):
    enforce_zero: bool = True


class OracleSettings(BaseModel):
    """Randomized cross-checks."""

    random_samples: int = Field(default=200, ge=0)
    seed: int = 0


class ToolkitConfig(BaseModel):
    """Root configuration for graphaxial."""

    version: str = "1.0"
    enumeration: EnumerationSettings = Field(default_factory=EnumerationSettings)
    frucht: FruchtSettings = Field(default_factory=FruchtSettings)
    fusion: FusionSettings = Field(default_factory=FusionSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)


def load_config(config_path: Optional[str] = None) -> ToolkitConfig:
    """Load and validate a YAML configuration; the defaults when no path is given."""
    if config_path is None:
        return ToolkitConfig()

    config_dict = resolve_imports(config_path)
    logger.debug(f"Configuration loaded with imports resolved: {config_path}")

    try:
        return ToolkitConfig(**config_dict)
    except ValidationError as e:
        msg = f"Configuration validation error: {e}"
        logger.error(msg)
        raise ConfigError(msg)
