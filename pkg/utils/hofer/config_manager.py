"""
ConfigManager - settings for the bound, relation and intersection tools
Handles loading, validation and display of hofer_config.json, plus link-parameter files
"""
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from rich.console import Console
from rich.table import Table

from .link_params import LinkParams, LinkParamsError

REQUIRED_SECTIONS = ("bounds", "relations", "intersections", "debug")


class ConfigError(ValueError):
    """Malformed configuration file"""


def _positive_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x > 0


def _positive_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and x > 0


VALIDATION_RULES = (
    ("bounds.strict_lambda", lambda x: isinstance(x, bool), "Must be boolean"),
    ("relations.samples", _positive_int, "Must be positive integer"),
    ("relations.seed", lambda x: isinstance(x, int) and not isinstance(x, bool), "Must be integer"),
    ("relations.max_weight_denominator", _positive_int, "Must be positive integer"),
    ("intersections.tol", _positive_number, "Must be positive number"),
    ("intersections.grid", lambda x: _positive_int(x) and x >= 2, "Must be integer >= 2"),
    ("intersections.zero_eps", _positive_number, "Must be positive number"),
    ("intersections.max_depth", _positive_int, "Must be positive integer"),
    ("intersections.max_workers", _positive_int, "Must be positive integer"),
    ("intersections.degenerate_tol", _positive_number, "Must be positive number"),
    ("debug.verbose_logging", lambda x: isinstance(x, bool), "Must be boolean"),
    ("debug.rich_console_output", lambda x: isinstance(x, bool), "Must be boolean"),
)


class ConfigManager:
    """
    Loads and validates the tool settings

    The settings path is, in order: the explicit argument, the HOFER_CONFIG
    environment variable, hofer_config.json next to this module.
    """

    def __init__(self, config_path: Optional[str] = None, console: Optional[Console] = None):
        self.console = console or Console()
        self.config_path = config_path or os.environ.get("HOFER_CONFIG") or self._get_default_config_path()
        self.config = self._load_and_validate_config()

    def _get_default_config_path(self) -> str:
        return str(Path(__file__).parent / "hofer_config.json")

    def _load_and_validate_config(self) -> Dict[str, Any]:
        """
        Raises:
            FileNotFoundError: If the config file doesn't exist
            ConfigError: If it is invalid JSON, misses a section or holds a bad value
        """
        if not os.path.exists(self.config_path):
            raise FileNotFoundError(f"Configuration file not found: {self.config_path}")

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                config = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in config file: {e}") from e

        if not isinstance(config, dict):
            raise ConfigError("config file must hold a JSON object")

        missing_sections = [section for section in REQUIRED_SECTIONS if section not in config]
        if missing_sections:
            raise ConfigError(f"Missing required config sections: {missing_sections}")

        self.config = config
        errors = self.validation_errors()
        if errors:
            raise ConfigError("; ".join(errors))
        return config

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation, e.g. "intersections.tol"
        """
        value = self.config
        try:
            for key in key_path.split("."):
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def validation_errors(self) -> list:
        errors = []
        for key_path, validator, message in VALIDATION_RULES:
            value = self.get(key_path)
            if value is None:
                errors.append(f"{key_path}: missing")
            elif not validator(value):
                errors.append(f"{key_path}: {message}, got {value!r}")
        return errors

    def intersection_settings(self) -> Dict[str, Any]:
        """Keyword arguments for signed_intersections"""
        section = self.config["intersections"]
        return {
            "tol": section["tol"],
            "zero_eps": section["zero_eps"],
            "max_depth": section["max_depth"],
            "max_workers": section["max_workers"],
            "degenerate_tol": section["degenerate_tol"],
        }

    def is_debug_mode(self) -> bool:
        return self.get("debug.verbose_logging", False)

    def should_use_rich_output(self) -> bool:
        return self.get("debug.rich_console_output", True)

    def test_config(self) -> bool:
        """Print every section and value check; True if all pass"""
        self.console.print(f"[yellow]Config file:[/yellow] {self.config_path}")

        table = Table(title="Configuration", show_header=True, header_style="bold magenta")
        table.add_column("Setting", style="cyan")
        table.add_column("Value", style="white")
        table.add_column("Status", justify="center", width=8)

        failing = {error.split(":")[0] for error in self.validation_errors()}
        for key_path, _, _ in VALIDATION_RULES:
            status = "[red]✗[/red]" if key_path in failing else "[green]✓[/green]"
            table.add_row(key_path, repr(self.get(key_path)), status)
        self.console.print(table)
        return not failing


def load_link_params_file(path: str, overrides: Optional[Dict[str, Any]] = None) -> LinkParams:
    """
    Read link parameters from a JSON file {"k", "g", "p", "lambda", "area"};
    non-None entries of overrides replace the file values

    Raises:
        FileNotFoundError: If the file doesn't exist
        ConfigError: If it is invalid JSON or misses a parameter
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Link parameter file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in link parameter file: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("link parameter file must hold a JSON object")
    data.update({key: value for key, value in (overrides or {}).items() if value is not None})
    try:
        return LinkParams.from_dict(data)
    except LinkParamsError as e:
        raise ConfigError(str(e)) from e
