"""
Config Service - TOML run configs, preset merging and --set overrides.

A config file looks like::

    # frequencies and rates in units of ω
    preset = "fig3"
    params.f = 0.12

    [sweep]
    target = "omega_eg"
    start = 1.45
    stop = 1.60
    n_points = 301
"""
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from pydantic import ValidationError

from app.core.exceptions import ConfigParseError, ConfigValidationError, UnknownConfigKey
from app.presets.figure_presets import get_preset
from app.schemas.run_config import RunConfig

logger = logging.getLogger(__name__)

_VARIANT_TAGS = {"single", "coupled"}


class ConfigService:

    @staticmethod
    def parse_config(text: str, overrides: Optional[Iterable[str]] = None, **fields: Any) -> RunConfig:
        """
        Validated RunConfig from TOML text.

        overrides are "dotted.key=value" strings applied on top of the file;
        fields (mode, preset, output_path, ...) win over both when not None.
        """
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigParseError(f"Config is not valid TOML: {exc}") from exc

        for item in overrides or ():
            ConfigService.apply_override(data, item)
        data.update({key: value for key, value in fields.items() if value is not None})
        return ConfigService.build(data)

    @staticmethod
    def load(path: Optional[Path], overrides: Optional[Iterable[str]] = None, **fields: Any) -> RunConfig:
        text = ""
        if path is not None:
            try:
                text = Path(path).read_text(encoding="utf-8")
            except OSError as exc:
                raise ConfigParseError(f"Cannot read config {path}: {exc}") from exc
        return ConfigService.parse_config(text, overrides, **fields)

    @staticmethod
    def build(data: Dict[str, Any]) -> RunConfig:
        """Merge the preset underneath data, then validate."""
        data = dict(data)
        preset_name = data.get("preset")
        if preset_name is not None:
            preset = get_preset(preset_name)
            logger.debug("Applying preset %s", preset_name)
            data["params"] = {**preset["params"], **data.get("params", {})}
            data["sweep"] = {**preset["sweep"], **data.get("sweep", {})}
            data.setdefault("baseline", preset["baseline"])

        try:
            return RunConfig.model_validate(data)
        except ValidationError as exc:
            raise ConfigService.translate_errors(exc) from exc

    @staticmethod
    def apply_override(data: Dict[str, Any], item: str) -> None:
        """Set a dotted key from "key=value"; value parsed as TOML, else kept as text."""
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigParseError(f"Override '{item}' is not of the form key=value")

        raw = raw.strip()
        try:
            value = tomllib.loads(f"value = {raw}")["value"]
        except tomllib.TOMLDecodeError:
            value = raw

        *parents, leaf = key.split(".")
        node = data
        for part in parents:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigValidationError(f"{key}: '{part}' is not a section", fields=[key])
            node = child
        node[leaf] = value

    @staticmethod
    def translate_errors(exc: ValidationError) -> Exception:
        """pydantic errors -> UnknownConfigKey or a field-precise ConfigValidationError."""
        messages: List[str] = []
        fields: List[str] = []
        for error in exc.errors():
            path = ".".join(str(part) for part in error["loc"] if part not in _VARIANT_TAGS) or "config"
            if error["type"] == "extra_forbidden":
                return UnknownConfigKey(path)
            fields.append(path)
            messages.append(f"{path}: {error['msg']}")
        return ConfigValidationError("; ".join(messages), fields=fields)

