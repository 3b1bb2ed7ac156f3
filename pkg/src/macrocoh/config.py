"""Loading of YAML configuration documents.

All quantities live in SI units internally; conversions happen here, at the
I/O boundary, driven by unit-suffixed key names (pressure_mbar, radius_nm,
apogee_altitude_km, residence_time_h, ...).
"""

from importlib import resources

import yaml


class ConfigError(ValueError):
    """Invalid or incomplete configuration; the message names the bad field."""


def load_yaml(path):
    """Parse a YAML file into a mapping, with line diagnostics on bad syntax."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: file not found") from None
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark is not None else ""
        raise ConfigError(f"{path}: malformed YAML{where}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return doc


def packaged_data(*parts):
    """Traversable handle on a file shipped under macrocoh/data/."""
    return resources.files(__package__).joinpath("data", *parts)


def load_packaged_yaml(*parts):
    doc = yaml.safe_load(packaged_data(*parts).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ConfigError(f"packaged {'/'.join(parts)}: top level must be a mapping")
    return doc


def section(doc, key, path):
    value = doc.get(key)
    if not isinstance(value, dict):
        raise ConfigError(f"{path}.{key}: missing or not a mapping")
    return value


def number(doc, key, path, default=None):
    """Required (or defaulted) numeric field."""
    if key not in doc:
        if default is not None:
            return float(default)
        raise ConfigError(f"{path}.{key}: missing required field")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def quantity(doc, path, options, default=None):
    """Numeric field accepted under one of several unit-suffixed keys.

    `options` maps key name -> multiplier to SI.  Exactly one of the keys may
    be present; a missing field falls back to `default` (already in SI) or
    raises naming all accepted spellings.
    """
    present = [key for key in options if key in doc]
    if len(present) > 1:
        raise ConfigError(f"{path}: give only one of {sorted(options)}")
    if not present:
        if default is not None:
            return float(default)
        raise ConfigError(f"{path}: missing one of {sorted(options)}")
    key = present[0]
    return number(doc, key, path) * options[key]
