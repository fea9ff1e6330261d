"""Fail-closed loading of IFS configs, function specs, and cell lists.

Unknown keys are errors: a typo in a config must never silently change what
gets verified.
"""

from __future__ import annotations

import json
from pathlib import Path

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .choquet import CylinderFunction
from .errors import ConfigError
from .ifs import IteratedFunctionSystem, SimilarityMap, Word, parse_word

IFS_KEYS = {"name", "ratios", "probabilities", "translations", "rotations"}
FUNCTION_KEYS = {"depth", "values"}


def _load_table(path: Path) -> dict:
    if path.suffix.lower() == ".json":
        with open(path, "rb") as fh:
            data = json.load(fh)
    elif path.suffix.lower() == ".toml":
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    else:
        raise ConfigError(f"{path}: expected a .toml or .json config")
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a table/object")
    return data


def _reject_unknown(data: dict, allowed: set, path) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}; allowed keys are {sorted(allowed)}")


def _as_vector(x, path, what):
    if isinstance(x, (int, float)):
        return (float(x),)
    if isinstance(x, list) and all(isinstance(v, (int, float)) for v in x):
        return tuple(float(v) for v in x)
    raise ConfigError(f"{path}: {what} must be a number or a list of numbers")


def load_ifs(path) -> IteratedFunctionSystem:
    path = Path(path)
    data = _load_table(path)
    _reject_unknown(data, IFS_KEYS, path)
    try:
        ratios = [float(r) for r in data["ratios"]]
        probabilities = [float(p) for p in data["probabilities"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: 'ratios' and 'probabilities' must be lists of numbers") from exc
    m = len(ratios)
    translations = data.get("translations")
    rotations = data.get("rotations")
    if translations is not None:
        if len(translations) != m:
            raise ConfigError(f"{path}: need one translation per map")
        translations = [_as_vector(t, path, "each translation") for t in translations]
        dims = {len(t) for t in translations}
        if len(dims) != 1:
            raise ConfigError(f"{path}: translations must share one dimension")
    if rotations is not None:
        if translations is None:
            raise ConfigError(f"{path}: rotations without translations make no geometry")
        if len(rotations) != m:
            raise ConfigError(f"{path}: need one rotation per map")
    maps = []
    for i in range(m):
        rotation = None
        if rotations:
            try:
                rotation = tuple(tuple(float(x) for x in row) for row in rotations[i])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{path}: each rotation must be a matrix of numbers") from exc
        maps.append(
            SimilarityMap(
                ratio=ratios[i],
                translation=translations[i] if translations is not None else None,
                rotation=rotation,
            )
        )
    name = data.get("name", path.stem)
    if not isinstance(name, str):
        raise ConfigError(f"{path}: 'name' must be a string")
    try:
        return IteratedFunctionSystem(tuple(maps), tuple(probabilities), name=name)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def load_cylinder_function(path, num_maps: int) -> CylinderFunction:
    path = Path(path)
    with open(path, "rb") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected an object with 'depth' and 'values'")
    _reject_unknown(data, FUNCTION_KEYS, path)
    try:
        depth = int(data["depth"])
        raw_values = data["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: need integer 'depth' and object 'values'") from exc
    if not isinstance(raw_values, dict):
        raise ConfigError(f"{path}: 'values' must map words to numbers")
    values = {}
    for key, v in raw_values.items():
        word = parse_word(str(key))
        if len(word) != depth:
            raise ConfigError(f"{path}: word {key!r} does not have depth {depth}")
        if any(s >= num_maps for s in word):
            raise ConfigError(f"{path}: word {key!r} uses symbols beyond the {num_maps} maps")
        if isinstance(v, bool) or not isinstance(v, (int, float)) or v < 0:
            raise ConfigError(f"{path}: value for {key!r} must be a nonnegative number")
        values[word] = float(v)
    try:
        return CylinderFunction(depth, values)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def load_cells(path, num_maps: int) -> list:
    """One word per line, symbols as digits; '-' is the root, '#' comments."""
    path = Path(path)
    words: list[Word] = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            word = parse_word(text)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
        if any(s >= num_maps for s in word):
            raise ConfigError(
                f"{path}:{lineno}: word {text!r} uses symbols beyond the {num_maps} maps"
            )
        words.append(word)
    return words
