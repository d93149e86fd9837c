from __future__ import annotations

import itertools
import os
import shutil
from dataclasses import dataclass
from pathlib import Path

import yaml

from betahalton.configs._backend import canon
from betahalton.process import _sequence
from betahalton.structure.numeration_system import NumerationSystem
from betahalton.structure.point_set import HaltonConfig
from betahalton.utils import _utils
from betahalton.utils._checks import check_positive_int

_SYSTEM_KEYS = ("coeffs", "max_index")
_RUN_DEFAULTS = {
    "count": 100,
    "skip": 0,
    "format": "csv",
    "precision": None,
    "work_budget": None,
    "include_zero": False,
    "n_jobs": 1,
}


@dataclass(frozen=True)
class RunConfig:
    """
    A validated run configuration.

    Every system has been classified and maps into [0, 1); the
    ``halton`` config carries the compatibility report when one could be
    made.
    """

    halton: HaltonConfig
    count: int = 100
    skip: int = 0
    format: str = "csv"
    precision: int = 15
    work_budget: int = 2**26
    include_zero: bool = False
    n_jobs: int = 1

    @property
    def systems(self) -> tuple[NumerationSystem, ...]:
        return self.halton.systems

    def to_dict(self) -> dict:
        return {
            "systems": [
                {"coeffs": list(system.coeffs), "max_index": system.max_index}
                for system in self.systems
            ],
            "count": self.count,
            "skip": self.skip,
            "format": self.format,
            "precision": self.precision,
            "work_budget": self.work_budget,
            "include_zero": self.include_zero,
            "n_jobs": self.n_jobs,
        }


# -----------------------------------------------------------------------------
# Parsing
# -----------------------------------------------------------------------------


def parse_config(config: str | dict) -> RunConfig:
    """
    Validate a run configuration document.

    Parameters
    ----------
    config
        Either the YAML (or JSON) text of the document, or the already
        loaded dictionary. It must be a mapping with a ``"systems"`` list
        of ``{"coeffs": [ints], "max_index": int}`` entries, plus optional
        ``count``, ``skip``, ``format``, ``precision``, ``work_budget``,
        ``include_zero`` and ``n_jobs``.

    Returns
    -------
    RunConfig
        The validated configuration.

    Raises
    ------
    ValueError
        On schema violations, invalid coefficients, systems that do not
        map into [0, 1) or system pairs that fail the compatibility check.
    """
    config_dict = yaml.safe_load(config) if isinstance(config, str) else config

    if not isinstance(config_dict, dict):
        raise ValueError(
            f"A run config must be a mapping with a 'systems' entry, "
            f"got {type(config_dict).__name__}."
        )

    unknown = set(config_dict) - {"systems", *_RUN_DEFAULTS}
    if unknown:
        raise ValueError(
            f"Unknown config keys {sorted(unknown)}. Must be one of: "
            f"{['systems', *_RUN_DEFAULTS]}"
        )

    systems = _parse_systems(config_dict.get("systems"))
    options = {**_RUN_DEFAULTS, **{k: v for k, v in config_dict.items() if k != "systems"}}

    precision = options["precision"]
    if precision is None:
        precision = canon.default_precision()
    lowest, highest = canon.precision_range()
    if isinstance(precision, bool) or not isinstance(precision, int) or not (
        lowest <= precision <= highest
    ):
        raise ValueError(
            f"`precision` must be an integer in [{lowest}, {highest}], got {precision!r}."
        )

    if options["format"] not in canon.output_formats():
        raise ValueError(
            f"`format` not recognised. Must be one of: {canon.output_formats()}"
        )

    if not isinstance(options["include_zero"], bool):
        raise ValueError(
            f"`include_zero` must be true or false, got {options['include_zero']!r}."
        )

    work_budget = options["work_budget"]
    if work_budget is None:
        work_budget = canon.default_work_budget()

    halton = _sequence.make_halton_config(systems)

    if halton.compat is not None and halton.compat.status == "FAIL":
        failing = [
            f"{pair.i}:{pair.j} (b={pair.b_i}, {pair.b_j})"
            for pair in halton.compat.pairs
            if pair.status == "FAIL"
        ]
        raise ValueError(
            f"Incompatible systems, the constant coefficients of pairs "
            f"{failing} are not coprime."
        )

    return RunConfig(
        halton=halton,
        count=check_positive_int(options["count"], "count"),
        skip=check_positive_int(options["skip"], "skip", minimum=0),
        format=options["format"],
        precision=precision,
        work_budget=check_positive_int(work_budget, "work_budget"),
        include_zero=options["include_zero"],
        n_jobs=check_positive_int(options["n_jobs"], "n_jobs"),
    )


def _parse_systems(entries) -> list[NumerationSystem]:
    """
    Build and classify every system entry.
    """
    if not isinstance(entries, list) or len(entries) == 0:
        raise ValueError("'systems' must be a non-empty list of {'coeffs': [...]} entries.")

    systems = []
    for idx, entry in enumerate(entries):
        if not isinstance(entry, dict) or "coeffs" not in entry:
            raise ValueError(
                f"System entry {idx} must be a mapping with a 'coeffs' list, got {entry!r}."
            )

        unknown = set(entry) - set(_SYSTEM_KEYS)
        if unknown:
            raise ValueError(
                f"Unknown keys {sorted(unknown)} in system entry {idx}. "
                f"Must be one of: {list(_SYSTEM_KEYS)}"
            )

        if not isinstance(entry["coeffs"], list):
            raise ValueError(
                f"'coeffs' of system entry {idx} must be a list of integers, "
                f"got {entry['coeffs']!r}."
            )

        system = NumerationSystem(entry["coeffs"], max_index=entry.get("max_index"))
        system.check_maps_into_unit_interval()
        systems.append(system)

    return systems


def get_run_config(name: str | Path) -> RunConfig:
    """
    Load and validate a named config from the user configs folder, or a
    config file at a path.
    """
    return parse_config(get_config_dict(name))


# -----------------------------------------------------------------------------
# Named configs
# -----------------------------------------------------------------------------


def get_config_dict(name: str | Path) -> dict:
    """
    Load a config yaml file from the user config path.

    Parameters
    ----------
    name
        The name of the config (without the .yaml suffix). If no such
        config exists, ``name`` is taken as the path to a YAML file.

    Returns
    -------
    dict
        The run configuration dictionary.
    """
    config_dir = get_configs_path()

    available = [path_.stem for path_ in _yaml_paths(config_dir)]

    if str(name) in available:
        config_filepath = config_dir / f"{name}.yaml"
        if not config_filepath.is_file():
            config_filepath = config_dir / f"{name}.yml"
    else:
        config_filepath = Path(name)

        if not config_filepath.is_file():
            raise FileNotFoundError(
                f"{name} is neither the name of an existing "
                f"config or valid path to configuration file."
            )

    return load_config_dict(config_filepath)


def get_configs_path() -> Path:
    """
    Get the path to the User home directory folder
    in which all betahalton config yamls are stored.

    Returns
    -------
    Path
        The path to the betahalton `configs` directory.
    """
    configs_path = Path.home() / canon.user_configs_folder() / "configs"

    if not configs_path.is_dir():
        _create_user_configs_folder(configs_path)

    return configs_path


def _create_user_configs_folder(configs_path: Path) -> None:
    """
    Create the betahalton configs path where config YAML files
    are stored and copy the default YAMLs from the install
    directory into it. From then on, all config YAMLs are managed
    in the user directory.
    """
    configs_path.mkdir(parents=True)

    default_configs_path = (
        Path(os.path.dirname(os.path.realpath(__file__)))
        / "_backend"
        / "_default_configs"
    )
    for config_filepath in _yaml_paths(default_configs_path):
        shutil.copy(config_filepath, configs_path)


def _yaml_paths(folder: Path) -> list[Path]:
    return sorted(itertools.chain(folder.glob("*.yaml"), folder.glob("*.yml")))


def available_configs() -> list[str]:
    """
    The names of all YAML configs in the user config path.
    """
    return [path_.stem for path_ in _yaml_paths(get_configs_path())]


def show_available_configs() -> None:
    """
    Print the file names of all YAML config
    files in the user config path.
    """
    _utils.message_user(f"The available configs are:\n" f"{available_configs()}")


def save_config_dict(config_dict: dict, name: str, folder: Path | None = None) -> Path:
    """
    Save a configuration dictionary to a YAML file.

    The dictionary is validated with ``parse_config`` first.

    Parameters
    ----------
    config_dict
        The configs dictionary to save.
    name
        The name of the YAML file (with or without the `.yaml` extension).
    folder
        If None (default), the config is saved in the betahalton-managed
        user configs folder. Otherwise, save in `folder`.
    """
    parse_config(config_dict)

    if folder is None:
        folder = get_configs_path()

    output_filepath = Path(folder) / name

    if not output_filepath.suffix:
        output_filepath = output_filepath.with_suffix(".yaml")

    _utils._dump_dict_to_yaml(output_filepath, config_dict)

    return output_filepath


def load_config_dict(filepath: Path) -> dict:
    """
    Load a configuration dictionary from a YAML file.

    Parameters
    ----------
    filepath
        The full path to the YAML file, including the file name and extension.

    Returns
    -------
    dict
        The configs dict loaded from the YAML file.
    """
    filepath = Path(filepath)

    if not filepath.is_file():
        raise FileNotFoundError(f"No file found at {filepath}.")

    if filepath.suffix not in [".yml", ".yaml"]:
        raise ValueError(
            f"File {filepath.name} is not a yaml file, must end in .yml or .yaml"
        )

    return _utils._load_dict_from_yaml(filepath)


def show_configs(name: str) -> None:
    """
    Print the configuration options.
    """
    _utils.show_run_config(get_config_dict(name))
