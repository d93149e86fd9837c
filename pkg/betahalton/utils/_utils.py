from __future__ import annotations

import json
import sys
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from pathlib import Path

import yaml


def message_user(message: str) -> None:
    """
    Method to print message to user.

    Centralising this method ensures consistent output formatting.
    Messages go to stderr so that streamed points and reports on
    stdout are left untouched.

    Parameters
    ----------
    message
        Message to print.
    """
    print(f"\n{message}", file=sys.stderr)


def show_run_config(config_dict: dict) -> None:
    """
    Print the run configuration options.
    """
    message_user(
        f"The run options are: " f"{json.dumps(config_dict, indent=4, sort_keys=True)}"
    )


def format_digits(digits) -> str:
    """
    Format a digit vector as ``(1,0,1)``.
    """
    return "(" + ",".join(str(d) for d in digits) + ")"


def parse_int_list(text: str) -> list[int]:
    """
    Parse a comma separated list of integers, e.g. ``"1,0,1"``.
    """
    try:
        return [int(item) for item in text.split(",") if item.strip() != ""]
    except ValueError:
        raise ValueError(f"Expected a comma separated list of integers, got {text!r}.")


def parse_float_list(text: str) -> list[float]:
    """
    Parse a comma separated list of floats, e.g. ``"0.1,0.25"``.
    """
    try:
        return [float(item) for item in text.split(",") if item.strip() != ""]
    except ValueError:
        raise ValueError(f"Expected a comma separated list of numbers, got {text!r}.")


def _dump_dict_to_yaml(filepath: Path | str, dict_: dict) -> None:
    """
    Save a dictionary to Yaml file. Note that keys are
    not sorted and will be saved in the dictionary order.
    """
    with open(
        filepath,
        "w",
    ) as file_to_save:
        yaml.dump(dict_, file_to_save, sort_keys=False)


def _load_dict_from_yaml(filepath: Path | str) -> dict:
    """
    Load a dictionary from yaml file.
    """
    with open(filepath, "r") as file:
        loaded_dict = yaml.safe_load(file)
    return loaded_dict
