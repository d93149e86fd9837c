from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import TextIO

import numpy as np

from betahalton.configs import config_utils
from betahalton.configs._backend import canon
from betahalton.process import (
    _discrepancy,
    _integration,
    _measure,
    _numeration,
    _sequence,
)
from betahalton.structure.numeration_system import NumerationSystem
from betahalton.structure.point_set import PointSet
from betahalton.utils import _utils


def main(argv: list[str] | None = None) -> int:
    """
    Entry point of the ``betahalton`` command.

    Returns the exit status: 0 on success, 1 on a validation error and
    2 on an internal numeric failure. Usage errors exit through argparse.
    """
    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        args.handler(args, sys.stdout)
    except ValueError as e:
        _utils.message_user(f"Error: {e}")
        return 1
    except FileNotFoundError as e:
        _utils.message_user(f"Error: {e}")
        return 1
    except RuntimeError as e:
        _utils.message_user(f"Numeric failure: {e}")
        return 2

    return 0


# -----------------------------------------------------------------------------
# Parser
# -----------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betahalton",
        description="Beta-adic van der Corput and Halton sequences from "
        "linear recurrence numeration systems.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # gen
    gen = subparsers.add_parser("gen", help="Generate sequence points.")
    _add_system_arguments(gen, required=False)
    gen.add_argument("--config", help="Name of a stored config or path to a YAML file.")
    gen.add_argument("--count", type=int)
    gen.add_argument("--skip", type=int)
    gen.add_argument("--format", choices=canon.output_formats())
    gen.add_argument("--precision", type=int)
    gen.add_argument("--include-zero", action="store_true", default=None)
    gen.add_argument("--n-jobs", type=int)
    gen.add_argument("--header", action="store_true")
    gen.set_defaults(handler=_run_gen)

    # classify
    classify = subparsers.add_parser("classify", help="Classify a coefficient vector.")
    classify.add_argument("--coeffs", required=True)
    classify.add_argument("--format", choices=["text", "jsonl"], default="text")
    classify.set_defaults(handler=_run_classify)

    # discrepancy
    discrepancy = subparsers.add_parser(
        "discrepancy", help="Exact star discrepancy of a point set."
    )
    _add_system_arguments(discrepancy, required=False)
    discrepancy.add_argument("--config", help="Name of a stored config or path to a YAML file.")
    discrepancy.add_argument("--input", help="Point file written by `gen`.")
    discrepancy.add_argument("--count", type=int)
    discrepancy.add_argument(
        "--method",
        choices=["auto", "exact_1d", "exact_grid", "brute_force"],
        default="auto",
    )
    discrepancy.add_argument("--work-budget", type=int, default=None)
    discrepancy.add_argument("--format", choices=["text", "jsonl"], default="text")
    discrepancy.set_defaults(handler=_run_discrepancy)

    # verify-measure
    verify = subparsers.add_parser(
        "verify-measure", help="Check measure transport on all cylinders."
    )
    _add_system_arguments(verify, required=True, multiple=False)
    verify.add_argument("--depth", type=int, default=8)
    verify.add_argument("--tol", type=float, default=1e-10)
    verify.add_argument("--format", choices=["text", "jsonl"], default="text")
    verify.set_defaults(handler=_run_verify_measure)

    # orbit
    orbit = subparsers.add_parser(
        "orbit", help="Orbit of a start point under the interval transformation."
    )
    _add_system_arguments(orbit, required=True)
    start = orbit.add_mutually_exclusive_group()
    start.add_argument("--start", help="Comma separated start point, default origin.")
    start.add_argument("--seed", type=int, help="Draw a uniform start point.")
    orbit.add_argument("--count", type=int, default=100)
    orbit.add_argument("--depth", type=int, default=canon.default_depth())
    orbit.add_argument("--format", choices=canon.output_formats(), default="csv")
    orbit.add_argument("--precision", type=int, default=canon.default_precision())
    orbit.set_defaults(handler=_run_orbit)

    # integrate
    integrate = subparsers.add_parser("integrate", help="QMC integration test.")
    _add_system_arguments(integrate, required=False)
    integrate.add_argument("--config", help="Name of a stored config or path to a YAML file.")
    integrate.add_argument(
        "--f-id", required=True, help="One of constant, product, mean, genz_product."
    )
    integrate.add_argument("--count", type=int)
    integrate.add_argument("--alpha", type=float, default=0.5)
    integrate.add_argument("--work-budget", type=int, default=None)
    integrate.add_argument("--format", choices=["text", "jsonl"], default="text")
    integrate.set_defaults(handler=_run_integrate)

    # check-compat
    compat = subparsers.add_parser(
        "check-compat", help="Compatibility of the systems of a Halton sequence."
    )
    _add_system_arguments(compat, required=True)
    compat.add_argument("--k-max", type=int, default=4)
    compat.add_argument("--tol", type=float, default=1e-12)
    compat.add_argument("--format", choices=["text", "jsonl"], default="text")
    compat.set_defaults(handler=_run_check_compat)

    # spectrum
    spectrum = subparsers.add_parser(
        "spectrum", help="Check z = exp(2 pi i c / (b^m beta^l)) on G_n."
    )
    _add_system_arguments(spectrum, required=True, multiple=False)
    spectrum.add_argument("--c", type=int, default=1)
    spectrum.add_argument("--m", type=int, default=0)
    spectrum.add_argument("--l", type=int, default=1)
    spectrum.add_argument("--n-max", type=int, default=30)
    spectrum.add_argument("--format", choices=canon.output_formats(), default="csv")
    spectrum.set_defaults(handler=_run_spectrum)

    # configs
    configs = subparsers.add_parser("configs", help="Manage stored run configs.")
    configs.add_argument("action", choices=["list", "show"])
    configs.add_argument("name", nargs="?")
    configs.set_defaults(handler=_run_configs)

    return parser


def _add_system_arguments(
    parser: argparse.ArgumentParser, required: bool, multiple: bool = True
) -> None:
    parser.add_argument(
        "--coeffs",
        action="append" if multiple else "store",
        required=required,
        help="Comma separated coefficients a_0,...,a_{d-1}."
        + (" Repeat for each dimension." if multiple else ""),
    )
    parser.add_argument(
        "--max-index",
        type=int,
        default=None,
        help=f"Last precomputed base value index (default {canon.default_max_index()}).",
    )


# -----------------------------------------------------------------------------
# Subcommands
# -----------------------------------------------------------------------------


def _run_gen(args: argparse.Namespace, stream: TextIO) -> None:
    run_config = _run_config_from_args(args)

    point_set = _generate_from_run_config(run_config)

    if args.header:
        stream.write(
            f"{canon.header_prefix()}{point_set.dimension} "
            f"generator={point_set.provenance}\n"
        )

    write_points(point_set, run_config.format, run_config.precision, stream)


def _generate_from_run_config(run_config: config_utils.RunConfig) -> PointSet:
    return _sequence.generate_point_set(
        run_config.halton,
        run_config.count,
        skip=run_config.skip,
        include_zero=run_config.include_zero,
        n_jobs=run_config.n_jobs,
    )


def _run_config_from_args(
    args: argparse.Namespace,
    keys: tuple[str, ...] = ("count", "skip", "format", "precision", "include_zero", "n_jobs"),
) -> config_utils.RunConfig:
    """
    Start from the stored or file config (if any) and override it with
    the flags in ``keys`` given on the command line.
    """
    config_dict = config_utils.get_config_dict(args.config) if args.config else {}
    config_dict = dict(config_dict)

    if args.coeffs:
        config_dict["systems"] = [
            {"coeffs": _utils.parse_int_list(text), "max_index": args.max_index}
            for text in args.coeffs
        ]
    elif "systems" not in config_dict:
        raise ValueError("Either `--coeffs` or `--config` must be given.")

    for key in keys:
        value = getattr(args, key)
        if value is not None:
            config_dict[key] = value

    return config_utils.parse_config(config_dict)


def _run_classify(args: argparse.Namespace, stream: TextIO) -> None:
    coeffs = _utils.parse_int_list(args.coeffs)
    classification = _numeration.classify_coefficients(coeffs)

    if args.format == "jsonl":
        record = {
            "coeffs": coeffs,
            "tag": classification.tag,
            "equivalent_base": classification.equivalent_base,
            "equivalent_coeffs": (
                list(classification.equivalent_coeffs)
                if classification.equivalent_coeffs
                else None
            ),
            "satisfies_descent": _numeration.satisfies_descent(coeffs),
        }
        _write_record(record, stream)
    else:
        stream.write(classification.describe() + "\n")


def _run_discrepancy(args: argparse.Namespace, stream: TextIO) -> None:
    if args.input:
        point_set = read_points(Path(args.input))
        work_budget = args.work_budget
        if work_budget is None and args.config:
            work_budget = config_utils.get_run_config(args.config).work_budget
    else:
        run_config = _run_config_from_args(args, keys=("count", "work_budget"))
        point_set = _generate_from_run_config(run_config)
        work_budget = run_config.work_budget

    report = _discrepancy.star_discrepancy(
        point_set, method=args.method, work_budget=work_budget
    )

    if args.format == "jsonl":
        _write_record(report.to_record(), stream)
    else:
        stream.write(
            f"N={report.N} s={report.s} method={report.method} "
            f"d_star={report.d_star!r}\n"
        )


def _run_verify_measure(args: argparse.Namespace, stream: TextIO) -> None:
    (system,) = _systems_from_args(args)

    report = _measure.verify_transport(system, args.depth)

    if args.format == "jsonl":
        _write_record(report.to_record(), stream)
        return

    comparison = "<" if report.max_deviation < args.tol else ">="
    stream.write(
        f"coeffs={_utils.format_digits(report.coeffs)} depth={report.depth} "
        f"cylinders={report.cylinders_checked} "
        f"covered_by_theory={report.covered_by_theory}\n"
    )
    stream.write(
        f"max_deviation={report.max_deviation:.3e} "
        f"worst_prefix={_utils.format_digits(report.worst_prefix)}\n"
    )
    stream.write(f"max_mass_error={report.max_mass_error:.3e}\n")
    stream.write(f"max_deviation {comparison} {args.tol:g}\n")


def _run_orbit(args: argparse.Namespace, stream: TextIO) -> None:
    cfg = _sequence.make_halton_config(_systems_from_args(args))

    if args.seed is not None:
        start = tuple(np.random.default_rng(args.seed).uniform(size=cfg.dimension))
    elif args.start is not None:
        start = tuple(_utils.parse_float_list(args.start))
    else:
        start = (0.0,) * cfg.dimension

    point_set = _sequence.orbit_point_set(start, cfg, args.count, args.depth)

    write_points(point_set, args.format, _check_precision(args.precision), stream)


def _run_integrate(args: argparse.Namespace, stream: TextIO) -> None:
    run_config = _run_config_from_args(args, keys=("count", "work_budget"))
    point_set = _generate_from_run_config(run_config)

    result = _integration.qmc_integrate(
        args.f_id, point_set, alpha=args.alpha, work_budget=run_config.work_budget
    )

    if args.format == "jsonl":
        _write_record(result.to_record(), stream)
    else:
        stream.write(
            " ".join(f"{key}={value!r}" for key, value in result.to_record().items())
            + "\n"
        )


def _run_check_compat(args: argparse.Namespace, stream: TextIO) -> None:
    report = _sequence.compatibility_check(
        _systems_from_args(args), k_max=args.k_max, tol=args.tol
    )

    if args.format == "jsonl":
        _write_record(report.to_record(), stream)
        return

    for pair in report.pairs:
        hits = ",".join(f"{hit.k}/{hit.l}~{hit.p}/{hit.q}" for hit in pair.rational_hits)
        stream.write(
            f"pair={pair.i}:{pair.j} b=({pair.b_i},{pair.b_j}) "
            f"coprime={pair.coprime} rational_hits=[{hits}] status={pair.status}\n"
        )
    stream.write(f"status={report.status}\n")


def _run_spectrum(args: argparse.Namespace, stream: TextIO) -> None:
    (system,) = _systems_from_args(args)

    check = _measure.eigenvalue_limit_check(
        _measure.SpectrumCheck(system, c=args.c, m=args.m, l=args.l), args.n_max
    )

    for n, value in enumerate(check.values):
        if args.format == "jsonl":
            _write_record({"n": n, "G_n": system.G[n], "value": value}, stream)
        else:
            stream.write(f"{n},{value!r}\n")


def _run_configs(args: argparse.Namespace, stream: TextIO) -> None:
    if args.action == "list":
        for name in config_utils.available_configs():
            stream.write(name + "\n")
        return

    if args.name is None:
        raise ValueError("`configs show` needs the name of a config.")

    stream.write(
        json.dumps(config_utils.get_config_dict(args.name), indent=4, sort_keys=True)
        + "\n"
    )


# -----------------------------------------------------------------------------
# Input / output
# -----------------------------------------------------------------------------


def _systems_from_args(args: argparse.Namespace) -> list[NumerationSystem]:
    texts = args.coeffs if isinstance(args.coeffs, list) else [args.coeffs]

    if not texts or texts == [None]:
        raise ValueError("At least one `--coeffs` must be given.")

    systems = []
    for text in texts:
        system = NumerationSystem(_utils.parse_int_list(text), max_index=args.max_index)
        system.check_maps_into_unit_interval()
        systems.append(system)
    return systems


def _check_precision(precision: int) -> int:
    lowest, highest = canon.precision_range()
    if not lowest <= precision <= highest:
        raise ValueError(
            f"`precision` must be in [{lowest}, {highest}], got {precision}."
        )
    return precision


def _write_record(record: dict, stream: TextIO) -> None:
    stream.write(json.dumps(record, sort_keys=True) + "\n")


def write_points(point_set: PointSet, fmt: str, precision: int, stream: TextIO) -> None:
    """
    Write one point per line, either as comma separated decimals with
    ``precision`` significant digits or as JSON records.
    """
    for offset, point in enumerate(point_set.points):
        coordinates = [f"{x:.{precision}g}" for x in point]

        if fmt == "csv":
            stream.write(",".join(coordinates) + "\n")
        else:
            _write_record(
                {
                    "index": point_set.first_index + offset,
                    "point": [float(x) for x in coordinates],
                },
                stream,
            )


def read_points(filepath: Path) -> PointSet:
    """
    Read a point file written by ``write_points`` (csv or jsonl), skipping
    an optional header line.
    """
    if not filepath.is_file():
        raise FileNotFoundError(f"No file found at {filepath}.")

    rows = []
    provenance = filepath.name
    with open(filepath, "r") as file:
        for line in file:
            line = line.strip()

            if not line:
                continue

            if line.startswith(canon.header_prefix()):
                provenance = line
                continue

            if line.startswith("{"):
                rows.append(json.loads(line)["point"])
            else:
                rows.append(_utils.parse_float_list(line))

    if not rows:
        raise ValueError(f"No points found in {filepath}.")

    if len({len(row) for row in rows}) != 1:
        raise ValueError(f"Points in {filepath} do not share one dimension.")

    return PointSet(np.array(rows, dtype=np.float64), provenance=provenance)


if __name__ == "__main__":
    sys.exit(main())
