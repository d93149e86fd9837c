def default_depth():
    return 64


def default_max_index():
    return 128


def default_precision():
    return 15


def precision_range():
    return (6, 17)


def mp_dps():
    return 50


def root_tolerance():
    return 1e-12


def digit_guard():
    return 1e-12


def default_work_budget():
    return 2**26


def brute_force_max_points():
    return 1000


def output_formats():
    return ["csv", "jsonl"]


def header_prefix():
    return "dim="


def user_configs_folder():
    return ".betahalton"


def max_digit_guard():
    return 1e-6
