# Include all public functions here. The preferred way to use betahalton is
#
# ```
# import betahalton as bh
# fib = bh.NumerationSystem((1, 1))
# bh.vdc_point(4, fib)
# ...
# ```

# __all__ is used for sphinx autodoc.
# DO NOT make a docstring-style comment here. It will show up at the top of the autogenerated API reference.
from .structure.numeration_system import NumerationSystem
from .structure._digits import DigitString, Classification, CompositeDetail
from .structure.point_set import (
    HaltonConfig,
    PointSet,
    DiscrepancyReport,
    CompatReport,
    PairCompatibility,
)
from .process._numeration import (
    classify_coefficients,
    build_system,
    characteristic_root,
    greedy_expansion,
    expansion_value,
    is_admissible,
    is_admissible_lexicographic,
    quasi_greedy_word,
    satisfies_descent,
    parry_expansion_of_one,
    enumerate_admissible,
)
from .process._odometer import OdometerState, successor, orbit
from .process._mapping import (
    monna_map,
    monna_map_mp,
    pseudo_inverse,
    interval_transform,
    transform_orbit,
    product_transform,
    kakutani_fibonacci,
    fibonacci_system,
)
from .process._measure import (
    CylinderSet,
    SpectrumCheck,
    TransportReport,
    count_prefix,
    prefix_counts,
    mu,
    cylinder_image,
    tail_supremum,
    tail_supremum_numeric,
    enumerate_cylinders,
    verify_transport,
    eigenvalue_limit_check,
)
from .process._sequence import (
    vdc_point,
    vdc_points,
    halton_point,
    generate_point_set,
    orbit_point_set,
    compatibility_check,
    make_halton_config,
)
from .process._discrepancy import star_discrepancy
from .process._integration import qmc_integrate, test_function_suite
from .configs.config_utils import (
    RunConfig,
    parse_config,
    get_run_config,
    get_configs_path,
    show_available_configs,
    show_configs,
    load_config_dict,
    save_config_dict,
)

__all__ = [
    "NumerationSystem",
    "DigitString",
    "Classification",
    "CompositeDetail",
    "HaltonConfig",
    "PointSet",
    "DiscrepancyReport",
    "CompatReport",
    "PairCompatibility",
    "classify_coefficients",
    "build_system",
    "characteristic_root",
    "greedy_expansion",
    "expansion_value",
    "is_admissible",
    "is_admissible_lexicographic",
    "quasi_greedy_word",
    "satisfies_descent",
    "parry_expansion_of_one",
    "enumerate_admissible",
    "OdometerState",
    "successor",
    "orbit",
    "monna_map",
    "monna_map_mp",
    "pseudo_inverse",
    "interval_transform",
    "transform_orbit",
    "product_transform",
    "kakutani_fibonacci",
    "fibonacci_system",
    "CylinderSet",
    "SpectrumCheck",
    "TransportReport",
    "count_prefix",
    "prefix_counts",
    "mu",
    "cylinder_image",
    "tail_supremum",
    "tail_supremum_numeric",
    "enumerate_cylinders",
    "verify_transport",
    "eigenvalue_limit_check",
    "vdc_point",
    "vdc_points",
    "halton_point",
    "generate_point_set",
    "orbit_point_set",
    "compatibility_check",
    "make_halton_config",
    "star_discrepancy",
    "qmc_integrate",
    "test_function_suite",
    "RunConfig",
    "parse_config",
    "get_run_config",
    "get_configs_path",
    "show_available_configs",
    "show_configs",
    "load_config_dict",
    "save_config_dict",
]
