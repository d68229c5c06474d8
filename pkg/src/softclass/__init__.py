"""Soft sets, mappings between soft classes, and an exhaustive law checker."""

from .errors import *  # noqa: F401,F403
from .mapping import ClassMapping, combine_pointwise, image, preimage, validate_mapping
from .oracle import (
    LAWS,
    Bounds,
    Law,
    LawReport,
    Witness,
    check_law,
    enumerate_class_mappings,
    enumerate_soft_sets,
    run_bounded,
    run_exhaustive,
    search_counterexample,
)
from .softset import (
    Context,
    SoftSet,
    absolute_soft_set,
    extend_domain,
    is_soft_subset,
    null_soft_set,
    soft_equal,
    soft_intersection,
    soft_union,
    validate_soft_set,
)

__version__ = "0.1.0"
