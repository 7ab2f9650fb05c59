"""Exact tropical and skeleton valuations on the moduli space of stable rational curves.

Both sides of the comparison are built as monomial (min-plus) valuations over
the rationals: the section valuation of a metric tree, coming from the
tropical Grassmannian, and the skeleton valuation of a stratum of boundary
divisors with weights.  :mod:`tropm0n.harness` checks that they agree and
that both commute with forgetting a marked point.
"""

from .errors import DegenerateStratum, IncompatibleSplits, InvalidArgument, Unsupported
from .harness import SweepConfig, check_diagram, compare_point, fiber_sweep, run_suite
from .plucker import PluckerMonomial, all_cross_ratios, cross_ratio
from .skeleton import (
    SkeletonPoint,
    boundary_divisors,
    forget_stratum,
    intersection_graph,
    kapranov_class,
    keel_intersects,
    local_generators,
    picard_pairing,
    skeleton_point_of,
    skeleton_valuation,
    stratum_cone,
    trop_of_skeleton_point,
)
from .trees import (
    MarkedMetricTree,
    MarkedTree,
    PartialLeafOrder,
    Split,
    canonical_form,
    check_cherry_property,
    cherry_order,
    distance_matrix,
    enumerate_stable_trees,
    forget_leaf,
    four_point_check,
    iso_equal,
    splits_of_tree,
    tree_from_splits,
)
from .tropical import (
    IndexSet,
    TropPoint,
    cone_complex,
    gauge_fix,
    local_projection,
    plucker_vector,
    section_valuation,
    tropical_plucker_check,
)
from .valuation import LaurentPoly, MonomialValuation, evaluate, monomial_weight, relation_consistency

__version__ = "0.1.0"
