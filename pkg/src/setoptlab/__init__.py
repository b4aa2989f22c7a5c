"""setoptlab: a desk-scale laboratory for set optimization.

Cone order relations on finite sets, translation scalarizers with
independent bisection oracles, minimal / weakly minimal solution sets by
definition and by scalarization, convexlikeness certificates via exact
parameter intervals, and contraction homotopies over star-shaped grids.
"""

from .backend import active_backend, set_backend
from .config import get_eps, set_eps, tolerance
from .cone import Cone, build_cone, membership, sup_point
from .contraction import (
    ContractionReport,
    GridDomain,
    homotopy_point,
    refinement_probe,
    star_segment_point,
    trace_homotopy,
    values_apex_shaped,
)
from .convexlike import (
    ConvexlikeCertificate,
    TInterval,
    certify,
    covers_open_unit,
    feasible_t_set,
    scalar_strict_quasi_convexlike,
)
from .errors import (
    BadParams,
    BracketFailure,
    DimensionMismatch,
    EmptyDescription,
    EmptyWeakMinimalSet,
    NotInDualCone,
    NotInterior,
    NotPointed,
    NotSimplicial,
    NotSingleValued,
    OutsideDomain,
    ParseError,
    SetOptError,
    ValidationError,
)
from .instances import (
    FAMILIES,
    generate,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    random_cone,
    save_instance,
    three_point_instance,
)
from .scalarize import (
    LevelSetClass,
    ScalarResult,
    bisection_threshold,
    classify_level,
    lower_gap,
    lower_scalar,
    upper_gap,
    upper_scalar,
)
from .sets import FiniteSet, extremal_points, relate, sets_equal
from .solutions import (
    Instance,
    PUnionReport,
    SolutionReport,
    dual_base_grid,
    f_solution_set,
    make_instance,
    solve_bruteforce,
    union_resolution_sweep,
    vop_solve,
    weak_minimal_characterized,
    weak_p_union,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
