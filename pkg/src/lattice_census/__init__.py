"""Classification of convex lattice polygons up to unimodular equivalence."""

from .core import (
    CollinearRun,
    Degenerate,
    LatticePolygon,
    PickStats,
    convex_hull,
    hull_closed,
    is_centrally_symmetric,
    lattice_points,
    max_collinear_run,
    pick_stats,
    primitive_vectors,
    rabinowitz_holds,
    symmetric_about_lattice_point,
)
from .enumeration import CensusResult, census_table, enumerate_area, enumerate_cardinality
from .errors import (
    AssemblyMismatch,
    BudgetExceeded,
    Infeasible,
    InvalidInput,
    LatticeCensusError,
    SplitConditionUnmet,
)
from .unimodular import (
    CanonicalForm,
    InvariantVector,
    UnimodularAffineMap,
    apply,
    canonical_form,
    equivalence_oracle,
    invariant_vector,
)

__version__ = "0.1.0"
