"""Induced Hamiltonian 7-vertex subgraph census for srg(n, k, 1, 2) and its counting identities."""

from .catalog import (
    Catalog,
    CatalogEntry,
    Classifier,
    build_classifier,
    classify,
    default_classifier,
    generate_catalog,
    hamiltonian_catalog,
)
from .census import (
    CountVector,
    PolygonCounts,
    census,
    census_extend,
    census_subsets,
    count_polygons,
)
from .formulas import (
    FitResult,
    FormulaTable,
    FreeVars,
    SrgParams,
    check_bounds,
    check_integrality,
    evaluate_h,
    evaluate_p,
    feasible_params,
    fit_and_verify,
    n_of_k,
)
from .graph import (
    CanonKey,
    Graph,
    GraphError,
    Graph6Error,
    HostGraph,
    SmallGraph,
    admissible,
    canonical_form,
    emit_graph6,
    is_hamiltonian,
    parse_graph6,
)
from .srg import SrgVerdict, construct, random_graph, random_regular_graph, verify_srg

__version__ = "0.1.0"
