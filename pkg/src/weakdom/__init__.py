"""Weak dominance drawings of DAGs and linear extension diameter."""
from .dag import (
    Dag,
    Reachability,
    count_incomparable,
    gen_antichain,
    gen_chain,
    gen_crown,
    gen_grid,
    gen_random_dag,
    parse_edge_list,
    transitive_closure,
)
from .drawing import (
    TopoOrder,
    WeakDominanceDrawing,
    count_fips,
    diagonal_drawing,
    emit_drawing,
    intersection_cardinality,
    is_dominance_drawing,
    make_drawing,
    topological_sort,
)
from .linext import (
    ExtensionSet,
    LinExtGraph,
    build_linext_graph,
    count_extensions,
    distance,
    enumerate_extensions,
    graph_distance,
)
from .solver import (
    Realizer,
    SolveReport,
    dimension_exact,
    find_realizer,
    led_exact,
    minfip_exact,
    minfip_heuristic,
    verify_bounds,
)

__version__ = "0.1.0"
