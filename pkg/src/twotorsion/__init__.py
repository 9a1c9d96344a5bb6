"""Simplicial complexes with prescribed 2-group torsion in codimension-one homology."""

__version__ = "0.1.0"

from .complex import (
    ComplexError,
    IntegerMatrix,
    SimplicialComplex,
    boundary_matrix,
    delta_degree,
    disjoint_union,
    f_vector,
    from_facets,
    identify_vertices,
    skeleton,
    suspension_with_points,
)
from .homology import (
    HomologySummary,
    SmithForm,
    class_coordinates,
    is_boundary,
    is_homologous,
    homology,
    smith_normal_form,
)
from .construction import (
    Block,
    Telescope,
    TwoGroup,
    build_for_group,
    build_p,
    build_p2,
    build_telescope,
    check_bounds,
    identify_roles,
    realize_group,
)
from .coloring import (
    Coloring,
    RefineConfig,
    bad_event_pairs,
    block_coloring,
    dependency_degree,
    event_frequencies,
    is_proper,
    pattern_complex,
    pattern_of,
    patterns_distinct,
    refine,
    refine_coloring,
    verify_quotient_torsion,
)
from .census import asymptotic_report, partition_count, partitions_of, run_census
from .formats import parse_facet_file, parse_facets, write_facet_file, write_facets
from .pipeline import run_pipeline
