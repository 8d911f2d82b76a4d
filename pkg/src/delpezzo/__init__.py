"""Exact-arithmetic divisor calculus on the degree-5 del Pezzo surface and its
weak degenerations: intersection theory, section counts, contractions,
lattice automorphisms, cover numerology, and the chain-case solution tables.
"""

from .lattice import (
    CONFIGURATIONS,
    GENERAL,
    DivisorClass,
    InternalFaultError,
    QDivisorClass,
    SurfaceConfiguration,
    anticanonical_class,
    canonical_class,
    class_from_json,
    class_to_json,
    from_curve_basis,
    get_configuration,
    intersect,
    parse_class_label,
    riemann_roch_chi,
    to_curve_basis,
)
from .curves import (
    NegativeCurve,
    incidence_graph,
    is_irreducible,
    minus_one_curves,
    minus_two_curves,
    ruling_classes,
)
from .cohomology import h0, h0_with_trace, is_effective, find_half_anticanonical_pencils
from .contraction import SigmaClass, mumford_pullback, sigma_intersect, singularity_types
from .symmetry import (
    LatticeAutomorphism,
    cremona_automorphism,
    generate_group,
    line_transitivity_report,
    perm_automorphism,
    same_family,
    transport_cover_data,
)
from .covers import (
    BidoubleData,
    DoubleCoverScenario,
    albanese_gate,
    bidouble_invariants,
    double_cover_invariants,
    ramification_check,
    surface_numerology,
)
from .casework import (
    ConstraintSystem,
    SolutionRow,
    decompose_class,
    diff_tables,
    enumerate_table,
    load_printed_table,
    preimage_configuration_search,
)

__version__ = "0.1.0"
