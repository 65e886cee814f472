"""sympolar: exact rational toolkit for symplectically self-polar polytopes.

Builds the hexagon-suspension family, computes exact volumes and
Ekeland-Hofer-Zehnder capacities of centrally symmetric polytopes, and runs
the reproduction experiments (random generation, -1/0/1 enumeration, and
sequence checks).  All geometric state is exact; floats are renderings only.
"""

from sympolar.capacity import (
    CapacityCertificate,
    CapacityError,
    CertificateError,
    SearchBudgetError,
    ehz_brute_force,
    equal_weight_certificate,
    evaluate_certificate,
    generator_base,
    make_suspension_certificate,
)
from sympolar.geometry import (
    DimensionDeficiencyError,
    GeometryError,
    HalfSpace,
    PolarityDomainError,
    Polytope,
    UnboundedRegionError,
    apply_linear,
    convex_hull,
    f_vector,
    from_halfspaces,
    gauge_norm,
    polar_dual,
    shadow_area,
    vertex_enumeration,
    volume,
)
from sympolar.io import (
    MalformedInputError,
    read_polytope,
    write_certificate,
    write_polytope,
)
from sympolar.suspension import (
    PIVOT,
    InductionCertificate,
    hexagon,
    induction_certificate,
    power_suspend,
    suspend_halfspaces,
    suspend_vertices,
    suspension_membership,
    vertex_count_formula,
    volume_closed_form,
)
from sympolar.symplectic import (
    ExpansionError,
    c_j,
    check_subset_sympolar,
    expand_step,
    is_self_polar,
    omega,
    symplectic_polar,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityCertificate",
    "CapacityError",
    "CertificateError",
    "DimensionDeficiencyError",
    "ExpansionError",
    "GeometryError",
    "HalfSpace",
    "InductionCertificate",
    "MalformedInputError",
    "PIVOT",
    "PolarityDomainError",
    "Polytope",
    "SearchBudgetError",
    "UnboundedRegionError",
    "apply_linear",
    "c_j",
    "check_subset_sympolar",
    "convex_hull",
    "ehz_brute_force",
    "equal_weight_certificate",
    "evaluate_certificate",
    "expand_step",
    "f_vector",
    "from_halfspaces",
    "gauge_norm",
    "generator_base",
    "hexagon",
    "induction_certificate",
    "is_self_polar",
    "make_suspension_certificate",
    "omega",
    "polar_dual",
    "power_suspend",
    "read_polytope",
    "shadow_area",
    "suspend_halfspaces",
    "suspend_vertices",
    "suspension_membership",
    "symplectic_polar",
    "vertex_count_formula",
    "vertex_enumeration",
    "volume",
    "volume_closed_form",
    "write_certificate",
    "write_polytope",
]
