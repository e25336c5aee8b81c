"""Integral polytopes whose Ehrhart polynomials have negative coefficients.

Exact lattice-point counting, Ehrhart polynomial recovery, and the Reeve
tetrahedron prism family with its closed-form coefficient analysis.
"""

from .constructions import (
    CoefficientReport,
    a_value,
    closed_form_ehrhart,
    coefficient_report,
    g_value,
    min_negative_m,
    min_positive_root_m,
    paper_family,
    reeve,
    reeve_ehrhart,
)
from .counting import (
    DEFAULT_KERNEL,
    KERNELS,
    DeltaVector,
    count_lattice_points,
    delta_vector,
    ehrhart_polynomial,
)
from .exact import (
    ExactRational,
    Polynomial,
    binomial,
    count_positive_real_roots,
    interpolate,
    isolate_positive_roots,
    poly_eval,
    poly_mul,
    poly_pow_linear,
)
from .polytope import (
    Box,
    HRep,
    Product,
    Simplex,
    contains,
    dimension,
    parse_spec,
    prism,
    product,
    serialize_spec,
)

__version__ = "0.1.0"
