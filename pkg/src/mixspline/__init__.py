"""Dimension of bi-degree polynomial splines with edge-by-edge smoothness on T-meshes."""

from .certify import (
    Certificate,
    FailureReport,
    Provenance,
    certify_stability,
    dimension_by_certificate,
    verify_certificate,
)
from .dimension import check_reduction, euler_characteristic, segment_weight
from .exactla import ExactMatrix, kernel_basis, rank
from .generators import cyclic_mesh, hierarchical_mesh, is_hierarchical, tensor_grid
from .homology import h0_dimension, h0_quotient_localized, spline_dimension_homological
from .mesh import (
    Segment,
    TMesh,
    build_from_faces,
    classify,
    maximal_segments,
    refine_face,
    validate_tmesh,
)
from .oracle import spline_basis_oracle, spline_dimension_oracle, verify_smoothness
from .smoothness import SmoothnessDistribution, vertex_smoothness

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ExactMatrix",
    "FailureReport",
    "Provenance",
    "Segment",
    "SmoothnessDistribution",
    "TMesh",
    "build_from_faces",
    "certify_stability",
    "check_reduction",
    "classify",
    "cyclic_mesh",
    "dimension_by_certificate",
    "euler_characteristic",
    "h0_dimension",
    "h0_quotient_localized",
    "hierarchical_mesh",
    "is_hierarchical",
    "kernel_basis",
    "maximal_segments",
    "rank",
    "refine_face",
    "segment_weight",
    "spline_basis_oracle",
    "spline_dimension_homological",
    "spline_dimension_oracle",
    "tensor_grid",
    "validate_tmesh",
    "verify_certificate",
    "verify_smoothness",
    "vertex_smoothness",
]
