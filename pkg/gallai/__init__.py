"""Gallai colorings: construction, decomposition and Gallai-Ramsey verification."""

__version__ = "0.1.0"

from .certificate import (
    Certificate,
    CertificateSemanticError,
    CertificateSyntaxError,
    certificate_for,
    load_certificate,
    parse,
    save_certificate,
    serialize,
    verify_certificate,
)
from .coloring import (
    ColoredComplete,
    ColoringError,
    Embedding,
    TargetKind,
    TargetSpec,
    find_rainbow_triangle,
    is_gallai,
    make_coloring,
    substitute,
)
from .constructions import ConstructionInvalidError, lower_bound_witness, random_gallai, witness_layers
from .decomposition import GallaiPartition, gallai_partition, smallest_module, validate_partition
from .engine import RamseyCapError, exhaustive_ramsey2, search_bad_gallai, verify_gr_point
from .formulas import (
    Family,
    GRInstance,
    Provenance,
    TopKind,
    gr_k_family,
    gr_value,
    r2_even_cycle,
    r_path_cycle,
)
from .search import SearchBudgetExceeded, find_mono_cycle, find_mono_matching, find_mono_path, has_target
from .verify import Verdict, VerdictReport, check_bad_coloring

__all__ = [
    "Certificate",
    "CertificateSemanticError",
    "CertificateSyntaxError",
    "ColoredComplete",
    "ColoringError",
    "ConstructionInvalidError",
    "Embedding",
    "Family",
    "GRInstance",
    "GallaiPartition",
    "Provenance",
    "RamseyCapError",
    "SearchBudgetExceeded",
    "TargetKind",
    "TargetSpec",
    "TopKind",
    "Verdict",
    "VerdictReport",
    "__version__",
    "certificate_for",
    "check_bad_coloring",
    "exhaustive_ramsey2",
    "find_mono_cycle",
    "find_mono_matching",
    "find_mono_path",
    "find_rainbow_triangle",
    "gallai_partition",
    "gr_k_family",
    "gr_value",
    "has_target",
    "is_gallai",
    "load_certificate",
    "lower_bound_witness",
    "make_coloring",
    "parse",
    "r2_even_cycle",
    "r_path_cycle",
    "random_gallai",
    "save_certificate",
    "search_bad_gallai",
    "serialize",
    "smallest_module",
    "substitute",
    "validate_partition",
    "verify_certificate",
    "verify_gr_point",
    "witness_layers",
]
