"""Combinatorial Banach spaces and Schreier-type analytic P-ideals, computed exactly."""
from .diagnostics import (
    BlockSequence, Certificate, DyadicMeasure, c0_branch_check, exh_vs_fin_probe, l1_copy_check,
    mazur_combination_search, ptak_fill_search, schur_witness, variation_identity_check,
    variation_norm, verify_certificate,
)
from .families import (
    FARAH, AllFinite, Antichains, BlockCappedJoined, BlockCappedLocal, CapRule, Explicit,
    PartitionBlocks, Restrict, Schreier, Singletons, delta_system_extract, explicit,
    family_contains, family_from_json, family_to_json, precompact_status, schreier,
    spreading_check, symbolic_rank,
)
from .norms import FinVec, antichain_norm, ext_norm, norm_oracle, tail_norm
from .ordinal import OMEGA, ONE, ZERO, Ordinal, OrdinalError, format_ordinal, ord_compare, ord_parse
from .schreier import (
    PreconditionError, VerificationError, density_bound_check, essential_inclusion_probe,
    phi_alpha, schreier_contains, schreier_norm, summable_like_witness, trace_vs_I2_witness,
)
from .setgen import generator_from_json, realize, tree_code, tree_decode
from .submeasures import LAMBDA, SubmeasureSpec, WeightSeq, exh_evidence, phi, phi_trace, tail_profile

__all__ = [
    "FARAH", "LAMBDA", "OMEGA", "ONE", "ZERO", "AllFinite", "Antichains", "BlockCappedJoined",
    "BlockCappedLocal", "BlockSequence", "CapRule", "Certificate", "DyadicMeasure", "Explicit",
    "FinVec", "Ordinal", "OrdinalError", "PartitionBlocks", "PreconditionError", "Restrict",
    "Schreier", "Singletons", "SubmeasureSpec", "VerificationError", "WeightSeq",
    "antichain_norm", "c0_branch_check", "delta_system_extract", "density_bound_check",
    "essential_inclusion_probe", "exh_evidence", "exh_vs_fin_probe", "explicit", "ext_norm",
    "family_contains", "family_from_json", "family_to_json", "format_ordinal",
    "generator_from_json", "l1_copy_check", "mazur_combination_search", "norm_oracle",
    "ord_compare", "ord_parse", "phi", "phi_alpha", "phi_trace", "precompact_status",
    "ptak_fill_search", "realize", "schreier", "schreier_contains", "schreier_norm",
    "schur_witness", "spreading_check", "summable_like_witness", "symbolic_rank", "tail_norm",
    "tail_profile", "trace_vs_I2_witness", "tree_code", "tree_decode", "variation_identity_check",
    "variation_norm", "verify_certificate",
]
