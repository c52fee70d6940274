from .core import schreier_contains, schreier_norm, schreier1_norm
from .witnesses import (
    DensityReport, PreconditionError, SummableLikeWitness, TraceWitness, VerificationError,
    density_bound_check, essential_inclusion_probe, phi_alpha, summable_like_sets,
    summable_like_witness, trace_vs_I2_witness,
)

__all__ = [
    "DensityReport", "PreconditionError", "SummableLikeWitness", "TraceWitness",
    "VerificationError", "density_bound_check", "essential_inclusion_probe", "phi_alpha",
    "schreier1_norm", "schreier_contains", "schreier_norm", "summable_like_sets",
    "summable_like_witness", "trace_vs_I2_witness",
]
