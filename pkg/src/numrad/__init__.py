"""Numerical ranges, numerical radii, and parallelism of complex matrices."""

__version__ = "0.1.0"

from .matcore import (
    ConvergenceError, DimensionError, EigResult, NotHermitianError, NumradError,
    hermitian_part, max_eig_hermitian, operator_norm, quadratic_form, rank_one,
)
from .numrange import (
    RadiusResult, RangeBoundary, numerical_radius, range_boundary, rank_one_radius,
)
from .parallel import (
    Decision, ParallelCertificate, ProbeVerdict, Verdict, WitnessCheck, block_operator,
    normal_bridge, norm_parallel, omega_parallel, pair_transform, rank_one_self_parallel,
    scalar_identity_probe, witness_check,
)
from .oracle import (
    OracleReport, brute_operator_norm, brute_pair_max, brute_radius, sphere_sample,
)
