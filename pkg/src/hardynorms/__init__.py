"""Hardy norms and dual norms on C^2 and real matrices, with the harmonic Schwarz lemma."""

from .dual_poly import DualNormResult, check_bpr, check_two_sides, dual_norm_c2, ratio_sweep
from .errors import (DegenerateDirection, DimensionMismatch, DomainError, HardyError,
                     NearCircleZero, NonConvergence, NonFinite, SingularMatrix, ZeroMatrix,
                     ZeroVector)
from .exact_poly import BigRationalPoly, build_psi, verify_monster
from .harmonic_schwarz import (DualDirection, SchwarzPair, ball_admissible,
                               ball_extremal_derivative, check_corollaries,
                               disk_extremal_derivative, schwarz_admissible)
from .matrix_hardy import (RealMatrix, matrix_dual_norm, matrix_h4_closed, matrix_hp_norm,
                           matrix_inner, projection)
from .numerics import QuadratureSpec, circle_mean, elliptic_E, sphere_grid, svd_small
from .poly_hardy import hp_norm, quadratic_quasinorm_p, series_G

__version__ = "0.1.0"

__all__ = [
    "BigRationalPoly", "DegenerateDirection", "DimensionMismatch", "DomainError",
    "DualDirection", "DualNormResult", "HardyError", "NearCircleZero", "NonConvergence",
    "NonFinite", "QuadratureSpec", "RealMatrix", "SchwarzPair", "SingularMatrix",
    "ZeroMatrix", "ZeroVector", "ball_admissible", "ball_extremal_derivative", "build_psi",
    "check_bpr", "check_corollaries", "check_two_sides", "circle_mean",
    "disk_extremal_derivative", "dual_norm_c2", "elliptic_E", "hp_norm", "matrix_dual_norm",
    "matrix_h4_closed", "matrix_hp_norm", "matrix_inner", "projection",
    "quadratic_quasinorm_p", "ratio_sweep", "schwarz_admissible", "series_G", "sphere_grid",
    "svd_small", "verify_monster",
]
