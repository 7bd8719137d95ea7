"""Entanglement detection from symmetric (N,M)-POVM measurement statistics."""

__version__ = "0.1.0"

from .basis import HermitianOperatorBasis, gell_mann, group_for_nm
from .criteria import (CriterionVerdict, augmented_matrix, corollary_bounds,
                       evaluate_bipartition, evaluate_corollary, evaluate_p_only,
                       evaluate_theorem1, marginal_vector, probability_matrix,
                       probability_purity, shi_q_matrix, sun_q_matrix,
                       theorem1_bound)
from .matcore import (kron, partial_trace, partial_transpose, realign,
                      trace_norm, vec)
from .povm import (NmPovmConfig, SymmetricPovm, build_gsic, build_mum,
                   build_povm, efficiency_x, t_range, validate_povm)
from .states import (DensityMatrix, horodecki_3x3, isotropic, random_separable,
                     rho1_lambda, rho_y, tiles_state, white_noise_mix)
