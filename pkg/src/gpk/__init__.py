"""Exact-arithmetic toolkit for Galois points of the Hermitian curve.

Everything here is deterministic and exact: finite fields in a fixed
polynomial-basis tower, projectivized matrix groups, divisor arithmetic,
function-field valuations, and the constructive plane-model pipeline.
No floating point, no randomness.
"""

from gpk.ffield import FieldCtx, FFElem, FieldError, build_field, frobenius, hermitian_pair_check, solve_additive
from gpk.projective import HermitianCurve, ProjMatrix, ProjPoint
from gpk.groups import (
    MatrixGroup,
    check_semidirect,
    closure,
    cyclic_subgroup,
    intersect,
    is_normal,
    n1_subgroup,
    n2_subgroup,
    normal_subgroups_between,
    orbit,
    stabilizer,
    trivial_group,
)
from gpk.criterion import (
    CriterionReport,
    Divisor,
    check_outer_point,
    orbit_sum,
    standard_instance,
    verify_standard_instance,
    verify_tuple,
)
from gpk.construct import (
    PlaneModel,
    build_f_g,
    certify_model,
    plane_model,
    quotient_plane_model,
)

__version__ = "0.1.0"
