"""Numerical and symbolic laboratory for the ``I_2(n) x A_1^(m-2)`` models.

The module-level functions take a :class:`FrobeniusModel` first; they are
thin wrappers over the model methods and the :mod:`.tau` routines.
"""

from .model import (CAUSTIC_TOL, FrobeniusModel, MetricKind, PointAlgebra, build_model,
                    socle_from_dual_bases, split_algebra)
from .symbolic import DetHopReport, det_Hop_order
from .tau import (EulerGammaReport, GDelta, MetricData, ResidueReport, TauData, VMatrixReport,
                  caustic_residue, darboux_egoroff_residual, dlog_tau_at, euler_gamma_check,
                  g_function_delta, metric_data, rotation_coefficients, v_matrix_check)
from .checks import run_checks


def euler_field(model: FrobeniusModel, t):
    return model.euler_field(t)


def idempotents_at(model: FrobeniusModel, t) -> PointAlgebra:
    return model.idempotents_at(t)


def socle_field(model: FrobeniusModel, t, basis=None):
    return model.socle_field(t, basis)


__all__ = [
    "CAUSTIC_TOL",
    "FrobeniusModel",
    "MetricKind",
    "PointAlgebra",
    "MetricData",
    "TauData",
    "build_model",
    "euler_field",
    "idempotents_at",
    "socle_field",
    "socle_from_dual_bases",
    "split_algebra",
    "det_Hop_order",
    "DetHopReport",
    "metric_data",
    "rotation_coefficients",
    "darboux_egoroff_residual",
    "dlog_tau_at",
    "g_function_delta",
    "GDelta",
    "caustic_residue",
    "ResidueReport",
    "euler_gamma_check",
    "EulerGammaReport",
    "v_matrix_check",
    "VMatrixReport",
    "run_checks",
]
