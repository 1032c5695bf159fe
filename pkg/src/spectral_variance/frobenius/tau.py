"""Rotation coefficients, ``d log tau_I``, the G-function and its residues.

All formulas are in canonical coordinates: with idempotents ``e_i`` and
``eta_i = g(e_i, e_i)``, ``eta_ij = e_i(eta_j)``,

    gamma_ij   = eta_ij / (2 sqrt(eta_i) sqrt(eta_j))
    V_ij       = -(u_i - u_j) gamma_ij
    d log tau  = 1/8 sum_{i != j} (u_i - u_j) eta_ij**2 / (eta_i eta_j) du_i

and ``G = log tau_I - log(J) / 24`` with ``J ~ det(H_op)**(-1/2)``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..errors import BadParams, NoConvergence, PathOnCaustic, ZeroEta
from ..spectrum_core import FrobeniusDegrees, gamma_from_degrees
from .model import FrobeniusModel, MetricKind
from .numerics import (
    continuous_log_change,
    directional_derivative,
    fit_pole_residue,
    integrate_form,
)

__all__ = [
    "MetricData",
    "TauData",
    "metric_data",
    "rotation_coefficients",
    "dlog_tau_at",
    "dlog_j_at",
    "darboux_egoroff_residual",
    "g_function_delta",
    "GDelta",
    "caustic_residue",
    "ResidueReport",
    "expected_tau_residue",
    "expected_g_delta",
    "euler_gamma_check",
    "EulerGammaReport",
    "closed_form_euler_gamma",
    "v_matrix_check",
    "VMatrixReport",
]

ETA_TOL = 1e-300


@dataclass(frozen=True)
class MetricData:
    gram: np.ndarray
    eta: complex
    eta_i: np.ndarray
    eta_ij: np.ndarray


@dataclass(frozen=True)
class TauData:
    t: np.ndarray
    u: np.ndarray
    metric: MetricData
    sqrt_eta: np.ndarray
    gamma: np.ndarray
    V: np.ndarray
    dlog_u: np.ndarray
    dlog_t: np.ndarray


def metric_data(model: FrobeniusModel, t: Sequence) -> MetricData:
    pa = model.idempotents_at(t)
    E = pa.idempotents
    eps = model.epsilon()
    eta_i = E @ eps
    # eps is constant, so e_i(eta_j) = eps(D_{e_i} e_j)
    dE = model.idempotent_derivative(pa.t)
    eta_ij = np.einsum("il,jlk,k->ij", E, dE, eps)
    return MetricData(model.gram(pa.t), model.eta(pa.t), eta_i, eta_ij)


def _roots(values: np.ndarray, ref: Optional[np.ndarray], signs: Optional[Sequence[int]]):
    out = np.array([cmath.sqrt(v) for v in values], dtype=complex)
    if ref is not None:
        flip = np.abs(out - ref) > np.abs(out + ref)
        out[flip] *= -1
    if signs is not None:
        out = out * np.asarray(signs)
    return out


def rotation_coefficients(model: FrobeniusModel, t: Sequence,
                          ref_sqrt: Optional[np.ndarray] = None,
                          signs: Optional[Sequence[int]] = None) -> TauData:
    """Rotation coefficients and ``d log tau_I`` at ``t``.

    Square roots of ``eta_i`` use the principal branch, then optionally the
    sign closest to ``ref_sqrt`` (to follow a branch continuously) and an
    explicit per-index ``signs`` flip.
    """
    pa = model.idempotents_at(t)
    md = metric_data(model, pa.t)
    if np.any(np.abs(md.eta_i) < ETA_TOL):
        raise ZeroEta("eta_i vanishes; rotation coefficients undefined")
    sq = _roots(md.eta_i, ref_sqrt, signs)
    m = model.m
    gamma = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(i + 1, m):
            gamma[i, j] = gamma[j, i] = 0.5 * md.eta_ij[i, j] / (sq[i] * sq[j])
    du = pa.u_differences()
    V = -du * gamma
    ratio = md.eta_ij ** 2 / np.outer(md.eta_i, md.eta_i)
    np.fill_diagonal(ratio, 0)
    dlog_u = (du * ratio).sum(axis=1) / 8
    dlog_t = dlog_u @ model.canonical_jacobian(pa.t)
    return TauData(pa.t, pa.u, md, sq, gamma, V, dlog_u, dlog_t)


def dlog_tau_at(model: FrobeniusModel, t: Sequence) -> TauData:
    """``d log tau_I`` at ``t``: ``.dlog_u`` (du basis), ``.dlog_t`` (dt basis)."""
    return rotation_coefficients(model, t)


def dlog_j_at(model: FrobeniusModel, t: Sequence, h: Optional[float] = None) -> np.ndarray:
    """Covector ``d log J = -1/2 d log det(H_op)`` in the dt basis."""
    t = model.point(t)
    step = 1e-3 * max(abs(t[1]), 1e-12) if h is None else h
    det0 = model.det_socle_operator(t)
    out = np.zeros(model.m, dtype=complex)
    for l in range(model.m):
        v = np.zeros(model.m, dtype=complex)
        v[l] = 1
        out[l] = directional_derivative(
            lambda x: cmath.log(model.det_socle_operator(x) / det0), t, v, step
        )
    return -0.5 * out


def darboux_egoroff_residual(model: FrobeniusModel, t: Sequence, h: float = 1e-4,
                             richardson: bool = True) -> float:
    """``max |e_k gamma_ij - gamma_ik gamma_kj|`` over distinct ``i, j, k``."""
    if model.m < 3:
        raise BadParams("Darboux-Egoroff equations need m >= 3")
    base = rotation_coefficients(model, t)
    E = model.idempotents_at(t).idempotents
    m = model.m
    worst = 0.0
    for k in range(m):
        dgamma = directional_derivative(
            lambda x: rotation_coefficients(model, x, ref_sqrt=base.sqrt_eta).gamma,
            base.t, E[k], h, richardson)
        for i in range(m):
            for j in range(m):
                if len({i, j, k}) == 3:
                    r = abs(dgamma[i, j] - base.gamma[i, k] * base.gamma[k, j])
                    worst = max(worst, r)
    return worst


def _check_path(model: FrobeniusModel, pts: list) -> None:
    tol = model.caustic_tol
    for a, b in zip(pts, pts[1:]):
        a2, d2 = a[1], b[1] - a[1]
        # closest approach of the segment to t_2 = 0
        s = 0.0 if abs(d2) == 0 else min(1.0, max(0.0, -(np.conj(d2) * a2).real / abs(d2) ** 2))
        if abs(a2 + s * d2) < max(tol, 1e-8):
            raise PathOnCaustic(f"segment {a} -> {b} meets the caustic")


@dataclass(frozen=True)
class GDelta:
    tau: complex
    log_j_term: complex

    @property
    def value(self) -> complex:
        return self.tau + self.log_j_term


def g_function_delta(model: FrobeniusModel, path: Sequence, tol: float = 1e-10) -> GDelta:
    """``G(end) - G(start)`` along a polygonal path avoiding the caustic.

    The ``log tau_I`` part integrates ``d log tau_I``; the ``-log(J)/24``
    part is ``log det(H_op) / 48`` followed continuously along the path.
    """
    pts = [model.point(p) for p in path]
    if len(pts) < 2:
        return GDelta(0j, 0j)
    _check_path(model, pts)
    tau = integrate_form(lambda x: rotation_coefficients(model, x).dlog_t, pts, tol)
    dlogdet = continuous_log_change(model.det_socle_operator, pts)
    return GDelta(complex(tau), dlogdet / 48)


def expected_tau_residue(n: int) -> Fraction:
    return -Fraction((n - 2) ** 2, 16 * n)


def expected_g_delta(n: int) -> Fraction:
    """Coefficient of ``log t_2`` in ``G`` for ``I_2(n)``."""
    return -Fraction((2 - n) * (3 - n), 24 * n)


@dataclass(frozen=True)
class ResidueReport:
    n: int
    m: int
    tau_residue: complex
    tau_error: float
    log_j_residue: complex
    log_j_error: float

    @property
    def expected(self) -> Fraction:
        return expected_tau_residue(self.n)

    @property
    def expected_log_j(self) -> Fraction:
        return Fraction(self.n - 2, 48)

    @property
    def g_residue(self) -> complex:
        return self.tau_residue + self.log_j_residue

    def deviation(self) -> float:
        return abs(self.tau_residue - float(self.expected))


def _default_base(model: FrobeniusModel) -> np.ndarray:
    base = np.array([0.3 - 0.2j] + [1.0] + [0.4 + 0.1j * k for k in range(model.m - 2)],
                    dtype=complex)
    return base


def caustic_residue(model: FrobeniusModel, base: Optional[Sequence] = None,
                    exponents: Sequence[int] = range(1, 7),
                    max_error: float = 1e-6) -> ResidueReport:
    """Fit the ``dt_2 / t_2`` coefficients of ``d log tau_I`` and of
    ``-d log(J) / 24`` along the ray ``t_2 = 10**-k``."""
    if model.n < 3:
        raise BadParams("the caustic residue needs n >= 3")
    b = _default_base(model) if base is None else model.point(base).copy()
    xs, tau_c, j_c = [], [], []
    for k in exponents:
        t = b.copy()
        t[1] = 10.0 ** (-k)
        xs.append(t[1])
        tau_c.append(rotation_coefficients(model, t).dlog_t[1])
        j_c.append(-dlog_j_at(model, t)[1] / 24)
    r_tau, e_tau = fit_pole_residue(xs, tau_c)
    r_j, e_j = fit_pole_residue(xs, j_c)
    if max(e_tau, e_j) > max_error:
        raise NoConvergence(f"residue fit unstable (error bars {e_tau:.3g}, {e_j:.3g})")
    return ResidueReport(model.n, model.m, r_tau, e_tau, r_j, e_j)


def closed_form_euler_gamma(n: int) -> Fraction:
    return -Fraction((n - 2) * (n - 3), 12 * n * n)


@dataclass(frozen=True)
class EulerGammaReport:
    EG: complex
    E_log_tau: complex
    gamma_formula: Fraction
    log_tau_formula: Fraction
    closed_form: Fraction
    tol: float

    @property
    def match(self) -> bool:
        return (abs(self.EG - float(self.gamma_formula)) < self.tol
                and abs(self.E_log_tau - float(self.log_tau_formula)) < self.tol
                and self.gamma_formula == self.closed_form)


def euler_gamma_check(model: FrobeniusModel, t: Optional[Sequence] = None,
                      tol: float = 1e-8) -> EulerGammaReport:
    """Compare ``E G`` at a generic point with the value from the degrees."""
    if model.m != 2:
        raise BadParams("the Euler field is only compatible with the metric for m = 2")
    t = model.point([0.37 + 0.11j, 1.3 - 0.4j] if t is None else t)
    E = model.euler_field(t)
    e_log_tau = complex(np.dot(rotation_coefficients(model, t).dlog_t, E))
    e_log_j = complex(np.dot(dlog_j_at(model, t, h=1e-3), E))
    d, D = model.degrees()
    deg = FrobeniusDegrees(d, D)
    half = D / 2
    log_tau_formula = -sum((x - half) ** 2 for x in d) / 4
    return EulerGammaReport(
        EG=e_log_tau - e_log_j / 24,
        E_log_tau=e_log_tau,
        gamma_formula=gamma_from_degrees(deg),
        log_tau_formula=log_tau_formula,
        closed_form=closed_form_euler_gamma(model.n),
        tol=tol,
    )


@dataclass(frozen=True)
class VMatrixReport:
    eigenvalues: np.ndarray
    expected: tuple
    skew_residual: float
    tol: float

    @property
    def deviation(self) -> float:
        got = sorted(self.eigenvalues, key=lambda z: (z.real, z.imag))
        return max(abs(g - float(e)) for g, e in zip(got, self.expected))

    @property
    def match(self) -> bool:
        return self.deviation < self.tol and self.skew_residual == 0


def v_matrix_check(model: FrobeniusModel, t: Optional[Sequence] = None,
                   tol: float = 1e-8) -> VMatrixReport:
    """Eigenvalues of ``-(V_ij)`` against ``d_i - D/2``."""
    if model.m != 2:
        raise BadParams("the V-matrix check needs the m = 2 Frobenius structure")
    t = model.point([0.37 + 0.11j, 1.3 - 0.4j] if t is None else t)
    td = rotation_coefficients(model, t)
    d, D = model.degrees()
    expected = tuple(sorted(x - D / 2 for x in d))
    eig = np.linalg.eigvals(-td.V)
    skew = float(np.max(np.abs(td.V + td.V.T)))
    return VMatrixReport(eig, expected, skew, tol)
