"""Numerical axiom checks and the check runner behind ``frobenius --check``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from ..errors import BadParams
from .model import FrobeniusModel, socle_from_dual_bases
from .numerics import directional_derivative, integrate_form, jacobian
from . import symbolic, tau

__all__ = [
    "random_points",
    "multiplication_residuals",
    "invariance_residual",
    "lie_derivative_product",
    "integrability_residual",
    "euler_residual",
    "euler_metric_residual",
    "socle_consistency_residual",
    "e_gamma_residual",
    "euler_eta_residual",
    "euler_gamma_residual",
    "loop_integral",
    "CheckResult",
    "run_checks",
    "CHECK_GROUPS",
]


def random_points(model: FrobeniusModel, count: int, seed: int = 0,
                  min_t2: float = 0.2) -> list[np.ndarray]:
    """Complex points with ``|t_2| >= min_t2`` and ``t_2`` off the negative axis."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        t = rng.normal(size=model.m) + 1j * rng.normal(size=model.m)
        if abs(t[1]) < min_t2 or (t[1].real < 0 and abs(t[1].imag) < 0.2):
            continue
        pts.append(t)
    return pts


def multiplication_residuals(model: FrobeniusModel, t: Sequence) -> dict:
    """Max residuals of commutativity, associativity and the unit law."""
    C = model.structure_constants(t)
    comm = np.max(np.abs(C - C.transpose(1, 0, 2)))
    # (a o b) o c - a o (b o c)
    left = np.einsum("abl,lck->abck", C, C)
    right = np.einsum("bcl,alk->abck", C, C)
    assoc = np.max(np.abs(left - right))
    e = model.unit()
    unit = np.max(np.abs(np.einsum("i,ijk->jk", e, C) - np.eye(model.m)))
    return {"commutativity": float(comm), "associativity": float(assoc), "unit": float(unit)}


def invariance_residual(model: FrobeniusModel, t: Sequence) -> float:
    """``max |g(X o Y, Z) - g(X, Y o Z)|`` on coordinate fields."""
    C = model.structure_constants(t)
    G = model.gram(t)
    A = np.einsum("ijl,lk->ijk", C, G)
    return float(np.max(np.abs(A - A.transpose(1, 2, 0))))


def lie_derivative_product(C: np.ndarray, dC: np.ndarray, X: np.ndarray,
                           JX: np.ndarray) -> np.ndarray:
    """``(Lie_X o)_{ij}^k`` from ``C``, ``dC[l,i,j,k] = d_l C_ij^k``, the
    field ``X`` and its Jacobian ``JX[k, l] = d_l X^k``."""
    return (np.einsum("l,lijk->ijk", X, dC)
            - np.einsum("ijl,kl->ijk", C, JX)
            + np.einsum("ljk,li->ijk", C, JX)
            + np.einsum("ilk,lj->ijk", C, JX))


def _fd_structure_derivative(model: FrobeniusModel, t: np.ndarray, h: float) -> np.ndarray:
    J = jacobian(model.structure_constants, t, h)  # [i, j, k, l]
    return np.moveaxis(J, -1, 0)


def integrability_residual(model: FrobeniusModel, t: Sequence, h: float = 1e-3) -> float:
    """Residual of ``Lie_{X o Y}(o) = X o Lie_Y(o) + Y o Lie_X(o)`` for all
    pairs of coordinate fields, with finite-difference derivatives."""
    t = model.point(t)
    m = model.m
    C = model.structure_constants(t)
    dC = _fd_structure_derivative(model, t, h)
    zero = np.zeros((m, m), dtype=complex)
    worst = 0.0
    for a in range(m):
        for b in range(m):
            Xa = np.eye(m, dtype=complex)[a]
            Xb = np.eye(m, dtype=complex)[b]
            Z = C[a, b]
            JZ = dC[:, a, b, :].T  # JZ[k, l] = d_l C_ab^k
            lhs = lie_derivative_product(C, dC, Z, JZ)
            Lb = lie_derivative_product(C, dC, Xb, zero)
            La = lie_derivative_product(C, dC, Xa, zero)
            rhs = np.einsum("p,pqk,ijq->ijk", Xa, C, Lb) + np.einsum("p,pqk,ijq->ijk", Xb, C, La)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def euler_residual(model: FrobeniusModel, t: Sequence, coefficient: Optional[float] = None,
                   h: float = 1e-3) -> float:
    """``max |Lie_E(o) - o|`` with ``E`` using the given ``t_2`` coefficient."""
    t = model.point(t)
    C = model.structure_constants(t)
    dC = _fd_structure_derivative(model, t, h)
    E = model.euler_field(t, coefficient)
    JE = jacobian(lambda x: model.euler_field(x, coefficient), t, h)
    return float(np.max(np.abs(lie_derivative_product(C, dC, E, JE) - C)))


def euler_metric_residual(model: FrobeniusModel, t: Sequence, h: float = 1e-3) -> float:
    """``max |Lie_E(g) - D g|`` with ``D = 1 + 2/n``."""
    t = model.point(t)
    G = model.gram(t)
    dG = np.moveaxis(jacobian(model.gram, t, h), -1, 0)  # [l, i, j]
    E = model.euler_field(t)
    JE = jacobian(model.euler_field, t, h)
    L = np.einsum("l,lij->ij", E, dG) + np.einsum("lj,li->ij", G, JE) + np.einsum("il,lj->ij", G, JE)
    _, D = model.degrees()
    return float(np.max(np.abs(L - float(D) * G)))


def socle_consistency_residual(model: FrobeniusModel, t: Sequence, seed: int = 0) -> dict:
    """Socle field from dual bases (two random bases) against ``sum e_i / eta_i``."""
    t = model.point(t)
    rng = np.random.default_rng(seed)
    C, G = model.structure_constants(t), model.gram(t)
    H0 = socle_from_dual_bases(C, G)
    H1 = socle_from_dual_bases(C, G, rng.normal(size=(model.m, model.m)))
    H2 = socle_from_dual_bases(C, G, rng.normal(size=(model.m, model.m))
                               + 1j * rng.normal(size=(model.m, model.m)))
    E = model.idempotents_at(t).idempotents
    eta = np.einsum("ik,kl,il->i", E, G, E)
    Hc = (E / eta[:, None]).sum(axis=0)
    return {
        "basis_independence": float(max(np.max(np.abs(H1 - H0)), np.max(np.abs(H2 - H0)))),
        "idempotent_form": float(np.max(np.abs(Hc - H0))),
    }


def e_gamma_residual(model: FrobeniusModel, t: Sequence, h: float = 1e-4) -> float:
    """``max |e(gamma_ij)|``."""
    base = tau.rotation_coefficients(model, t)
    d = directional_derivative(
        lambda x: tau.rotation_coefficients(model, x, ref_sqrt=base.sqrt_eta).gamma,
        base.t, model.unit(), h)
    return float(np.max(np.abs(d)))


def euler_eta_residual(model: FrobeniusModel, t: Sequence, h: float = 1e-4) -> float:
    """``max |E(eta_i) - (D - 2) eta_i|``."""
    t = model.point(t)
    _, D = model.degrees()
    dEta = directional_derivative(lambda x: tau.metric_data(model, x).eta_i, t,
                                  model.euler_field(t), h)
    eta = tau.metric_data(model, t).eta_i
    return float(np.max(np.abs(dEta - (float(D) - 2) * eta)))


def euler_gamma_residual(model: FrobeniusModel, t: Sequence, h: float = 1e-4,
                         richardson: bool = True) -> float:
    """``max |E(gamma_ij) + gamma_ij|``."""
    base = tau.rotation_coefficients(model, t)
    d = directional_derivative(
        lambda x: tau.rotation_coefficients(model, x, ref_sqrt=base.sqrt_eta).gamma,
        base.t, model.euler_field(base.t), h, richardson)
    return float(np.max(np.abs(d + base.gamma)))


def loop_integral(model: FrobeniusModel, corner: Sequence, v1: Sequence, v2: Sequence,
                  size: float = 0.05) -> complex:
    """``d log tau_I`` integrated around the parallelogram spanned by
    ``size * v1`` and ``size * v2`` at ``corner``."""
    c = model.point(corner)
    a = size * np.asarray(v1, dtype=complex)
    b = size * np.asarray(v2, dtype=complex)
    loop = [c, c + a, c + a + b, c + b, c]
    return integrate_form(lambda x: tau.rotation_coefficients(model, x).dlog_t, loop, 1e-12)


# -- check runner -----------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    measured: Union[float, complex, str]
    expected: Union[float, str]
    tolerance: float
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        def num(x):
            if isinstance(x, np.generic):
                x = x.item()
            if isinstance(x, complex):
                return x.real if abs(x.imag) <= 1e-15 * max(1.0, abs(x)) else [x.real, x.imag]
            return x
        return {
            "name": self.name,
            "measured": num(self.measured),
            "expected": num(self.expected),
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
            **({"note": self.note} if self.note else {}),
        }


def _residual(name: str, value: float, tol: float, note: str = "") -> CheckResult:
    return CheckResult(name, value, 0.0, tol, bool(value < tol), note)


def _axioms(model: FrobeniusModel, tol: Optional[float]) -> list[CheckResult]:
    pts = random_points(model, 100)
    out = []
    worst = {"commutativity": 0.0, "associativity": 0.0, "unit": 0.0}
    for p in pts:
        for k, v in multiplication_residuals(model, p).items():
            worst[k] = max(worst[k], v)
    for k, v in worst.items():
        out.append(_residual(f"multiplication.{k}", v, tol or 1e-12))
    out.append(_residual("metric.invariance", max(invariance_residual(model, p) for p in pts[:20]),
                         tol or 1e-12))
    out.append(_residual("integrability", max(integrability_residual(model, p) for p in pts[:10]),
                         tol or 1e-8))
    p = pts[0]
    out.append(_residual("euler.lie_product", euler_residual(model, p), tol or 1e-8,
                         f"coefficient 2/{model.n}"))
    if model.m == 2:
        out.append(_residual("euler.lie_metric", euler_metric_residual(model, p), tol or 1e-8))
        out.append(_residual("euler.eta", euler_eta_residual(model, p), tol or 1e-8))
        out.append(_residual("euler.gamma", euler_gamma_residual(model, p), tol or 1e-8))
    potential_ok = symbolic.potentiality_holds(model)
    flat_ok = symbolic.metric_is_flat(model)
    out.append(CheckResult("potentiality", str(potential_ok), "True", 0.0, potential_ok))
    out.append(CheckResult("flatness", str(flat_ok), "True", 0.0, flat_ok))
    out.append(_residual("e_gamma", e_gamma_residual(model, p), tol or 1e-8))
    if model.m >= 3:
        out.append(_residual("darboux_egoroff", tau.darboux_egoroff_residual(model, p), tol or 1e-8))
    closed = abs(loop_integral(model, p, np.eye(model.m)[1], 1j * np.eye(model.m)[1]))
    out.append(_residual("dlog_tau.closed", closed, tol or 1e-7))
    return out


def _socle(model: FrobeniusModel, tol: Optional[float]) -> list[CheckResult]:
    out = []
    H = list(symbolic.socle_field(model))
    want = [0, 2] + [1] * (model.m - 2)
    out.append(CheckResult("socle.field", str(H), str(want), 0.0, H == want))
    rep = symbolic.det_Hop_order(model)
    t2 = symbolic.coordinates(model)[1]
    exact = bool(symbolic.sp.simplify(rep.det + 4 * t2 ** (model.n - 2)) == 0)
    out.append(CheckResult("socle.det_Hop", str(rep.det), f"-4*t2**{model.n - 2}", 0.0, exact))
    out.append(CheckResult("socle.order", float(rep.slope), float(model.n - 2), tol or 0.01,
                           abs(rep.slope - (model.n - 2)) < (tol or 0.01) and rep.order == model.n - 2))
    res = socle_consistency_residual(model, random_points(model, 1)[0])
    out.append(_residual("socle.basis_independence", res["basis_independence"], tol or 1e-10))
    out.append(_residual("socle.idempotent_form", res["idempotent_form"], tol or 1e-10))
    return out


def _tau(model: FrobeniusModel, tol: Optional[float]) -> list[CheckResult]:
    out = []
    t = np.array([0.0, 1.0] + [0.5] * (model.m - 2), dtype=complex)
    td = tau.rotation_coefficients(model, t)
    want = float(tau.expected_tau_residue(model.n))
    out.append(CheckResult("dlog_tau.dt2_at_t2=1", complex(td.dlog_t[1]),
                           str(tau.expected_tau_residue(model.n)), tol or 1e-12,
                           abs(td.dlog_t[1] - want) < (tol or 1e-12)))
    if model.m == 2:
        g = tau.g_function_delta(model, [t, np.array([0.0, np.e])])
        exp = tau.expected_g_delta(model.n)
        out.append(CheckResult("G.delta_t2_1_to_e", g.value, str(exp), tol or 1e-8,
                               abs(g.value - float(exp)) < (tol or 1e-8)))
    return out


def _residue(model: FrobeniusModel, tol: Optional[float]) -> list[CheckResult]:
    if model.n < 3:
        return [CheckResult("residue", "n/a", "n/a", 0.0, True, "no caustic for n = 2")]
    rep = tau.caustic_residue(model)
    tl = tol or 1e-6
    out = [CheckResult("residue.dlog_tau", rep.tau_residue, str(rep.expected), tl,
                       rep.deviation() < tl, f"fit error bar {rep.tau_error:.2e}")]
    out.append(CheckResult("residue.log_J", rep.log_j_residue, str(rep.expected_log_j), tl,
                           abs(rep.log_j_residue - float(rep.expected_log_j)) < tl))
    g_exp = tau.expected_g_delta(model.n)
    out.append(CheckResult("residue.G", rep.g_residue, str(g_exp), tl,
                           abs(rep.g_residue - float(g_exp)) < tl,
                           "G extends over the caustic" if g_exp == 0 else "logarithmic pole"))
    return out


def _euler(model: FrobeniusModel, tol: Optional[float]) -> list[CheckResult]:
    if model.m != 2:
        return [CheckResult("euler", "n/a", "n/a", 0.0, True, "needs m = 2")]
    tl = tol or 1e-8
    rep = tau.euler_gamma_check(model, tol=tl)
    v = tau.v_matrix_check(model, tol=tl)
    return [
        CheckResult("euler.EG", rep.EG, str(rep.gamma_formula), tl, rep.match),
        CheckResult("euler.E_log_tau", rep.E_log_tau, str(rep.log_tau_formula), tl,
                    abs(rep.E_log_tau - float(rep.log_tau_formula)) < tl),
        CheckResult("euler.V_eigenvalues", v.deviation, 0.0, tl, v.match,
                    "eigenvalues of -V vs d_i - D/2"),
        _decision_2_over_m(model, tl),
    ]


def _decision_2_over_m(model: FrobeniusModel, tol: float) -> CheckResult:
    # With 2/m in place of 2/n, Lie_E(o) = o must fail unless m == n.
    res = euler_residual(model, random_points(model, 1)[0], 2 / model.m)
    holds = res < tol
    return CheckResult("euler.coefficient_2_over_m", res, "0" if model.m == model.n else "nonzero",
                       tol, holds == (model.m == model.n),
                       "Lie_E(o) = o with E using 2/m")


CHECK_GROUPS: dict[str, Callable] = {
    "axioms": _axioms,
    "socle": _socle,
    "tau": _tau,
    "residue": _residue,
    "euler": _euler,
}


def run_checks(model: FrobeniusModel, which: str = "all", tol: Optional[float] = None) -> dict:
    if which != "all" and which not in CHECK_GROUPS:
        raise BadParams(f"unknown check group {which!r}")
    groups = list(CHECK_GROUPS) if which == "all" else [which]
    results = []
    for g in groups:
        results.extend(CHECK_GROUPS[g](model, tol))
    return {
        "n": model.n,
        "m": model.m,
        "metric": model.metric_kind.value,
        "checks": [r.as_dict() for r in results],
        "pass": all(r.passed for r in results),
    }
