"""Exact (sympy) versions of the model data: potential, flatness, det(H_op)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np
import sympy as sp

from .model import FrobeniusModel, MetricKind

__all__ = [
    "coordinates",
    "structure_constants",
    "gram",
    "potential",
    "potentiality_holds",
    "metric_is_flat",
    "socle_field",
    "det_socle_operator",
    "DetHopReport",
    "det_Hop_order",
    "slope_fit_order",
]


def coordinates(model: FrobeniusModel) -> tuple:
    return sp.symbols(f"t1:{model.m + 1}")


def structure_constants(model: FrobeniusModel) -> sp.MutableDenseNDimArray:
    t = coordinates(model)
    m = model.m
    C = sp.MutableDenseNDimArray.zeros(m, m, m)
    C[0, 0, 0] = 1
    C[0, 1, 1] = C[1, 0, 1] = 1
    C[1, 1, 0] = t[1] ** (model.n - 2)
    for i in range(2, m):
        C[i, i, i] = 1
    return C


def potential(model: FrobeniusModel) -> sp.Expr:
    t = coordinates(model)
    n = model.n
    phi = t[0] ** 2 * t[1] / 2 + t[1] ** (n + 1) / ((n + 1) * n * (n - 1))
    return phi + sum((x ** 3 / 6 for x in t[2:]), sp.Integer(0))


def gram(model: FrobeniusModel) -> sp.Matrix:
    """Gram matrix built along the route of ``model.metric_kind``."""
    t = coordinates(model)
    m = model.m
    C = structure_constants(model)
    if model.metric_kind is MetricKind.TEST:
        eps = [0] + [1] * (m - 1)
        return sp.Matrix(m, m, lambda i, j: sum(C[i, j, k] * eps[k] for k in range(m)))
    phi = potential(model)
    unit = [1, 0] + [1] * (m - 2)
    return sp.Matrix(m, m, lambda i, j: sp.expand(
        sum(unit[a] * sp.diff(phi, t[a], t[i], t[j]) for a in range(m))))


def potentiality_holds(model: FrobeniusModel) -> bool:
    """``g(X o Y, Z) = XYZ(Phi)`` on coordinate fields and ``d A`` is symmetric."""
    t = coordinates(model)
    m = model.m
    C = structure_constants(model)
    G = gram(model)
    phi = potential(model)
    for i, j, k in product(range(m), repeat=3):
        A = sum(C[i, j, l] * G[l, k] for l in range(m))
        if sp.simplify(A - sp.diff(phi, t[i], t[j], t[k])) != 0:
            return False
        for a in range(m):
            dA = sp.diff(A, t[a])
            for perm in permutations((a, i, j, k)):
                b, x, y, z = perm
                other = sp.diff(sum(C[x, y, l] * G[l, z] for l in range(m)), t[b])
                if sp.simplify(dA - other) != 0:
                    return False
    return True


def metric_is_flat(model: FrobeniusModel) -> bool:
    """Riemann tensor of the Levi-Civita connection vanishes identically."""
    t = coordinates(model)
    m = model.m
    G = gram(model)
    Ginv = G.inv()
    chris = [[[sp.simplify(sum(Ginv[k, l] * (sp.diff(G[l, i], t[j]) + sp.diff(G[l, j], t[i])
                                            - sp.diff(G[i, j], t[l])) for l in range(m)) / 2)
               for j in range(m)] for i in range(m)] for k in range(m)]
    for a, b, c, d in product(range(m), repeat=4):
        r = sp.diff(chris[a][b][d], t[c]) - sp.diff(chris[a][b][c], t[d])
        r += sum(chris[a][c][e] * chris[e][b][d] - chris[a][d][e] * chris[e][b][c]
                 for e in range(m))
        if sp.simplify(r) != 0:
            return False
    return True


def socle_field(model: FrobeniusModel) -> sp.Matrix:
    """``sum_i delta_i o delta~_i`` with the exact dual basis."""
    m = model.m
    C = structure_constants(model)
    Ginv = gram(model).inv()
    return sp.Matrix([sp.simplify(sum(Ginv[j, i] * C[i, j, k]
                                      for i in range(m) for j in range(m)))
                      for k in range(m)])


def det_socle_operator(model: FrobeniusModel) -> sp.Expr:
    m = model.m
    C = structure_constants(model)
    H = socle_field(model)
    Hop = sp.Matrix(m, m, lambda k, j: sum(H[i] * C[i, j, k] for i in range(m)))
    return sp.factor(Hop.det())


@dataclass(frozen=True)
class DetHopReport:
    det: sp.Expr
    order: int
    slope: float


def slope_fit_order(model: FrobeniusModel, exponents=range(1, 7)) -> float:
    """Slope of ``log|det H_op|`` against ``log|t_2|`` along ``t_2 -> 0``."""
    base = np.array([0.3, 1.0] + [0.5] * (model.m - 2), dtype=complex)
    xs, ys = [], []
    for k in exponents:
        t = base.copy()
        t[1] = 10.0 ** (-k)
        xs.append(np.log(abs(t[1])))
        ys.append(np.log(abs(model.det_socle_operator(t))))
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def det_Hop_order(model: FrobeniusModel) -> DetHopReport:
    """Exact ``det(H_op)`` and its vanishing order along ``t_2 = 0``."""
    t = coordinates(model)
    det = det_socle_operator(model)
    poly = sp.Poly(sp.expand(det), t[1])
    order = min(mon[0] for mon in poly.monoms())
    return DetHopReport(det, order, slope_fit_order(model))
