"""Finite differences, path quadrature and residue fitting."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..errors import NoConvergence

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)
_GL_NODES = (_GL_NODES + 1) / 2
_GL_WEIGHTS = _GL_WEIGHTS / 2


def directional_derivative(f: Callable, t: np.ndarray, v: np.ndarray, h: float = 1e-3,
                           richardson: bool = True):
    """Central difference of ``f`` at ``t`` along ``v``.

    With ``richardson`` the step-``h`` and step-``h/2`` estimates are
    combined, giving an O(h**4) error for smooth ``f``.
    """
    t = np.asarray(t, dtype=complex)
    v = np.asarray(v, dtype=complex)

    def central(step):
        return (np.asarray(f(t + step * v)) - np.asarray(f(t - step * v))) / (2 * step)

    d1 = central(h)
    if not richardson:
        return d1
    d2 = central(h / 2)
    return (4 * d2 - d1) / 3


def jacobian(f: Callable, t: np.ndarray, h: float = 1e-3) -> np.ndarray:
    """Array ``J[..., l] = d f / d t_l`` by Richardson central differences."""
    t = np.asarray(t, dtype=complex)
    cols = []
    for l in range(len(t)):
        v = np.zeros(len(t), dtype=complex)
        v[l] = 1
        cols.append(directional_derivative(f, t, v, h))
    return np.stack(cols, axis=-1)


def _segment_gl(form: Callable, a: np.ndarray, b: np.ndarray, panels: int) -> complex:
    d = b - a
    total = 0j
    for p in range(panels):
        s0 = p / panels
        for x, w in zip(_GL_NODES, _GL_WEIGHTS):
            s = s0 + x / panels
            total += w / panels * np.dot(form(a + s * d), d)
    return total


def integrate_form(form: Callable, path: Sequence, tol: float = 1e-10,
                   max_panels: int = 4096) -> complex:
    """Integrate the 1-form ``form(t) -> covector`` along a polygonal path.

    Each segment uses composite Gauss-Legendre; the panel count doubles
    until two successive estimates agree to ``tol``.
    """
    pts = [np.asarray(p, dtype=complex) for p in path]
    total = 0j
    for a, b in zip(pts, pts[1:]):
        panels = 1
        prev = _segment_gl(form, a, b, panels)
        while True:
            panels *= 2
            cur = _segment_gl(form, a, b, panels)
            if abs(cur - prev) < tol * max(1.0, abs(cur)):
                break
            if panels >= max_panels:
                raise NoConvergence(f"quadrature did not settle on segment {a} -> {b}")
            prev = cur
        total += cur
    return total


def continuous_log_change(f: Callable, path: Sequence, steps: int = 64) -> complex:
    """``log f(end) - log f(start)`` along the path with the branch followed
    continuously (sum of principal logs of successive ratios)."""
    pts = [np.asarray(p, dtype=complex) for p in path]
    total = 0j
    for a, b in zip(pts, pts[1:]):
        prev = f(a)
        for k in range(1, steps + 1):
            cur = f(a + (b - a) * (k / steps))
            total += np.log(cur / prev)
            prev = cur
    return complex(total)


def fit_pole_residue(t2_values: Sequence[complex], coefficients: Sequence[complex],
                     degree: int = 2) -> tuple[complex, float]:
    """Fit ``c(t2) = r / t2 + a_0 + ... + a_{degree-1} t2**(degree-1)``.

    Returns the fitted residue ``r`` and an error bar: the largest pairwise
    deviation of ``r`` among leave-one-out refits.
    """
    x = np.asarray(t2_values, dtype=complex)
    y = np.asarray(coefficients, dtype=complex) * x

    def fit(idx):
        A = np.vander(x[idx], degree + 1, increasing=True)
        sol, *_ = np.linalg.lstsq(A, y[idx], rcond=None)
        return sol[0]

    full = fit(np.arange(len(x)))
    subs = [fit(np.delete(np.arange(len(x)), i)) for i in range(len(x))]
    subs.append(full)
    err = max(abs(a - b) for a in subs for b in subs)
    return complex(full), float(err)
