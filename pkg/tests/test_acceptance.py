"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected in ``ACCEPTANCE_LINES`` and repeated in the
terminal summary by ``conftest.pytest_terminal_summary``.
"""

import random
import time
from fractions import Fraction as F
from math import lcm

import numpy as np
import sympy as sp

from conftest import bp_corpus, random_admissible_weights
from spectral_variance.families import BimodalSeries, gamma_bimodal, gamma_tpqr
from spectral_variance.frobenius import (build_model, caustic_residue, checks,
                                         darboux_egoroff_residual, euler_gamma_check,
                                         g_function_delta, symbolic)
from spectral_variance.frobenius.tau import closed_form_euler_gamma
from spectral_variance.joins import gamma_join_check, join
from spectral_variance.spectrum_core import (Spectrum, WeightSystem, characteristic_function,
                                             gamma_from_spectrum, milnor_number,
                                             spectrum_from_weights, variance)

ACCEPTANCE_LINES = []


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def weight_corpus():
    bp = [tuple(F(1, a) for a in exps) for exps in bp_corpus()]
    return bp + random_admissible_weights(120)


# -- 1 -----------------------------------------------------------------------


def test_criterion_1_variance_identity():
    corpus = weight_corpus()
    start = time.perf_counter()
    bad = []
    for ws in corpus:
        s = spectrum_from_weights(WeightSystem(ws))
        if variance(s) != (s.last - s.first) / 12 or gamma_from_spectrum(s) != 0:
            bad.append(ws)
    elapsed = time.perf_counter() - start
    ok = len(corpus) >= 200 and not bad and elapsed < 10
    report(1, ok, f"{len(corpus)} weight systems, {len(bad)} failures, {elapsed:.2f}s (limit 10s)")


# -- 2 -----------------------------------------------------------------------


def expected_poly(ws):
    """``sum T**(alpha + 1)`` as integer arrays in ``S = T**(1/L)`` without
    any division.

    Fermat weights ``1/a`` use the Jacobi basis: a product of ``sum_k T**(k/a)``.
    Other weights use the truncated power series of the product.
    """
    L = lcm(*(w.denominator for w in ws))
    if all(w.numerator == 1 for w in ws):
        acc = np.array([1], dtype=np.int64)
        for w in ws:
            a = w.denominator
            f = np.zeros(L + 1, dtype=np.int64)
            f[[k * (L // a) for k in range(1, a)]] = 1
            acc = np.convolve(acc, f)
        return L, {k: int(c) for k, c in enumerate(acc) if c}
    from conftest import series_spectrum
    values, tail_zero = series_spectrum(list(ws))
    assert tail_zero
    out = {}
    for v in values:
        k = int((v + 1) * L)
        out[k] = out.get(k, 0) + 1
    return L, out


def test_criterion_2_product_expansion():
    corpus = weight_corpus()
    bad = []
    for ws in corpus:
        W = WeightSystem(ws)
        s = spectrum_from_weights(W)
        poly, mu = characteristic_function(s)
        L, want = expected_poly(ws)
        prod_mu = 1
        for w in ws:
            prod_mu *= 1 / w - 1
        same_terms = W.product == poly and W.product.scaled(L) == want
        counts = mu == milnor_number(W) == prod_mu == sum(want.values()) == W.product.mass()
        if not (same_terms and counts):
            bad.append(ws)
    report(2, not bad, f"{len(corpus)} weight systems, product == sum T^(alpha+1) and "
                       f"mu three ways, {len(bad)} failures")


# -- 3 -----------------------------------------------------------------------


def random_symmetric(rng):
    n = rng.randint(0, 3)
    centre = F(n - 1, 2)
    vals = []
    for _ in range(rng.randint(0, 6)):
        h = F(rng.randint(1, 59), rng.choice([6, 10, 12, 15, 30]))
        if h < F(n + 1, 2):
            vals += [centre - h, centre + h]
    vals += [centre] * rng.randint(0, 2)
    return Spectrum(vals or [centre], n)


def brute_gamma(s1, s2):
    vals = [a + b + 1 for a in s1.values for b in s2.values]
    c = F(s1.n + s2.n, 2)
    return -sum((v - c) ** 2 for v in vals) / 4 + len(vals) * (max(vals) - min(vals)) / 48


def test_criterion_3_bilinearity():
    rng = random.Random(2024)
    bad = 0
    for _ in range(500):
        s1, s2 = random_symmetric(rng), random_symmetric(rng)
        rep = gamma_join_check(s1, s2)
        oracle = brute_gamma(s1, s2)
        if not (rep.equal and rep.lhs == oracle and gamma_from_spectrum(join(s1, s2)) == oracle):
            bad += 1
    report(3, bad == 0, f"500 random pairs, {bad} failures (exact)")


# -- 4 -----------------------------------------------------------------------


def test_criterion_4_families():
    zeros, negative, count = [], [], 0
    for p in range(2, 13):
        for q in range(2, 13):
            for r in range(2, 13):
                if F(1, p) + F(1, q) + F(1, r) > 1:
                    continue
                g = gamma_tpqr(p, q, r)
                count += 1
                if g == 0:
                    zeros.append(tuple(sorted((p, q, r))))
                elif g < 0:
                    negative.append((p, q, r))
    bimodal_bad = [(s.name, p) for s in BimodalSeries for p in range(1, 101)
                   if not gamma_bimodal(s, p) > 0]
    ok = set(zeros) == {(3, 3, 3), (2, 4, 4), (2, 3, 6)} and not negative and not bimodal_bad
    report(4, ok, f"T_pqr: {count} triples, zero set {sorted(set(zeros))}; "
                  f"bimodal: 8 series x 100, {len(bimodal_bad)} non-positive")


# -- 5 -----------------------------------------------------------------------


def test_criterion_5_socle():
    bad = []
    for n in range(2, 9):
        for m in (2, 3, 4):
            model = build_model(n, m, "test_metric")
            H = list(symbolic.socle_field(model))
            t2 = symbolic.coordinates(model)[1]
            det = symbolic.det_socle_operator(model)
            if H != [0, 2] + [1] * (m - 2) or sp.expand(det + 4 * t2 ** (n - 2)) != 0:
                bad.append(("test", n, m))
        slope = symbolic.slope_fit_order(build_model(n, 2, "flat_potential"))
        if abs(slope - (n - 2)) >= 0.01:
            bad.append(("flat", n, slope))
    report(5, not bad, f"n = 2..8: socle field and det(H_op) = -4 t2^(n-2) exact, "
                       f"flat slope within 0.01; failures {bad}")


# -- 6 -----------------------------------------------------------------------


def test_criterion_6_caustic_residue():
    start = time.perf_counter()
    worst, bad = 0.0, []
    for n in (3, 4, 5, 6):
        for m in (2, 3):
            rep = caustic_residue(build_model(n, m))
            dev = abs(rep.tau_residue - float(F(-(n - 2) ** 2, 16 * n)))
            worst = max(worst, dev)
            if dev >= 1e-6:
                bad.append((n, m))
    elapsed = time.perf_counter() - start
    report(6, not bad and elapsed < 30,
           f"max deviation {worst:.2e} (tol 1e-6), {elapsed:.2f}s (limit 30s)")


# -- 7 -----------------------------------------------------------------------


def test_criterion_7_g_delta():
    worst, bad = 0.0, []
    for n in (3, 4, 5, 6):
        value = g_function_delta(build_model(n, 2), [[0, 1], [0, np.e]]).value
        dev = abs(value - float(-F((2 - n) * (3 - n), 24 * n)))
        worst = max(worst, dev)
        if dev >= 1e-8:
            bad.append(n)
    n3 = abs(g_function_delta(build_model(3, 2), [[0, 1], [0, np.e]]).value)
    report(7, not bad and n3 < 1e-8, f"max deviation {worst:.2e} (tol 1e-8), |dG(n=3)| = {n3:.1e}")


# -- 8 -----------------------------------------------------------------------


def test_criterion_8_euler_g():
    worst, bad = 0.0, []
    for n in range(2, 7):
        rep = euler_gamma_check(build_model(n, 2, "flat_potential"))
        closed = closed_form_euler_gamma(n)
        dev = max(abs(rep.EG - float(closed)), abs(rep.EG - float(rep.gamma_formula)))
        worst = max(worst, dev)
        if not (rep.match and dev < 1e-8 and rep.gamma_formula == closed):
            bad.append(n)
    report(8, not bad, f"n = 2..6, max deviation {worst:.2e} (tol 1e-8)")


# -- 9 -----------------------------------------------------------------------


def test_criterion_9_axioms():
    worst = {"multiplication": 0.0, "integrability": 0.0, "euler": 0.0,
             "darboux_egoroff": 0.0, "closedness": 0.0}
    for n, m in [(2, 2), (3, 2), (4, 3), (5, 3), (6, 4)]:
        model = build_model(n, m)
        pts = checks.random_points(model, 100, seed=n * 10 + m)
        for t in pts:
            worst["multiplication"] = max(worst["multiplication"],
                                          *checks.multiplication_residuals(model, t).values())
        for t in pts[:5]:
            worst["integrability"] = max(worst["integrability"],
                                         checks.integrability_residual(model, t))
            worst["euler"] = max(worst["euler"], checks.euler_residual(model, t))
        if m >= 3:
            worst["darboux_egoroff"] = max(worst["darboux_egoroff"],
                                           darboux_egoroff_residual(model, pts[0]))
        e = np.eye(m)
        worst["closedness"] = max(worst["closedness"],
                                  abs(checks.loop_integral(model, pts[1], e[1], 1j * e[1])),
                                  abs(checks.loop_integral(model, pts[1], e[0], e[1])))
    limits = {"multiplication": 1e-12, "integrability": 1e-8, "euler": 1e-8,
              "darboux_egoroff": 1e-8, "closedness": 1e-7}
    ok = all(worst[k] < limits[k] for k in limits)
    report(9, ok, ", ".join(f"{k} {worst[k]:.1e}<{limits[k]:.0e}" for k in limits))
