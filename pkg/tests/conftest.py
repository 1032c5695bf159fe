"""Shared corpora and independent oracles.

The oracles here never call the package's division code: spectra are
recomputed either from an explicit monomial basis of the Jacobi algebra
(Brieskorn-Pham case) or from a truncated power-series expansion of the
Poincare series (general weights).
"""

import itertools
import random
from fractions import Fraction
from math import lcm

import numpy as np
import pytest
from hypothesis import strategies as st

from spectral_variance.spectrum_core import Spectrum


def bp_corpus(max_exp=12, max_vars=4):
    """All exponent tuples ``2 <= a_0 <= ... <= a_n <= max_exp``."""
    out = []
    for k in range(1, max_vars + 1):
        out.extend(itertools.combinations_with_replacement(range(2, max_exp + 1), k))
    return out


def chain_weights(exps):
    """Weights of ``x_1**a_1 x_2 + ... + x_{k-1}**a_{k-1} x_k + x_k**a_k``."""
    w = [Fraction(0)] * len(exps)
    w[-1] = Fraction(1, exps[-1])
    for i in range(len(exps) - 2, -1, -1):
        w[i] = (1 - w[i + 1]) / exps[i]
    return w


def loop_weights(exps):
    """Weights of ``x_1**a_1 x_2 + ... + x_k**a_k x_1`` (``k >= 2``)."""
    k = len(exps)
    # a_i w_i + w_{i+1} = 1, solved by exact Gauss-Jordan elimination
    A = [[Fraction(0)] * k for _ in range(k)]
    for i, a in enumerate(exps):
        A[i][i] = Fraction(a)
        A[i][(i + 1) % k] += 1
    b = [Fraction(1)] * k
    for c in range(k):
        p = next(r for r in range(c, k) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        b[c], b[p] = b[p], b[c]
        for r in range(k):
            if r != c and A[r][c] != 0:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
                b[r] -= f * b[c]
    return [b[i] / A[i][i] for i in range(k)]


def random_admissible_weights(count, seed=1, max_vars=4, max_exp=6):
    """Weight systems of random sums of Fermat, chain and loop atoms.

    These are weights of isolated quasihomogeneous singularities, so they
    are admissible whatever the division code says.
    """
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        nvars = rng.randint(2, max_vars)
        weights = []
        while len(weights) < nvars:
            left = nvars - len(weights)
            kind = rng.choice(["fermat", "chain", "loop"] if left >= 2 else ["fermat"])
            size = 1 if kind == "fermat" else rng.randint(2, left)
            exps = [rng.randint(2, max_exp) for _ in range(size)]
            if kind == "fermat":
                weights.append(Fraction(1, exps[0]))
            elif kind == "chain":
                weights.extend(chain_weights(exps))
            else:
                weights.extend(loop_weights(exps))
        key = tuple(sorted(weights))
        # the purely Fermat case is covered by the Brieskorn-Pham corpus
        if key in seen or all(w.numerator == 1 for w in key):
            continue
        seen.add(key)
        out.append(key)
    return out


def jacobi_spectrum_bp(exps):
    """Spectrum of ``sum x_i**a_i`` from the monomial basis of its Jacobi
    algebra: ``x**k`` with ``0 <= k_i <= a_i - 2`` has spectral number
    ``sum (k_i + 1)/a_i - 1``."""
    vals = []
    for ks in itertools.product(*(range(a - 1) for a in exps)):
        vals.append(sum(Fraction(k + 1, a) for k, a in zip(ks, exps)) - 1)
    return sorted(vals)


def series_spectrum(weights):
    """Spectrum by expanding ``prod (T**w - T) * sum_k T**(k w)`` as a power
    series in ``S = T**(1/N)`` and truncating.

    Returns ``(values, tail_is_zero)``; the tail check looks one full unit of
    ``T`` beyond where the polynomial must end.
    """
    N = lcm(*(w.denominator for w in weights))
    n_plus_1 = len(weights)
    bound = (n_plus_1 + 1) * N
    acc = np.zeros(bound, dtype=object)
    acc[0] = 1
    for w in weights:
        k = int(w * N)
        factor = np.zeros(bound, dtype=object)
        # (S**k - S**N) * sum_j S**(j k), truncated
        geo = np.zeros(bound, dtype=object)
        geo[::k] = 1
        factor[k:] += geo[: bound - k]
        factor[N:] -= geo[: bound - N]
        acc = np.convolve(acc, factor)[:bound]
    top = n_plus_1 * N
    values = []
    for e in range(top):
        c = int(acc[e])
        if c < 0:
            return None, False
        values.extend([Fraction(e, N) - 1] * c)
    return values, all(int(c) == 0 for c in acc[top:])


@st.composite
def symmetric_spectra(draw, max_half=5, max_n=3):
    """Synthetic spectra: values ``c +- h`` around ``c = (n-1)/2`` with
    ``0 < h < (n+1)/2``, plus copies of ``c``.  Not necessarily realizable."""
    n = draw(st.integers(0, max_n))
    centre = Fraction(n - 1, 2)
    half = draw(st.lists(st.builds(Fraction, st.integers(1, 59), st.sampled_from([6, 10, 15, 30])),
                         max_size=max_half))
    half = [h for h in half if h < Fraction(n + 1, 2)]
    mid = draw(st.integers(0, 2))
    vals = [centre - h for h in half] + [centre + h for h in half] + [centre] * mid
    return Spectrum(vals or [centre], n)


@pytest.fixture(scope="session")
def bp_tuples():
    return bp_corpus()


@pytest.fixture(scope="session")
def random_weight_systems():
    return random_admissible_weights(120)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
