import itertools
import random
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import jacobi_spectrum_bp, symmetric_spectra
from spectral_variance.errors import BadExponent
from spectral_variance.joins import (brieskorn_pham, gamma_join_check, join,
                                     one_variable_spectrum, suspend)
from spectral_variance.spectrum_core import (Spectrum, WeightSystem, gamma_from_spectrum,
                                             spectrum_from_weights)


def weights(*ws):
    return spectrum_from_weights(WeightSystem([F(w) for w in ws]))


def brute_join(s1, s2):
    """Reference join over the full mu1 * mu2 multiset."""
    return Counter(a + b + 1 for a in s1.values for b in s2.values)


def brute_gamma(values, n):
    c = F(n - 1, 2)
    return -sum((a - c) ** 2 for a in values) / 4 + len(values) * (max(values) - min(values)) / 48


# -- examples ----------------------------------------------------------------


def test_join_a2_a2():
    s = one_variable_spectrum(3)
    j = join(s, s)
    assert j.values == (F(-1, 3), F(0), F(0), F(1, 3)) and j.n == 1
    assert j == weights("1/3", "1/3")


def test_join_with_a1_is_suspension():
    s = weights("1/3", "1/5")
    a1 = Spectrum([F(-1, 2)], 0)
    j = join(s, a1)
    assert j.values == tuple(v + F(1, 2) for v in s.values) and j.n == s.n + 1
    assert j == suspend(s)


def test_join_matches_weights():
    assert join(weights("1/3"), weights("1/5")) == weights("1/3", "1/5")


def test_bp_examples():
    assert brieskorn_pham([2]).values == (F(-1, 2),)
    e8 = brieskorn_pham([3, 5])
    assert e8.mu == 8 and e8.first == F(-7, 15)
    assert list(brieskorn_pham([3, 3, 3]).values) == [F(0)] + [F(1, 3)] * 3 + [F(2, 3)] * 3 + [F(1)]


def test_bp_bad_exponent():
    with pytest.raises(BadExponent):
        brieskorn_pham([3, 1])
    with pytest.raises(BadExponent):
        brieskorn_pham([])


def test_gamma_join_examples():
    rep = gamma_join_check(weights("1/3"), weights("1/4", "1/5"))
    assert rep.lhs == rep.rhs == 0 and rep.equal
    s2 = Spectrum([F(-1, 2), F(-1, 6), F(1, 6), F(1, 2)], 1)
    rep = gamma_join_check(Spectrum([F(-1, 2)], 0), s2)
    assert rep.equal and rep.lhs == gamma_from_spectrum(s2)


# -- two code paths for Brieskorn-Pham ---------------------------------------


@pytest.mark.parametrize("exps", [e for e in itertools.combinations_with_replacement(range(2, 8), 3)])
def test_bp_equals_weights_and_jacobi(exps):
    s = brieskorn_pham(exps)
    assert s == spectrum_from_weights(WeightSystem([F(1, a) for a in exps]))
    assert list(s.values) == jacobi_spectrum_bp(exps)
    assert gamma_from_spectrum(s) == 0


# -- properties --------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(symmetric_spectra(), symmetric_spectra())
def test_join_matches_brute_force(s1, s2):
    j = join(s1, s2)
    assert Counter(j.values) == brute_join(s1, s2)
    assert j.n == s1.n + s2.n + 1 and j.mu == s1.mu * s2.mu
    c = F(j.n - 1, 2)
    assert all(a + b == 2 * c for a, b in zip(j.values, reversed(j.values)))


@settings(max_examples=300, deadline=None)
@given(symmetric_spectra(), symmetric_spectra())
def test_gamma_bilinear(s1, s2):
    rep = gamma_join_check(s1, s2)
    assert rep.equal
    assert rep.lhs == brute_gamma(list(brute_join(s1, s2).elements()), s1.n + s2.n + 1)


@settings(max_examples=100, deadline=None)
@given(symmetric_spectra(max_half=3, max_n=1), symmetric_spectra(max_half=3, max_n=1),
       symmetric_spectra(max_half=3, max_n=1))
def test_join_commutative_associative(a, b, c):
    assert join(a, b) == join(b, a)
    assert join(join(a, b), c) == join(a, join(b, c))


def test_suspension_preserves_gamma():
    rng = random.Random(3)
    for _ in range(20):
        exps = [rng.randint(2, 9) for _ in range(rng.randint(1, 3))]
        s = brieskorn_pham(exps)
        assert gamma_from_spectrum(suspend(s, 2)) == gamma_from_spectrum(s)
