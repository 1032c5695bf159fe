from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from spectral_variance.errors import BadParams, OutOfRange
from spectral_variance.families import (BimodalSeries, gamma_bimodal, gamma_tpqr,
                                        scan_bimodal, scan_conjecture, scan_tpqr)


def test_tpqr_examples():
    assert gamma_tpqr(3, 3, 3) == 0
    assert gamma_tpqr(2, 3, 7) == F(1, 1008)
    with pytest.raises(OutOfRange):
        gamma_tpqr(2, 3, 5)
    with pytest.raises(OutOfRange):
        gamma_tpqr(1, 7, 7)


def test_bimodal_examples():
    assert gamma_bimodal(BimodalSeries.E3p, 1) == F(1, 480)
    assert gamma_bimodal(BimodalSeries.U1p, 1) == F(11, 2160)
    with pytest.raises(OutOfRange):
        gamma_bimodal(BimodalSeries.Z1p, 0)


def test_kappa_table():
    kappas = {s.name: s.kappa for s in BimodalSeries}
    assert kappas == {"E3p": 9, "Z1p": 7, "Q2p": 6, "W1p": 6, "S1p": 5,
                      "W1p_sharp": 6, "S1p_sharp": 5, "U1p": F(9, 2)}
    assert [s.name for s in BimodalSeries if s.second_kind] == ["W1p_sharp", "S1p_sharp", "U1p"]
    assert BimodalSeries.parse("Q2p") is BimodalSeries.Q2p
    with pytest.raises(BadParams):
        BimodalSeries.parse("X9")


def test_scan_tpqr_zero_locus():
    # with bounds p, q, r <= 4 only two solutions of 1/p + 1/q + 1/r = 1 fit
    assert scan_conjecture("tpqr", [4]).zeros == [(2, 4, 4), (3, 3, 3)]
    rep = scan_conjecture("tpqr", [6])
    assert rep.zeros == [(2, 3, 6), (2, 4, 4), (3, 3, 3)]
    assert rep.minimum == 0 and rep.all_nonneg


def test_scan_bimodal_positive():
    rep = scan_conjecture("bimodal", [10])
    assert len(rep.rows) == 80
    assert rep.all_nonneg and not rep.zeros and rep.minimum > 0


def test_scan_empty_and_unknown():
    rep = scan_conjecture("tpqr", [])
    assert rep.rows == () and rep.minimum is None
    with pytest.raises(BadParams):
        scan_conjecture("cusp", [3])


def test_scan_rows_in_lexicographic_order():
    rows = [r.parameters for r in scan_tpqr(8).rows]
    assert rows == sorted(rows)
    assert all(p <= q <= r for p, q, r in rows)


def test_scan_csv():
    text = scan_tpqr(4).to_csv().splitlines()
    assert text[0] == "parameters,gamma,nonneg,is_zero"
    assert "2 4 4,0,true,true" in text


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 60), st.integers(2, 60), st.integers(2, 60))
def test_tpqr_sign(p, q, r):
    s = F(1, p) + F(1, q) + F(1, r)
    if s > 1:
        with pytest.raises(OutOfRange):
            gamma_tpqr(p, q, r)
    else:
        g = gamma_tpqr(p, q, r)
        assert g >= 0 and (g == 0) == (s == 1)
        assert gamma_tpqr(r, p, q) == g


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(list(BimodalSeries)), st.integers(1, 10_000))
def test_bimodal_positive(series, p):
    g = gamma_bimodal(series, p)
    assert isinstance(g, F) and g > 0
