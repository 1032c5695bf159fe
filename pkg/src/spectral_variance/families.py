"""Closed-form gamma for cusp singularities and the eight bimodal series.

Everything is exact.  The scan helpers sweep parameter boxes and report the
minimum and the zero locus; they explore the conjecture ``gamma >= 0``, they
do not prove it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BadParams, OutOfRange

__all__ = [
    "BimodalSeries",
    "gamma_tpqr",
    "gamma_bimodal",
    "ScanRow",
    "ScanReport",
    "scan_conjecture",
    "scan_tpqr",
    "scan_bimodal",
]


class BimodalSeries(Enum):
    """The eight bimodal series with their constant ``kappa``."""

    E3p = ("E3p", Fraction(9), False)
    Z1p = ("Z1p", Fraction(7), False)
    Q2p = ("Q2p", Fraction(6), False)
    W1p = ("W1p", Fraction(6), False)
    S1p = ("S1p", Fraction(5), False)
    W1p_sharp = ("W1p_sharp", Fraction(6), True)
    S1p_sharp = ("S1p_sharp", Fraction(5), True)
    U1p = ("U1p", Fraction(9, 2), True)

    def __init__(self, label: str, kappa: Fraction, second_kind: bool):
        self.label = label
        self.kappa = kappa
        # sharp and U series use the "+ 1/(p + 2 kappa)" formula
        self.second_kind = second_kind

    @classmethod
    def parse(cls, name: str) -> "BimodalSeries":
        try:
            return cls[name]
        except KeyError:
            raise BadParams(f"unknown bimodal series {name!r}") from None


def gamma_tpqr(p: int, q: int, r: int) -> Fraction:
    """``(1 - 1/p - 1/q - 1/r) / 24`` for ``T_pqr``.

    Defined for ``p, q, r >= 2`` with ``1/p + 1/q + 1/r <= 1``.
    """
    for x in (p, q, r):
        if int(x) != x or x < 2:
            raise OutOfRange(f"T_pqr needs integer parameters >= 2, got {(p, q, r)}")
    s = Fraction(1, p) + Fraction(1, q) + Fraction(1, r)
    if s > 1:
        raise OutOfRange(f"1/p + 1/q + 1/r = {s} > 1 for {(p, q, r)}")
    return (1 - s) / 24


def gamma_bimodal(series: BimodalSeries, p: int) -> Fraction:
    if int(p) != p or p < 1:
        raise OutOfRange(f"bimodal index p must be a positive integer, got {p!r}")
    k = series.kappa
    base = Fraction(p) / (48 * k)
    if series.second_kind:
        return base * (1 + 1 / (p + 2 * k))
    return base * (1 - 1 / (p + k))


@dataclass(frozen=True)
class ScanRow:
    parameters: tuple
    gamma: Fraction

    @property
    def nonneg(self) -> bool:
        return self.gamma >= 0

    @property
    def is_zero(self) -> bool:
        return self.gamma == 0

    def as_dict(self) -> dict:
        return {
            "parameters": [str(x) for x in self.parameters],
            "gamma": str(self.gamma),
            "nonneg": self.nonneg,
            "is_zero": self.is_zero,
        }


@dataclass(frozen=True)
class ScanReport:
    family: str
    rows: tuple

    @property
    def minimum(self) -> Optional[Fraction]:
        return min((r.gamma for r in self.rows), default=None)

    @property
    def zeros(self) -> list:
        return [r.parameters for r in self.rows if r.is_zero]

    @property
    def all_nonneg(self) -> bool:
        return all(r.nonneg for r in self.rows)

    def as_dict(self) -> dict:
        m = self.minimum
        return {
            "family": self.family,
            "count": len(self.rows),
            "minimum": None if m is None else str(m),
            "all_nonneg": self.all_nonneg,
            "zeros": [[str(x) for x in z] for z in self.zeros],
            "rows": [r.as_dict() for r in self.rows],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["parameters", "gamma", "nonneg", "is_zero"])
        for r in self.rows:
            w.writerow([" ".join(str(x) for x in r.parameters), str(r.gamma),
                        str(r.nonneg).lower(), str(r.is_zero).lower()])
        return buf.getvalue()


def scan_tpqr(max_param: int, min_param: int = 2) -> ScanReport:
    """All ``p <= q <= r`` in ``[min_param, max_param]`` inside the domain.

    Triples with ``1/p + 1/q + 1/r > 1`` are skipped (they are the simple
    singularities, where the formula does not apply).
    """
    rows = []
    lo = max(2, min_param)
    for p in range(lo, max_param + 1):
        for q in range(p, max_param + 1):
            for r in range(q, max_param + 1):
                if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1:
                    continue
                rows.append(ScanRow((p, q, r), gamma_tpqr(p, q, r)))
    return ScanReport("tpqr", tuple(rows))


def scan_bimodal(max_p: int, series: Optional[Sequence[BimodalSeries]] = None,
                 min_p: int = 1) -> ScanReport:
    chosen = list(BimodalSeries) if series is None else list(series)
    rows = [
        ScanRow((s.label, p), gamma_bimodal(s, p))
        for s in chosen
        for p in range(max(1, min_p), max_p + 1)
    ]
    return ScanReport("bimodal", tuple(rows))


def scan_conjecture(family: str, bounds: Optional[Iterable[int]] = None, **kwargs) -> ScanReport:
    """Dispatch to :func:`scan_tpqr` or :func:`scan_bimodal`.

    ``bounds`` is ``(lo, hi)`` or ``(hi,)``; empty or ``None`` yields an
    empty report.
    """
    b = list(bounds or ())
    if family not in ("tpqr", "bimodal"):
        raise BadParams(f"unknown family {family!r}")
    if not b:
        return ScanReport(family, ())
    lo, hi = (b[0], b[1]) if len(b) > 1 else (None, b[0])
    if family == "tpqr":
        return scan_tpqr(hi, 2 if lo is None else lo)
    return scan_bimodal(hi, min_p=1 if lo is None else lo, **kwargs)
