"""Thom-Sebastiani sums of spectra and Brieskorn-Pham singularities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BadExponent
from .spectrum_core import Spectrum, gamma_from_spectrum

__all__ = ["join", "suspend", "one_variable_spectrum", "brieskorn_pham", "gamma_join_check", "JoinReport"]


def join(s1: Spectrum, s2: Spectrum) -> Spectrum:
    """Spectrum of ``f(x) + g(y)``: all sums ``alpha + beta + 1``.

    Works on any symmetric multisets, realizable or not.
    """
    acc: dict[Fraction, int] = {}
    for a, ca in s1.multiplicities:
        a1 = a + 1
        for b, cb in s2.multiplicities:
            v = a1 + b
            acc[v] = acc.get(v, 0) + ca * cb
    return Spectrum.from_multiplicities(sorted(acc.items()), s1.n + s2.n + 1)


def suspend(s: Spectrum, times: int = 1) -> Spectrum:
    """Add ``times`` squares ``x**2`` in new variables."""
    return s.shifted(Fraction(times, 2), times)


def one_variable_spectrum(a: int) -> Spectrum:
    """Spectrum of ``x**a``: ``k/a - 1`` for ``k = 1..a-1``."""
    if int(a) != a or a < 2:
        raise BadExponent(f"exponent {a!r} must be an integer >= 2")
    return Spectrum.from_multiplicities(((Fraction(k, a) - 1, 1) for k in range(1, a)), 0)


def brieskorn_pham(exponents: Iterable[int]) -> Spectrum:
    """Spectrum of ``x_0**a_0 + ... + x_n**a_n`` as an iterated join."""
    exps = list(exponents)
    if not exps:
        raise BadExponent("need at least one exponent")
    parts = [one_variable_spectrum(a) for a in exps]
    out = parts[0]
    for p in parts[1:]:
        out = join(out, p)
    return out


@dataclass(frozen=True)
class JoinReport:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def gamma_join_check(s1: Spectrum, s2: Spectrum) -> JoinReport:
    """Compare ``gamma(s1 * s2)`` with ``mu1 gamma(s2) + mu2 gamma(s1)``."""
    lhs = gamma_from_spectrum(join(s1, s2))
    rhs = s1.mu * gamma_from_spectrum(s2) + s2.mu * gamma_from_spectrum(s1)
    return JoinReport(lhs, rhs)
