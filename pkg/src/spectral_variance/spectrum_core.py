"""Spectra of quasihomogeneous singularities and the variance identity.

A weight system ``w_0..w_n`` (each in ``(0, 1/2]``) determines the spectrum
through the expansion

    prod_i (T - T**w_i) / (T**w_i - 1) = sum_k T**(alpha_k + 1),

whose coefficients are the multiplicities of the spectral numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from math import lcm
from typing import Iterable, Sequence

from .errors import InvalidSpectrum, InvalidWeights, NotDivisible, NotInteger
from .exact_arith import QPoly, parse_rational, qpoly_exact_div

HALF = Fraction(1, 2)

__all__ = [
    "WeightSystem",
    "Spectrum",
    "FrobeniusDegrees",
    "VarianceReport",
    "characteristic_product",
    "milnor_number",
    "spectrum_from_weights",
    "characteristic_function",
    "variance",
    "gamma_from_spectrum",
    "gamma_from_degrees",
    "verify_variance_identity",
    "frobenius_degrees",
    "spectrum_report",
]


def characteristic_product(weights: Iterable[Fraction]) -> QPoly:
    """Expand ``prod (T - T**w) / (T**w - 1)`` exactly.

    The numerator is divided by one binomial factor at a time.  Over the
    integers this succeeds for every factor iff the full quotient exists,
    so a :class:`NotDivisible` here means the weights are inadmissible.
    """
    weights = [Fraction(w) for w in weights]
    t = QPoly.monomial(1)
    num = QPoly.monomial(0)
    for w in weights:
        num = num * (t - QPoly.monomial(w))
    for w in weights:
        try:
            num = qpoly_exact_div(num, QPoly.monomial(w) - 1)
        except NotDivisible as exc:
            raise NotDivisible(
                f"weights {[str(v) for v in weights]} give no finite spectrum"
            ) from exc
    return num


@dataclass(frozen=True)
class WeightSystem:
    """Weights of a quasihomogeneous polynomial of degree 1.

    Weights are sorted ascending at construction; admissibility (exact
    divisibility of the characteristic product) is checked eagerly.
    """

    weights: tuple
    product: QPoly = field(init=False, repr=False, compare=False)

    def __init__(self, weights: Iterable):
        ws = tuple(sorted(parse_rational(w) for w in weights))
        if not ws:
            raise InvalidWeights("need at least one weight")
        for w in ws:
            if not 0 < w <= HALF:
                raise InvalidWeights(f"weight {w} outside (0, 1/2]")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "product", characteristic_product(ws))

    @classmethod
    def parse(cls, text: str) -> "WeightSystem":
        """Parse a comma-separated list such as ``"1/3, 1/5"``."""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            return cls(parts)
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, InvalidWeights):
                raise
            raise InvalidWeights(f"cannot parse weights {text!r}: {exc}") from exc

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    def __len__(self) -> int:
        return len(self.weights)


class Spectrum:
    """Ascending multiset of spectral numbers with ambient dimension ``n``.

    Enforces ``-1 < alpha_1``, ``alpha_mu < n`` and the symmetry
    ``alpha_i + alpha_{mu+1-i} = n - 1``.
    """

    __slots__ = ("values", "n", "_groups")

    def __init__(self, values: Iterable, n: int):
        vals = sorted(v if type(v) is Fraction else parse_rational(v) for v in values)
        groups = tuple((v, sum(1 for _ in g)) for v, g in groupby(vals))
        self._init(tuple(vals), groups, n)

    def _init(self, values: tuple, groups: tuple, n: int) -> None:
        self.values = values
        self.n = int(n)
        self._groups = groups
        self._validate()

    @classmethod
    def from_multiplicities(cls, pairs: Iterable[tuple], n: int) -> "Spectrum":
        """Build from strictly ascending ``(value, multiplicity)`` pairs."""
        groups = []
        vals: list = []
        for v, c in pairs:
            v = v if type(v) is Fraction else parse_rational(v)
            c = int(c)
            if c <= 0:
                raise InvalidSpectrum(f"multiplicity {c} of {v} is not positive")
            groups.append((v, c))
            vals.extend([v] * c)
        obj = cls.__new__(cls)
        obj._init(tuple(vals), tuple(groups), n)
        return obj

    def _validate(self) -> None:
        if not self.values:
            raise InvalidSpectrum("spectrum must be nonempty")
        if any(a[0] >= b[0] for a, b in zip(self._groups, self._groups[1:])):
            raise InvalidSpectrum("values not sorted ascending")
        lo, hi = self.values[0], self.values[-1]
        if not (-1 < lo and hi < self.n):
            raise InvalidSpectrum(f"values must lie in (-1, {self.n})")
        centre2 = self.n - 1
        for (a, ca), (b, cb) in zip(self._groups, reversed(self._groups)):
            if a + b != centre2 or ca != cb:
                raise InvalidSpectrum(f"not symmetric about {Fraction(centre2, 2)}")

    @property
    def mu(self) -> int:
        return len(self.values)

    @property
    def multiplicities(self) -> tuple:
        """Ascending ``(value, multiplicity)`` pairs."""
        return self._groups

    @property
    def centre(self) -> Fraction:
        return Fraction(self.n - 1, 2)

    @property
    def first(self) -> Fraction:
        return self.values[0]

    @property
    def last(self) -> Fraction:
        return self.values[-1]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.n == other.n and self._groups == other._groups

    def __hash__(self) -> int:
        return hash((self.n, self._groups))

    def __repr__(self) -> str:
        shown = ", ".join(
            str(v) if c == 1 else f"{v}^{c}" for v, c in self._groups[:12]
        )
        more = ", ..." if len(self._groups) > 12 else ""
        return f"Spectrum(n={self.n}, mu={self.mu}, [{shown}{more}])"

    def shifted(self, delta: Fraction, dn: int) -> "Spectrum":
        return Spectrum.from_multiplicities(
            ((v + delta, c) for v, c in self._groups), self.n + dn
        )


@dataclass(frozen=True)
class FrobeniusDegrees:
    """Eigenvalues ``d_1 >= ... >= d_mu`` of ``nabla E`` and the weight ``D``."""

    d: tuple
    D: Fraction

    def __post_init__(self):
        if not self.d or self.d[0] != 1:
            raise InvalidSpectrum("degrees must start with d_1 = 1")
        for a, b in zip(self.d, reversed(self.d)):
            if a + b != self.D:
                raise InvalidSpectrum("degrees not symmetric about D/2")


@dataclass(frozen=True)
class VarianceReport:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def milnor_number(ws: WeightSystem) -> int:
    """``prod (1/w - 1)``, cross-checked against the coefficient mass."""
    mu = Fraction(1)
    for w in ws.weights:
        mu *= (1 - w) / w
    if mu.denominator != 1:
        raise NotInteger(f"prod(1/w - 1) = {mu} is not an integer")
    mass = ws.product.mass()
    if mass != mu:
        raise NotInteger(f"coefficient mass {mass} differs from {mu}")
    return mu.numerator


def spectrum_from_weights(ws: WeightSystem) -> Spectrum:
    prod = ws.product
    denom = prod.common_denominator()
    pairs = []
    for k, c in prod.scaled_terms:
        if c < 0:
            raise NotDivisible(f"negative coefficient {c} in characteristic product")
        pairs.append((Fraction(k - denom, denom), c))
    return Spectrum.from_multiplicities(pairs, ws.n)


def characteristic_function(spec: Spectrum) -> tuple[QPoly, int]:
    """Return ``(sum T**(alpha + 1), mu)``; the characteristic function is
    the polynomial divided by ``mu``."""
    return QPoly((v + 1, c) for v, c in spec.multiplicities), spec.mu


def _centred_square_sum(spec: Spectrum) -> Fraction:
    # Sum of (alpha - (n-1)/2)**2 over a common denominator.
    L = lcm(2, *(v.denominator for v, _ in spec.multiplicities))
    c2 = (spec.n - 1) * (L // 2)
    total = 0
    for v, c in spec.multiplicities:
        x = v.numerator * (L // v.denominator) - c2
        total += c * x * x
    return Fraction(total, L * L)


def variance(spec: Spectrum) -> Fraction:
    return _centred_square_sum(spec) / spec.mu


def gamma_from_spectrum(spec: Spectrum) -> Fraction:
    """``-1/4 sum (alpha - (n-1)/2)**2 + mu (alpha_mu - alpha_1) / 48``."""
    return -_centred_square_sum(spec) / 4 + spec.mu * (spec.last - spec.first) / 48


def gamma_from_degrees(deg: FrobeniusDegrees) -> Fraction:
    """Same number written through the Frobenius degrees ``d_i`` and ``D``."""
    half = deg.D / 2
    return -sum((d - half) ** 2 for d in deg.d) / 4 + len(deg.d) * (2 - deg.D) / 48


def verify_variance_identity(ws: WeightSystem) -> VarianceReport:
    spec = spectrum_from_weights(ws)
    return VarianceReport(variance(spec), (spec.last - spec.first) / 12)


def frobenius_degrees(spec: Spectrum) -> FrobeniusDegrees:
    a1 = spec.first
    d = tuple(1 + a1 - a for a in spec.values)
    return FrobeniusDegrees(d, 2 - (spec.last - a1))


def spectrum_report(ws: WeightSystem) -> dict:
    """JSON-ready summary; every rational is a ``"p/q"`` string."""
    spec = spectrum_from_weights(ws)
    var = variance(spec)
    rhs = (spec.last - spec.first) / 12
    return {
        "weights": [str(w) for w in ws.weights],
        "mu": milnor_number(ws),
        "n": ws.n,
        "spectrum": [str(v) for v in spec.values],
        "variance": str(var),
        "rhs": str(rhs),
        "gamma": str(gamma_from_spectrum(spec)),
        "theorem_1_1": var == rhs,
    }
