"""Polynomials in one variable with rational exponents and integer coefficients.

Scalars are :class:`fractions.Fraction` throughout; nothing here rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotDivisible

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "QPoly",
    "qpoly_mul",
    "qpoly_exact_div",
    "parse_rational",
    "format_rational",
]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal string into an exact Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(value: Number) -> str:
    return str(Fraction(value))


class QPoly:
    """Finite sum ``sum c_e T**e`` with rational ``e`` and nonzero integer ``c``.

    Instances are immutable and hashable.  Internally the exponents are held
    as integers ``k`` over one shared denominator ``N`` (the least common
    denominator of the exponents), so ``T**e == S**k`` with ``S = T**(1/N)``.
    Terms iterate in ascending exponent order.
    """

    __slots__ = ("_denom", "_scaled", "_hash")

    def __init__(self, terms: Union[Mapping[Number, int], Iterable[tuple]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, int] = {}
        for exp, coeff in items:
            if int(coeff) != coeff:
                raise TypeError(f"coefficient {coeff!r} is not an integer")
            e = Fraction(exp)
            acc[e] = acc.get(e, 0) + int(coeff)
        acc = {e: c for e, c in acc.items() if c}
        n = lcm(1, *(e.denominator for e in acc))
        self._set({(e * n).numerator: c for e, c in acc.items()}, n)

    def _set(self, scaled: Mapping[int, int], denom: int) -> None:
        ks = [k for k, c in scaled.items() if c]
        g = gcd(denom, *ks)
        self._denom = denom // g
        self._scaled = tuple(sorted((k // g, scaled[k]) for k in ks))
        self._hash = None

    @classmethod
    def from_scaled(cls, scaled: Mapping[int, int], denom: int) -> "QPoly":
        """Build from integer exponents of ``S = T**(1/denom)``."""
        obj = cls.__new__(cls)
        obj._set(scaled, denom)
        return obj

    @classmethod
    def monomial(cls, exp: Number = 0, coeff: int = 1) -> "QPoly":
        return cls({exp: coeff})

    # -- container protocol -------------------------------------------------

    @property
    def terms(self) -> tuple:
        """Tuple of ``(exponent, coefficient)`` pairs, ascending exponent."""
        n = self._denom
        return tuple((Fraction(k, n), c) for k, c in self._scaled)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._scaled)

    def __bool__(self) -> bool:
        return bool(self._scaled)

    def coefficient(self, exp: Number) -> int:
        k = Fraction(exp) * self._denom
        if k.denominator != 1:
            return 0
        return dict(self._scaled).get(k.numerator, 0)

    def exponents(self) -> list[Fraction]:
        return [e for e, _ in self.terms]

    def degree(self) -> Fraction:
        if not self._scaled:
            raise ValueError("zero polynomial has no degree")
        return Fraction(self._scaled[-1][0], self._denom)

    def mass(self) -> int:
        """Sum of coefficients, i.e. the value at ``T = 1``."""
        return sum(c for _, c in self._scaled)

    def common_denominator(self) -> int:
        return self._denom

    @property
    def scaled_terms(self) -> tuple:
        """``(k, c)`` pairs with exponent ``k / common_denominator()``."""
        return self._scaled

    def scaled(self, denom: int) -> dict[int, int]:
        """Integer exponents after substituting ``T = S**denom``."""
        f, r = divmod(denom, self._denom)
        if r:
            raise ValueError(f"exponents are not multiples of 1/{denom}")
        return {k * f: c for k, c in self._scaled}

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QPoly.monomial(0, other)
        if isinstance(other, QPoly):
            return self._denom == other._denom and self._scaled == other._scaled
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._denom, self._scaled))
        return self._hash

    def __neg__(self) -> "QPoly":
        return QPoly.from_scaled({k: -c for k, c in self._scaled}, self._denom)

    def __add__(self, other: "QPoly") -> "QPoly":
        if isinstance(other, int):
            other = QPoly.monomial(0, other)
        if not isinstance(other, QPoly):
            return NotImplemented
        n = lcm(self._denom, other._denom)
        out = self.scaled(n)
        for k, c in other.scaled(n).items():
            out[k] = out.get(k, 0) + c
        return QPoly.from_scaled(out, n)

    __radd__ = __add__

    def __sub__(self, other: "QPoly") -> "QPoly":
        if isinstance(other, int):
            other = QPoly.monomial(0, other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "QPoly":
        return QPoly.monomial(0, other) - self

    def __mul__(self, other: "QPoly") -> "QPoly":
        if isinstance(other, int):
            other = QPoly.monomial(0, other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return qpoly_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: "QPoly") -> "QPoly":
        return qpoly_exact_div(self, other)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[list[str]]:
        return [[str(e), str(c)] for e, c in self.terms]

    @classmethod
    def from_json(cls, data: Iterable) -> "QPoly":
        return cls((Fraction(e), int(c)) for e, c in data)

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        if not self._scaled:
            return "0"
        out = ""
        for i, (e, c) in enumerate(self.terms):
            if e == 0:
                mono = str(abs(c))
            else:
                base = "T" if e == 1 else f"T^({e})"
                mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
            if i == 0:
                out = ("-" if c < 0 else "") + mono
            else:
                out += (" - " if c < 0 else " + ") + mono
        return out


T = QPoly.monomial(1)
ONE = QPoly.monomial(0)


def qpoly_mul(a: QPoly, b: QPoly) -> QPoly:
    """Distributive product; exponents add exactly."""
    if not a or not b:
        return QPoly()
    n = lcm(a.common_denominator(), b.common_denominator())
    sa, sb = a.scaled(n), b.scaled(n)
    out: dict[int, int] = {}
    for ka, ca in sa.items():
        for kb, cb in sb.items():
            k = ka + kb
            out[k] = out.get(k, 0) + ca * cb
    return QPoly.from_scaled(out, n)


def _long_division(num: dict[int, int], den: dict[int, int]) -> tuple[dict, dict]:
    # Sparse division by leading term; exponents may be any integers.
    dd = max(den)
    lead = den[dd]
    rest = [(k - dd, c) for k, c in den.items() if k != dd]
    rem = dict(num)
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top < dd:
            break
        c = rem.pop(top)
        q, r = divmod(c, lead)
        if r:
            rem[top] = c
            break
        shift = top
        quot[shift - dd] = q
        for k, ck in rest:
            key = shift + k
            v = rem.get(key, 0) - q * ck
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return quot, rem


def _divide_binomial(num: dict[int, int], step: int, shift: int, sign: int) -> dict[int, int]:
    # Quotient of num by S**shift * (S**step + sign) when it divides exactly.
    # Runs along each residue class mod step, so cost is linear in the output.
    q: dict[int, int] = {}
    classes: dict[int, list[int]] = {}
    for k in num:
        classes.setdefault(k % step, []).append(k)
    for keys in classes.values():
        keys.sort(reverse=True)
        lo = keys[-1]
        carry = 0
        k = keys[0]
        i = 0
        while k >= lo:
            c = num[k] if i < len(keys) and keys[i] == k else 0
            if c:
                i += 1
            c += carry
            if k - step < lo:
                # lowest slot of this class must be cancelled exactly
                if c:
                    raise NotDivisible("nonzero remainder in exact division")
                break
            if c:
                q[k - step - shift] = c
            carry = -sign * c
            k -= step
    return q


def qpoly_exact_div(num: QPoly, den: QPoly) -> QPoly:
    """Return ``q`` with ``q * den == num`` or raise :class:`NotDivisible`.

    Exponents of both operands are rescaled by their least common
    denominator ``N`` so that the division is ordinary long division over
    the integers in ``S = T**(1/N)``.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return QPoly()
    n = lcm(num.common_denominator(), den.common_denominator())
    sn, sd = num.scaled(n), den.scaled(n)
    if len(sd) == 2:
        (k0, c0), (k1, c1) = sorted(sd.items())
        if c1 == 1 and abs(c0) == 1:
            return QPoly.from_scaled(_divide_binomial(sn, k1 - k0, k0, c0), n)
    quot, rem = _long_division(sn, sd)
    if rem:
        raise NotDivisible(f"{num} is not divisible by {den}")
    return QPoly.from_scaled(quot, n)
