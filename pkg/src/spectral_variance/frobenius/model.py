"""The F-manifold ``I_2(n) x A_1^(m-2)`` on ``C^m`` with its metrics.

Coordinates ``t_1..t_m`` with coordinate fields ``delta_i``; the product is

    delta_1 o delta_2 = delta_2,   delta_2 o delta_2 = t_2**(n-2) delta_1,
    delta_i o delta_j = [i == j] delta_i   otherwise.

Indices in code are 0-based: ``t[1]`` is ``t_2``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..errors import BadParams, DegenerateMetric, OnCaustic

__all__ = [
    "MetricKind",
    "FrobeniusModel",
    "PointAlgebra",
    "build_model",
    "socle_from_dual_bases",
    "split_algebra",
]

CAUSTIC_TOL = 1e-10


class MetricKind(str, Enum):
    TEST = "test_metric"
    FLAT = "flat_potential"

    @classmethod
    def parse(cls, name: str) -> "MetricKind":
        aliases = {"test": cls.TEST, "flat": cls.FLAT}
        if name in aliases:
            return aliases[name]
        try:
            return cls(name)
        except ValueError:
            raise BadParams(f"unknown metric kind {name!r}") from None


@dataclass(frozen=True)
class PointAlgebra:
    """The tangent algebra at an off-caustic point and its idempotent frame.

    ``idempotents[i]`` holds the components of ``e_i`` in the ``delta``
    basis; ``u`` are canonical coordinates with ``u_1`` on the ``+`` branch
    of ``sqrt(t_2)`` (principal branch).
    """

    t: np.ndarray
    structure: np.ndarray
    idempotents: np.ndarray
    u: np.ndarray
    sqrt_t2: complex
    u_base: np.ndarray
    u_shift: np.ndarray

    def u_differences(self) -> np.ndarray:
        """``u_i - u_j`` without cancellation between ``u_1`` and ``u_2``."""
        b, s = self.u_base, self.u_shift
        return (b[:, None] - b[None, :]) + (s[:, None] - s[None, :])


def _as_point(t: Sequence, m: int) -> np.ndarray:
    arr = np.asarray(t, dtype=complex)
    if arr.shape != (m,):
        raise BadParams(f"point must have {m} coordinates, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class FrobeniusModel:
    n: int
    m: int
    metric_kind: MetricKind = MetricKind.FLAT
    caustic_tol: float = CAUSTIC_TOL

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise BadParams(f"I_2(n) needs an integer n >= 2, got {self.n!r}")
        if int(self.m) != self.m or self.m < 2:
            raise BadParams(f"dimension m must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "metric_kind", MetricKind.parse(self.metric_kind))

    # -- multiplication -----------------------------------------------------

    def point(self, t: Sequence) -> np.ndarray:
        return _as_point(t, self.m)

    def structure_constants(self, t: Sequence) -> np.ndarray:
        """``C[i, j, k]``: coefficient of ``delta_k`` in ``delta_i o delta_j``."""
        t = self.point(t)
        m = self.m
        C = np.zeros((m, m, m), dtype=complex)
        C[0, 0, 0] = 1
        C[0, 1, 1] = C[1, 0, 1] = 1
        C[1, 1, 0] = t[1] ** (self.n - 2)
        for i in range(2, m):
            C[i, i, i] = 1
        return C

    def structure_derivative(self, t: Sequence) -> np.ndarray:
        """``dC[l, i, j, k] = d C[i, j, k] / d t_l`` in closed form."""
        t = self.point(t)
        dC = np.zeros((self.m,) * 4, dtype=complex)
        if self.n > 2:
            dC[1, 1, 1, 0] = (self.n - 2) * t[1] ** (self.n - 3)
        return dC

    def unit(self) -> np.ndarray:
        e = np.ones(self.m, dtype=complex)
        e[1] = 0
        return e

    def multiply(self, t: Sequence, x: Sequence, y: Sequence) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure_constants(t))

    def multiplication_operator(self, t: Sequence, x: Sequence) -> np.ndarray:
        """Matrix of ``y -> x o y`` (columns indexed by ``y``)."""
        return np.einsum("i,ijk->kj", x, self.structure_constants(t))

    def on_caustic(self, t: Sequence) -> bool:
        return abs(self.point(t)[1]) < self.caustic_tol

    # -- Euler field --------------------------------------------------------

    def euler_coefficient(self) -> Fraction:
        return Fraction(2, self.n)

    def euler_field(self, t: Sequence, coefficient: Optional[complex] = None) -> np.ndarray:
        """``t_1 delta_1 + (2/n) t_2 delta_2 + sum_{i>=3} t_i delta_i``."""
        E = self.point(t).copy()
        c = float(self.euler_coefficient()) if coefficient is None else coefficient
        E[1] *= c
        return E

    def euler_jacobian(self, coefficient: Optional[complex] = None) -> np.ndarray:
        c = float(self.euler_coefficient()) if coefficient is None else coefficient
        J = np.eye(self.m, dtype=complex)
        J[1, 1] = c
        return J

    def degrees(self) -> tuple[tuple, Fraction]:
        """Eigenvalues ``(d_1, d_2)`` of ``nabla E`` and ``D`` on the ``I_2(n)`` block."""
        c = self.euler_coefficient()
        return (Fraction(1), c), 1 + c

    # -- metric -------------------------------------------------------------

    def epsilon(self) -> np.ndarray:
        """The 1-form ``g(e, .)``; constant in the flat coordinates."""
        if self.metric_kind is MetricKind.TEST:
            eps = np.ones(self.m, dtype=complex)
            eps[0] = 0
            return eps
        return self.gram(np.ones(self.m)) @ self.unit()

    def potential_third(self, t: Sequence) -> np.ndarray:
        """Third derivatives ``Phi_{abc}`` of the potential

        ``Phi = t_1**2 t_2 / 2 + t_2**(n+1) / ((n+1) n (n-1)) + sum_{i>=3} t_i**3 / 6``.
        """
        t = self.point(t)
        P = np.zeros((self.m,) * 3, dtype=complex)
        for idx in ((0, 0, 1), (0, 1, 0), (1, 0, 0)):
            P[idx] = 1
        P[1, 1, 1] = t[1] ** (self.n - 2)
        for i in range(2, self.m):
            P[i, i, i] = 1
        return P

    def gram(self, t: Sequence) -> np.ndarray:
        """``g(delta_i, delta_j)`` at ``t``."""
        if self.metric_kind is MetricKind.TEST:
            # g(X, Y) = eps(X o Y) for a multiplication invariant metric
            return np.einsum("ijk,k->ij", self.structure_constants(t), self.epsilon())
        return np.einsum("a,aij->ij", self.unit(), self.potential_third(t))

    def eta(self, t: Sequence) -> complex:
        """A primitive of ``g(e, .)`` normalised by ``eta(0) = 0``."""
        return complex(np.dot(self.epsilon(), self.point(t)))

    # -- semisimple frame ---------------------------------------------------

    def idempotents_at(self, t: Sequence) -> PointAlgebra:
        t = self.point(t)
        if self.on_caustic(t):
            raise OnCaustic(f"|t_2| = {abs(t[1]):.3g} is on the caustic")
        s = cmath.sqrt(t[1])
        k = s ** (-(self.n - 2))
        E = np.zeros((self.m, self.m), dtype=complex)
        E[0, 0] = E[1, 0] = 0.5
        E[0, 1] = 0.5 * k
        E[1, 1] = -0.5 * k
        for i in range(2, self.m):
            E[i, i] = 1
        base = t.copy()
        base[1] = t[0]
        shift = np.zeros(self.m, dtype=complex)
        shift[0] = 2 / self.n * s ** self.n
        shift[1] = -shift[0]
        return PointAlgebra(t, self.structure_constants(t), E, base + shift, s, base, shift)

    def idempotent_derivative(self, t: Sequence) -> np.ndarray:
        """``dE[i, l, k] = d e_i^k / d t_l`` for the frame of :meth:`idempotents_at`."""
        pa = self.idempotents_at(t)
        dE = np.zeros((self.m,) * 3, dtype=complex)
        d = -(self.n - 2) / 4 * pa.sqrt_t2 ** (-(self.n - 2)) / pa.t[1]
        dE[0, 1, 1] = d
        dE[1, 1, 1] = -d
        return dE

    def canonical_jacobian(self, t: Sequence) -> np.ndarray:
        """``du_i / dt_k`` as a matrix; the inverse of the idempotent frame."""
        E = self.idempotents_at(t).idempotents
        return np.linalg.inv(E.T)

    # -- socle field --------------------------------------------------------

    def socle_field(self, t: Sequence, basis: Optional[np.ndarray] = None) -> np.ndarray:
        return socle_from_dual_bases(self.structure_constants(t), self.gram(t), basis)

    def socle_operator(self, t: Sequence) -> np.ndarray:
        return self.multiplication_operator(t, self.socle_field(t))

    def det_socle_operator(self, t: Sequence) -> complex:
        return complex(np.linalg.det(self.socle_operator(t)))


def socle_from_dual_bases(C: np.ndarray, G: np.ndarray,
                          basis: Optional[np.ndarray] = None) -> np.ndarray:
    """``sum_i X_i o X~_i`` for a basis ``X`` (rows) and its ``g``-dual basis.

    The result does not depend on ``basis``; the default is the coordinate
    basis.
    """
    m = G.shape[0]
    X = np.eye(m, dtype=complex) if basis is None else np.asarray(basis, dtype=complex)
    gram_x = X @ G @ X.T
    if abs(np.linalg.det(gram_x)) < 1e-14:
        raise DegenerateMetric("metric is degenerate on the given basis")
    # dual rows Y with X G Y^T = I
    Y = np.linalg.solve(gram_x.T, X)
    return np.einsum("ri,rj,ijk->k", X, Y, C)


def split_algebra(C: np.ndarray, unit: np.ndarray, rng=None) -> np.ndarray:
    """Idempotents of a semisimple algebra from the eigenspaces of a generic
    multiplication operator; rows of the result are the ``e_i``."""
    rng = np.random.default_rng(0) if rng is None else rng
    m = C.shape[0]
    x = rng.normal(size=m) + 1j * rng.normal(size=m)
    L = np.einsum("i,ijk->kj", x, C)
    _, V = np.linalg.eig(L)
    coeff = np.linalg.solve(V, unit)
    return (V * coeff).T


def build_model(n: int, m: int, metric_kind="flat_potential") -> FrobeniusModel:
    return FrobeniusModel(n, m, metric_kind)
