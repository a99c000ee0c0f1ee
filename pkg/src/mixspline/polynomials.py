"""Bi-degree polynomial boxes in the monomial basis.

A polynomial of bi-degree at most ``(m, mp)`` is stored as a tuple of
``(m + 1) * (mp + 1)`` coefficients; the coefficient of ``s**i * t**j`` lives
at index ``i * (mp + 1) + j`` (``i`` major).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


@dataclass(frozen=True)
class MonomialBox:
    m: int
    mp: int

    @property
    def dim(self) -> int:
        if self.m < 0 or self.mp < 0:
            return 0
        return (self.m + 1) * (self.mp + 1)

    def index(self, i: int, j: int) -> int:
        return i * (self.mp + 1) + j

    def monomials(self):
        """Exponent pairs ``(i, j)`` in storage order."""
        if self.dim == 0:
            return []
        return [(i, j) for i in range(self.m + 1) for j in range(self.mp + 1)]

    def zero(self) -> tuple:
        return (0,) * self.dim


def line_power_multiples(box: MonomialBox, horizontal: bool, c, power: int) -> list[tuple]:
    """Coordinates of ``ell**power * s**i * t**j`` for every admissible monomial.

    ``ell`` is ``t - c`` for a horizontal line and ``s - c`` for a vertical
    one; (i, j) range over the complementary box so that the product stays in
    ``box``.  Returns an empty list when ``power`` exceeds the degree.
    """
    if box.dim == 0:
        return []
    top = box.mp if horizontal else box.m
    if power > top:
        return []
    expansion = [comb(power, k) * (-c) ** (power - k) for k in range(power + 1)]
    out = []
    if horizontal:
        for i in range(box.m + 1):
            for j in range(box.mp - power + 1):
                v = [0] * box.dim
                for k, a in enumerate(expansion):
                    v[box.index(i, j + k)] = a
                out.append(tuple(v))
    else:
        for i in range(box.m - power + 1):
            for j in range(box.mp + 1):
                v = [0] * box.dim
                for k, a in enumerate(expansion):
                    v[box.index(i + k, j)] = a
                out.append(tuple(v))
    return out


def falling(k: int, j: int) -> int:
    """``k (k-1) ... (k-j+1)``, the j-th derivative factor of ``x**k``."""
    out = 1
    for q in range(j):
        out *= k - q
    return out


def evaluate(box: MonomialBox, coeffs, s, t, ds: int = 0, dt: int = 0):
    """Exact value of ``d^ds/ds d^dt/dt p`` at ``(s, t)``."""
    acc = 0
    for (i, j), c in zip(box.monomials(), coeffs):
        if not c or i < ds or j < dt:
            continue
        acc += c * falling(i, ds) * falling(j, dt) * Fraction(s) ** (i - ds) * Fraction(t) ** (j - dt)
    return acc
