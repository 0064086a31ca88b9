"""Exact integer vectors, linear forms, and gcd/lcm helpers.

Everything in this module is arbitrary-precision: lifted simplices multiply
lattice parameters past 64 bits quickly, so no value here may ever pass
through floating point or a fixed-width integer type.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence


class LatticePoint:
    """Immutable integer vector; the last coordinate is the degree."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int]):
        cs = tuple(coords)
        if len(cs) < 2:
            raise ValueError(f"lattice point needs at least 2 coordinates, got {len(cs)}")
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"lattice point coordinates must be int, got {c!r}")
        self.coords = cs

    @property
    def degree(self) -> int:
        return self.coords[-1]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index):
        return self.coords[index]

    def _check_compatible(self, other: "LatticePoint") -> None:
        if len(self.coords) != len(other.coords):
            raise ValueError(
                f"dimension mismatch: {len(self.coords)} vs {len(other.coords)}"
            )

    def __add__(self, other):
        if not isinstance(other, LatticePoint):
            return NotImplemented
        self._check_compatible(other)
        return LatticePoint(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        if not isinstance(other, LatticePoint):
            return NotImplemented
        self._check_compatible(other)
        return LatticePoint(a - b for a, b in zip(self.coords, other.coords))

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return LatticePoint(scalar * c for c in self.coords)

    __rmul__ = __mul__

    def __neg__(self):
        return LatticePoint(-c for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, LatticePoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"LatticePoint({list(self.coords)!r})"


class LinearForm:
    """Integer linear form on lattice points, evaluated as an exact dot product."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = tuple(coeffs)
        if len(cs) < 2:
            raise ValueError(f"linear form needs at least 2 coefficients, got {len(cs)}")
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"linear form coefficients must be int, got {c!r}")
        self.coeffs = cs

    def __call__(self, point: LatticePoint | Sequence[int]) -> int:
        coords = point.coords if isinstance(point, LatticePoint) else tuple(point)
        if len(coords) != len(self.coeffs):
            raise ValueError(
                f"dimension mismatch: form has {len(self.coeffs)} coefficients, "
                f"point has {len(coords)} coordinates"
            )
        return sum(a * b for a, b in zip(self.coeffs, coords))

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"LinearForm({list(self.coeffs)!r})"


def dot(form: LinearForm, point: LatticePoint | Sequence[int]) -> int:
    """Evaluate ``form`` at ``point`` exactly."""
    return form(point)


def lcm_all(values: Iterable[int]) -> int:
    """Least common multiple of a non-empty sequence of positive integers."""
    vals = tuple(values)
    if not vals:
        raise ValueError("lcm of an empty sequence is undefined")
    for v in vals:
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"lcm requires positive integers, got {v!r}")
    return math.lcm(*vals)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = abs(a), abs(b)
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if a < 0:
        old_x = -old_x
    if b < 0:
        old_y = -old_y
    return old_r, old_x, old_y


def bezout_coefficients(values: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Return (g, cs) with g = gcd(values) >= 0 and sum(c*v) = g.

    Folds :func:`xgcd` across the sequence; for an all-zero input g is 0.
    """
    if not values:
        raise ValueError("bezout_coefficients of an empty sequence is undefined")
    g = values[0]
    coeffs = [1]
    for v in values[1:]:
        g2, x, y = xgcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs.append(y)
        g = g2
    if g < 0:
        g = -g
        coeffs = [-c for c in coeffs]
    return g, tuple(coeffs)


def zero_point(length: int) -> LatticePoint:
    """The origin of the ambient lattice."""
    return LatticePoint((0,) * length)


def unit_vector(length: int, axis: int) -> LatticePoint:
    """The 1-based ``axis``-th standard unit vector of the given length."""
    if not 1 <= axis <= length:
        raise ValueError(f"axis must be in 1..{length}, got {axis}")
    return LatticePoint(tuple(1 if i == axis - 1 else 0 for i in range(length)))


def ladder_step(dimension: int) -> LatticePoint:
    """The degree-zero direction (-1, 2, -1, 0) used to walk hole ladders.

    Consecutive ladder points in a three-dimensional rectangular simplex
    differ by this vector; it gains exactly two units of skew height on the
    triples this package certifies. Only dimension 3 is supported.
    """
    if dimension != 3:
        raise ValueError(f"ladder step vector is only defined in dimension 3, got {dimension}")
    return LatticePoint((-1, 2, -1, 0))
