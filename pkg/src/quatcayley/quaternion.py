"""Exact arithmetic on integral Hamilton quaternions a0 + a1 i + a2 j + a3 k."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import gcd


@dataclass(frozen=True, order=True)
class Quaternion:
    """Integral quaternion with arbitrary-precision coordinates.

    Coordinates are coerced to Python ``int`` on construction, so values
    coming from numpy arrays can never wrap around silently.
    """

    a0: int
    a1: int = 0
    a2: int = 0
    a3: int = 0

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise TypeError(f"quaternion coordinate {name}={value!r} is not an integer")
            object.__setattr__(self, name, int(value))

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3)

    def __mul__(self, other: Quaternion | int) -> Quaternion:
        if isinstance(other, int):
            return Quaternion(*(c * other for c in self.coords))
        return mul(self, other)

    def __rmul__(self, other: int) -> Quaternion:
        if isinstance(other, int):
            return Quaternion(*(c * other for c in self.coords))
        return NotImplemented

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __str__(self) -> str:
        return format_quaternion(self)


ZERO = Quaternion(0, 0, 0, 0)
ONE = Quaternion(1, 0, 0, 0)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a * b`` (i^2 = j^2 = k^2 = -1, ij = k = -ji)."""
    a0, a1, a2, a3 = a.coords
    b0, b1, b2, b3 = b.coords
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def conj(a: Quaternion) -> Quaternion:
    return Quaternion(a.a0, -a.a1, -a.a2, -a.a3)


def norm(a: Quaternion) -> int:
    return a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3


def content(a: Quaternion) -> int:
    """gcd of the four coordinates; 0 for the zero quaternion."""
    return reduce(gcd, a.coords, 0)


def is_primitive(a: Quaternion) -> bool:
    return content(a) == 1


def is_pure(a: Quaternion) -> bool:
    return a.a0 == 0


def units() -> list[Quaternion]:
    """The eight units of H(Z): +-1, +-i, +-j, +-k."""
    basis = (ONE, I, J, K)
    return [s * e for e in basis for s in (1, -1)]


def unit_orbit(a: Quaternion) -> set[Quaternion]:
    """Left orbit ``{e * a}`` under the unit group."""
    return {mul(e, a) for e in units()}


def divide_exact(a: Quaternion, n: int) -> Quaternion:
    """Divide every coordinate by ``n``, which must divide all of them."""
    if any(c % n for c in a.coords):
        raise ValueError(f"{n} does not divide {a}")
    return Quaternion(*(c // n for c in a.coords))


def product(factors) -> Quaternion:
    return reduce(mul, factors, ONE)


_TERM = re.compile(r"([+-]?\d+)([ijk]?)")


def format_quaternion(a: Quaternion) -> str:
    """Render as ``a0+a1i+a2j+a3k`` with explicit signs, e.g. ``1-2i+0j+0k``."""
    return f"{a.a0}{a.a1:+d}i{a.a2:+d}j{a.a3:+d}k"


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``"1-2i+0j+0k"`` (any subset of terms) or ``"1,-2,0,0"``."""
    s = text.replace(" ", "")
    if "," in s:
        parts = s.split(",")
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated coordinates, got {text!r}")
        return Quaternion(*(int(p) for p in parts))
    coords = {"": 0, "i": 0, "j": 0, "k": 0}
    pos = 0
    seen = set()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse quaternion {text!r}")
        value, axis = m.groups()
        if axis in seen:
            raise ValueError(f"repeated {axis or 'real'} term in {text!r}")
        seen.add(axis)
        coords[axis] = int(value)
        pos = m.end()
    if not seen:
        raise ValueError(f"cannot parse quaternion {text!r}")
    return Quaternion(coords[""], coords["i"], coords["j"], coords["k"])
