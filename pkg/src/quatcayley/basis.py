"""The canonical prime set P(p) and the generator subsets D(d) drawn from it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .quaternion import Quaternion, conj, is_primitive

__all__ = [
    "PrimeBasis",
    "GeneratorSet",
    "InfeasibleSelection",
    "enumerate_norm_p",
    "build_basis",
    "select_generators",
    "sum_of_three_squares",
    "legendre_three_squares",
]


class InfeasibleSelection(ValueError):
    """No generator subset of the requested size satisfies the closure rule."""


def enumerate_norm_p(p: int) -> list[Quaternion]:
    """Every integral quaternion of norm ``p``, in lexicographic order."""
    r = math.isqrt(p)
    out = []
    for a0 in range(-r, r + 1):
        r0 = p - a0 * a0
        for a1 in range(-r, r + 1):
            r1 = r0 - a1 * a1
            if r1 < 0:
                continue
            for a2 in range(-r, r + 1):
                r2 = r1 - a2 * a2
                if r2 < 0:
                    continue
                a3 = math.isqrt(r2)
                if a3 * a3 != r2:
                    continue
                out.append(Quaternion(a0, a1, a2, -a3))
                if a3:
                    out.append(Quaternion(a0, a1, a2, a3))
    return sorted(out)


def _in_canonical_set(a: Quaternion, p: int) -> bool:
    a0, a1, a2, a3 = a.coords
    if p % 4 == 1:
        # a0 > 0 and a - 1 has even coordinates
        return a0 > 0 and a0 % 2 == 1 and a1 % 2 == 0 and a2 % 2 == 0 and a3 % 2 == 0
    # p = 3 mod 4: a - i - j - k has even coordinates, sign fixed on the first nonzero of (a0, a1)
    if not (a0 % 2 == 0 and a1 % 2 == 1 and a2 % 2 == 1 and a3 % 2 == 1):
        return False
    return a0 > 0 if a0 != 0 else a1 > 0


@dataclass(frozen=True)
class PrimeBasis:
    """P(p): one primitive norm-p quaternion per unit orbit.

    ``pairing[i]`` is the index of ``conj(elements[i])`` inside ``elements``,
    or ``None`` for a pure element (zero real part, whose conjugate ``-pi``
    is not in the set).
    """

    p: int
    elements: tuple[Quaternion, ...]
    pairing: tuple[int | None, ...]

    @property
    def s(self) -> int:
        return sum(1 for x in self.pairing if x is not None)

    @property
    def t(self) -> int:
        return sum(1 for x in self.pairing if x is None)

    def index(self, a: Quaternion) -> int:
        return self.elements.index(a)

    def __len__(self) -> int:
        return len(self.elements)


def build_basis(p: int) -> PrimeBasis:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    elements = tuple(a for a in enumerate_norm_p(p) if _in_canonical_set(a, p) and is_primitive(a))
    lookup = {a: i for i, a in enumerate(elements)}
    pairing = tuple(None if a.a0 == 0 else lookup[conj(a)] for a in elements)
    return PrimeBasis(p=p, elements=elements, pairing=pairing)


@dataclass(frozen=True)
class GeneratorSet:
    """D(d): ``d + 1`` elements of P(p), closed under conjugation where possible.

    Letters of a word are indices ``0..d`` into ``elements``;
    ``inverse[i]`` is the letter that cancels letter ``i`` (its conjugate,
    or ``i`` itself for a pure element).
    """

    d: int
    basis: PrimeBasis
    indices: tuple[int, ...]
    rule: str = "lex-pairs-then-pure"

    @property
    def p(self) -> int:
        return self.basis.p

    @cached_property
    def elements(self) -> tuple[Quaternion, ...]:
        return tuple(self.basis.elements[i] for i in self.indices)

    @cached_property
    def pure(self) -> tuple[bool, ...]:
        return tuple(self.basis.pairing[i] is None for i in self.indices)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        pos = {b: n for n, b in enumerate(self.indices)}
        out = []
        for n, b in enumerate(self.indices):
            partner = self.basis.pairing[b]
            out.append(n if partner is None else pos[partner])
        return tuple(out)

    @property
    def n_pairs(self) -> int:
        return sum(1 for x in self.pure if not x) // 2

    @property
    def n_pure(self) -> int:
        return sum(self.pure)

    def __len__(self) -> int:
        return len(self.indices)


def select_generators(d: int, basis: PrimeBasis) -> GeneratorSet:
    """Deterministic choice of D(d).

    Conjugate pairs are taken first, in lexicographic order of the basis,
    then pure elements in the same order: ``k1 = min(floor((d+1)/2), s/2)``
    pairs for odd ``d``, ``k1 = min(d/2, s/2)`` for even ``d``.
    """
    s, t = basis.s, basis.t
    if d + 1 > len(basis):
        raise InfeasibleSelection(f"need {d + 1} generators but |P({basis.p})| = {len(basis)}")
    if d % 2 == 0 and t == 0:
        raise InfeasibleSelection(f"even d={d} needs a pure element, but P({basis.p}) has none")
    k1 = min((d + 1) // 2, s // 2) if d % 2 else min(d // 2, s // 2)
    n_pure = d + 1 - 2 * k1
    if n_pure > t:
        raise InfeasibleSelection(
            f"d={d} needs {n_pure} pure elements after {k1} pairs, but P({basis.p}) has t={t}"
        )
    chosen: list[int] = []
    taken: set[int] = set()
    for i, partner in enumerate(basis.pairing):
        if len(chosen) == 2 * k1:
            break
        if partner is None or i in taken:
            continue
        chosen += [i, partner]
        taken.update((i, partner))
    pure = [i for i, partner in enumerate(basis.pairing) if partner is None][:n_pure]
    return GeneratorSet(d=d, basis=basis, indices=tuple(sorted(chosen + pure)))


def sum_of_three_squares(n: int) -> bool:
    """Brute-force test whether ``n = x^2 + y^2 + z^2``."""
    r = math.isqrt(n)
    for x in range(r + 1):
        rx = n - x * x
        for y in range(x, math.isqrt(rx) + 1):
            rz = rx - y * y
            z = math.isqrt(rz)
            if z * z == rz:
                return True
    return False


def legendre_three_squares(n: int) -> bool:
    """Closed-form criterion: ``n`` is not of the form ``4^k (8l + 7)``."""
    if n == 0:
        return True
    while n % 4 == 0:
        n //= 4
    return n % 8 != 7
