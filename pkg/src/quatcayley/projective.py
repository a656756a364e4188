"""Reduction mod q: F_q arithmetic, the splitting map H(F_q) -> M_2(F_q), and PGL_2 / PSL_2.

Matrices are stored row-major as ``(m00, m01, m10, m11)``.  A projective
class is represented by its canonical scaling: the first nonzero entry in
reading order is 1.  Bulk routines work on ``(N, 4)`` int64 arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .basis import GeneratorSet
from .primes import is_prime, q_threshold
from .quaternion import Quaternion

__all__ = [
    "NonResidue",
    "SingularMatrix",
    "QTooSmall",
    "legendre",
    "sqrt_mod",
    "FieldContext",
    "find_xy",
    "phi",
    "ProjElement",
    "project",
    "in_psl",
    "GraphSpec",
    "image_generators",
    "GroupTable",
    "enumerate_group",
    "PGL2",
    "PSL2",
    "admissible_q",
]

PGL2 = "PGL2"
PSL2 = "PSL2"


class NonResidue(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class QTooSmall(ValueError):
    """Generator images collide or hit the identity: q is too small for this basis."""


def legendre(a: int, q: int) -> int:
    """Legendre symbol by Euler's criterion."""
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def _smallest_nonresidue(q: int) -> int:
    z = 2
    while legendre(z, q) != -1:
        z += 1
    return z


def sqrt_mod(a: int, q: int) -> int:
    """Smaller square root of ``a`` modulo the odd prime ``q`` (Tonelli-Shanks)."""
    a %= q
    if a == 0:
        return 0
    if legendre(a, q) != 1:
        raise NonResidue(f"{a} is not a quadratic residue mod {q}")
    s, m = 0, q - 1
    while m % 2 == 0:
        s, m = s + 1, m // 2
    c = pow(_smallest_nonresidue(q), m, q)
    t = pow(a, m, q)
    r = pow(a, (m + 1) // 2, q)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % q
            i += 1
        b = pow(c, 1 << (s - i - 1), q)
        r = r * b % q
        c = b * b % q
        t = t * c % q
        s = i
    return min(r, q - r)


@dataclass(frozen=True)
class FieldContext:
    q: int
    x: int
    y: int


@lru_cache(maxsize=None)
def find_xy(q: int) -> FieldContext:
    """Smallest ``x >= 0`` with ``-1 - x^2`` a square, and ``y`` its smaller root."""
    if q < 3 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    for x in range(q):
        r = (-1 - x * x) % q
        if legendre(r, q) != -1:
            return FieldContext(q=q, x=x, y=sqrt_mod(r, q))
    raise AssertionError("every odd prime field has x^2 + y^2 + 1 = 0")


def phi(a: Quaternion, ctx: FieldContext) -> tuple[int, int, int, int]:
    """Image of ``a`` in M_2(F_q); ``det(phi(a)) = norm(a) mod q``."""
    q, x, y = ctx.q, ctx.x, ctx.y
    a0, a1, a2, a3 = a.coords
    return (
        (a0 + a1 * x + a3 * y) % q,
        (-a1 * y + a2 + a3 * x) % q,
        (-a1 * y - a2 + a3 * x) % q,
        (a0 - a1 * x - a3 * y) % q,
    )


def det(m, q: int) -> int:
    return (m[0] * m[3] - m[1] * m[2]) % q


def matmul(a, b, q: int) -> tuple[int, int, int, int]:
    return (
        (a[0] * b[0] + a[1] * b[2]) % q,
        (a[0] * b[1] + a[1] * b[3]) % q,
        (a[2] * b[0] + a[3] * b[2]) % q,
        (a[2] * b[1] + a[3] * b[3]) % q,
    )


@dataclass(frozen=True, order=True)
class ProjElement:
    """Canonical representative of a class in PGL_2(F_q)."""

    m00: int
    m01: int
    m10: int
    m11: int

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.m00, self.m01, self.m10, self.m11)

    def __str__(self) -> str:
        return f"[[{self.m00},{self.m01}],[{self.m10},{self.m11}]]"


def project(m, q: int) -> ProjElement:
    """Canonical class of an invertible matrix: scale so the first nonzero entry is 1."""
    m = tuple(int(v) % q for v in m)
    if det(m, q) == 0:
        raise SingularMatrix(f"matrix {m} is singular mod {q}")
    lead = m[0] if m[0] else m[1]
    s = pow(lead, -1, q)
    return ProjElement(*((v * s) % q for v in m))


def proj_mul(a: ProjElement, b: ProjElement, q: int) -> ProjElement:
    return project(matmul(a.entries, b.entries, q), q)


def proj_inverse(a: ProjElement, q: int) -> ProjElement:
    m00, m01, m10, m11 = a.entries
    return project((m11, -m01, -m10, m00), q)


IDENTITY = ProjElement(1, 0, 0, 1)


def in_psl(e: ProjElement, q: int) -> bool:
    """Determinant is a square; scaling by ``lambda`` multiplies it by ``lambda^2``."""
    return legendre(det(e.entries, q), q) == 1


# ---------------------------------------------------------------------------
# bulk arithmetic on (N, 4) arrays


@lru_cache(maxsize=64)
def inverse_table(q: int) -> np.ndarray:
    inv = np.zeros(q, dtype=np.int64)
    for v in range(1, q):
        inv[v] = pow(v, -1, q)
    inv.setflags(write=False)
    return inv


@lru_cache(maxsize=64)
def square_table(q: int) -> np.ndarray:
    """``table[v]`` is True iff ``v`` is a nonzero square mod q."""
    table = np.zeros(q, dtype=bool)
    table[(np.arange(1, q, dtype=np.int64) ** 2) % q] = True
    table.setflags(write=False)
    return table


def canonicalize(m: np.ndarray, q: int) -> np.ndarray:
    """Row-wise canonical scaling of invertible matrices (modifies nothing in place)."""
    lead = np.where(m[:, 0] != 0, m[:, 0], m[:, 1])
    s = inverse_table(q)[lead]
    return (m * s[:, None]) % q


def right_multiply(m: np.ndarray, g, q: int) -> np.ndarray:
    """Row-wise ``m @ g`` mod q for a fixed 2x2 matrix ``g``."""
    g00, g01, g10, g11 = (int(v) for v in g)
    out = np.empty_like(m)
    out[:, 0] = (m[:, 0] * g00 + m[:, 1] * g10) % q
    out[:, 1] = (m[:, 0] * g01 + m[:, 1] * g11) % q
    out[:, 2] = (m[:, 2] * g00 + m[:, 3] * g10) % q
    out[:, 3] = (m[:, 2] * g01 + m[:, 3] * g11) % q
    return out


def encode(m: np.ndarray, q: int) -> np.ndarray:
    """Injective integer key for canonical matrices.

    Canonical forms either start with ``m00 = 1`` or with ``(0, 1)``; the
    key is ``m01*q^2 + m10*q + m11`` in the first case and
    ``q^3 + m10*q + m11`` in the second, so keys lie in ``[0, q^3 + q^2)``.
    """
    q2 = q * q
    first = m[:, 1] * q2 + m[:, 2] * q + m[:, 3]
    second = q2 * q + m[:, 2] * q + m[:, 3]
    return np.where(m[:, 0] == 1, first, second)


def decode(codes: np.ndarray, q: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    q3 = q * q * q
    out = np.empty((codes.shape[0], 4), dtype=np.int64)
    upper = codes >= q3
    low = np.where(upper, codes - q3, codes)
    out[:, 0] = np.where(upper, 0, 1)
    out[:, 1] = np.where(upper, 1, low // (q * q))
    out[:, 2] = (low // q) % q
    out[:, 3] = low % q
    return out


def key_space(q: int) -> int:
    return q**3 + q**2


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Complete enumeration of PGL_2(F_q) or PSL_2(F_q) with O(1) index lookup.

    ``elements[i]`` is the canonical matrix of vertex ``i``; ``lookup[key]``
    is the vertex index for a canonical key (-1 for keys outside the group).
    The identity is always vertex 0.
    """

    q: int
    kind: str
    elements: np.ndarray = field(repr=False)
    lookup: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.elements.shape[0])

    def index_of(self, m: np.ndarray) -> np.ndarray:
        """Vertex indices of canonical matrices (rows of ``m``)."""
        return self.lookup[encode(m, self.q)]

    def element(self, i: int) -> ProjElement:
        return ProjElement(*(int(v) for v in self.elements[i]))

    def index(self, e: ProjElement) -> int:
        idx = int(self.lookup[int(encode(np.array([e.entries], dtype=np.int64), self.q)[0])])
        if idx < 0:
            raise KeyError(f"{e} is not in {self.kind}({self.q})")
        return idx


def group_order(q: int, kind: str) -> int:
    n = q**3 - q
    return n // 2 if kind == PSL2 else n


def table_bytes(q: int, kind: str) -> int:
    """Memory needed by :func:`enumerate_group` (elements + key lookup)."""
    return group_order(q, kind) * 4 * 8 + key_space(q) * 4


def enumerate_group(q: int, kind: str) -> GroupTable:
    """All canonical elements of PGL_2(F_q) (``q^3 - q``) or PSL_2(F_q) (half of that)."""
    if kind not in (PGL2, PSL2):
        raise ValueError(f"unknown group kind {kind!r}")
    codes = np.arange(key_space(q), dtype=np.int64)
    m = decode(codes, q)
    d = (m[:, 0] * m[:, 3] - m[:, 1] * m[:, 2]) % q
    keep = d != 0
    if kind == PSL2:
        keep &= square_table(q)[d]
    elements = m[keep]
    lookup = np.full(codes.shape[0], -1, dtype=np.int32)
    lookup[codes[keep]] = np.arange(elements.shape[0], dtype=np.int32)
    elements.setflags(write=False)
    lookup.setflags(write=False)
    table = GroupTable(q=q, kind=kind, elements=elements, lookup=lookup)
    assert len(table) == group_order(q, kind)
    return table


# ---------------------------------------------------------------------------
# reduced generator set


@dataclass(frozen=True)
class GraphSpec:
    """Everything needed to build G_{d,p,q}."""

    gens: GeneratorSet
    q: int
    ctx: FieldContext
    generator_images: tuple[ProjElement, ...]
    legendre_pq: int
    group_kind: str
    theoretical_regime: bool

    @property
    def d(self) -> int:
        return self.gens.d

    @property
    def p(self) -> int:
        return self.gens.p

    @property
    def inverse(self) -> tuple[int, ...]:
        return self.gens.inverse

    def as_record(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "q": self.q,
            "x": self.ctx.x,
            "y": self.ctx.y,
            "legendre_pq": self.legendre_pq,
            "group_kind": self.group_kind,
            "theoretical_regime": self.theoretical_regime,
        }


def admissible_q(p: int, q: int) -> bool:
    """Odd prime ``q != p`` with ``q > 2 sqrt(p)``, which keeps P(p) injective mod q."""
    return q > 2 and q != p and q * q > 4 * p and is_prime(q)


def image_generators(gens: GeneratorSet, q: int) -> GraphSpec:
    p = gens.p
    if not admissible_q(p, q):
        raise ValueError(f"q={q} must be an odd prime different from p={p} with q > 2*sqrt(p)")
    ctx = find_xy(q)
    images = tuple(project(phi(a, ctx), q) for a in gens.elements)
    if len(set(images)) != len(images):
        raise QTooSmall(f"generator images collide mod q={q}")
    if IDENTITY in images:
        raise QTooSmall(f"a generator maps to the identity mod q={q}")
    for i, j in enumerate(gens.inverse):
        if proj_inverse(images[i], q) != images[j]:
            raise AssertionError(f"image of letter {j} is not the inverse of letter {i}")
    lg = legendre(p, q)
    kind = PSL2 if lg == 1 else PGL2
    in_sub = [in_psl(e, q) for e in images]
    if any(v != (lg == 1) for v in in_sub):
        raise AssertionError("generator images disagree with the Legendre symbol (p/q)")
    return GraphSpec(
        gens=gens,
        q=q,
        ctx=ctx,
        generator_images=images,
        legendre_pq=lg,
        group_kind=kind,
        theoretical_regime=q > q_threshold(gens.d, p),
    )


def generator_matrix(spec: GraphSpec) -> np.ndarray:
    """``(d+1, 4)`` array of the generator images."""
    return np.array([e.entries for e in spec.generator_images], dtype=np.int64)


def quaternion_is_central_mod(a: Quaternion, q: int) -> bool:
    """``a`` reduces to a nonzero scalar mod q, i.e. to the identity of PGL_2."""
    return a.a1 % q == 0 and a.a2 % q == 0 and a.a3 % q == 0 and a.a0 % q != 0

