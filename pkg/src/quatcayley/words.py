"""Irreducible products over D(d), unique factorization, and the free group they form.

A word is a tuple of letters, each an index into a :class:`GeneratorSet`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .basis import GeneratorSet, PrimeBasis
from .quaternion import ONE, Quaternion, conj, content, divide_exact, mul, norm, units

Word = tuple[int, ...]

__all__ = [
    "Word",
    "Factorization",
    "ReducibleWord",
    "is_irreducible",
    "word_to_quaternion",
    "factor",
    "star",
    "inverse",
    "tree_neighbors",
    "irreducible_words",
    "count_irreducible",
]


class ReducibleWord(ValueError):
    pass


def _check_letters(w: Sequence[int], gens: GeneratorSet) -> None:
    n = len(gens)
    for x in w:
        if not 0 <= x < n:
            raise IndexError(f"letter {x} out of range for {n} generators")


def is_irreducible(w: Sequence[int], gens: GeneratorSet) -> bool:
    """No letter is followed by its inverse (its conjugate, or itself when pure)."""
    _check_letters(w, gens)
    inv = gens.inverse
    return all(b != inv[a] for a, b in zip(w, w[1:]))


def word_to_quaternion(w: Sequence[int], gens: GeneratorSet) -> Quaternion:
    """Left-to-right Hamilton product of the letters of an irreducible word."""
    if not is_irreducible(w, gens):
        raise ReducibleWord(f"word {tuple(w)} is not irreducible")
    elems = gens.elements
    out = ONE
    for x in w:
        out = mul(out, elems[x])
    return out


@dataclass(frozen=True)
class Factorization:
    """``alpha = p**content_exponent * unit * word[0] * ... * word[-1]``.

    ``word`` holds elements of the full basis P(p), not letters of a D(d).
    """

    p: int
    content_exponent: int
    unit: Quaternion
    word: tuple[Quaternion, ...]

    def reconstruct(self) -> Quaternion:
        out = self.unit
        for pi in self.word:
            out = mul(out, pi)
        return (self.p**self.content_exponent) * out


def _p_adic_exponent(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def factor(a: Quaternion, basis: PrimeBasis) -> Factorization:
    """Unique factorization of a quaternion whose norm is a power of ``p``.

    Basis elements are peeled off the right: ``pi`` right-divides a primitive
    ``alpha`` exactly when ``alpha * conj(pi)`` is divisible by ``p``.
    """
    p = basis.p
    n = norm(a)
    if n == 0:
        raise ValueError("cannot factor the zero quaternion")
    k, rest = _p_adic_exponent(n, p)
    if rest != 1:
        raise ValueError(f"norm {n} of {a} is not a power of {p}")
    c = content(a)
    ell, crest = _p_adic_exponent(c, p)
    assert crest == 1, "content of a norm-p^k quaternion must be a power of p"
    alpha = divide_exact(a, c)
    word: list[Quaternion] = []
    for _ in range(k - 2 * ell):
        hits = [pi for pi in basis.elements if all(x % p == 0 for x in mul(alpha, conj(pi)).coords)]
        assert len(hits) == 1, f"expected exactly one right divisor in P({p}), found {len(hits)}"
        pi = hits[0]
        alpha = divide_exact(mul(alpha, conj(pi)), p)
        word.append(pi)
    assert norm(alpha) == 1, "peeling must end on a unit"
    return Factorization(p=p, content_exponent=ell, unit=alpha, word=tuple(reversed(word)))


def inverse(w: Sequence[int], gens: GeneratorSet) -> Word:
    """Group inverse: reverse the word and replace each letter by its inverse letter."""
    _check_letters(w, gens)
    inv = gens.inverse
    return tuple(inv[x] for x in reversed(w))


def star(a: Sequence[int], b: Sequence[int], gens: GeneratorSet) -> Word:
    """Reduced product: concatenate and cancel inverse letters across the junction.

    The sign left over by the cancellation is central and is dropped.
    """
    _check_letters(a, gens)
    _check_letters(b, gens)
    inv = gens.inverse
    i = 0
    n, m = len(a), len(b)
    while i < min(n, m) and a[n - 1 - i] == inv[b[i]]:
        i += 1
    return tuple(a[: n - i]) + tuple(b[i:])


def cancellation_length(a: Sequence[int], b: Sequence[int], gens: GeneratorSet) -> int:
    """Number of letter pairs cancelled at the junction by :func:`star`."""
    return (len(a) + len(b) - len(star(a, b, gens))) // 2


def tree_neighbors(w: Sequence[int], gens: GeneratorSet) -> list[Word]:
    """The ``d + 1`` neighbours of ``w`` in the regular tree of irreducible words."""
    w = tuple(w)
    if not w:
        return [(x,) for x in range(len(gens))]
    last_inv = gens.inverse[w[-1]]
    out = [w[:-1]]
    out += [w + (x,) for x in range(len(gens)) if x != last_inv]
    return out


def irreducible_words(gens: GeneratorSet, length: int) -> Iterator[Word]:
    """All irreducible words of exactly ``length`` letters, lexicographically."""
    if length == 0:
        yield ()
        return
    inv = gens.inverse
    n = len(gens)

    def extend(prefix: Word) -> Iterator[Word]:
        if len(prefix) == length:
            yield prefix
            return
        for x in range(n):
            if prefix and x == inv[prefix[-1]]:
                continue
            yield from extend(prefix + (x,))

    yield from extend(())


def count_irreducible(d: int, length: int) -> int:
    return 1 if length == 0 else (d + 1) * d ** (length - 1)


def decomposition_table(basis: PrimeBasis, length: int) -> dict[Quaternion, list[tuple[Quaternion, Word]]]:
    """Map every product ``unit * pi_1 * ... * pi_length`` to the ways it arises.

    Exhaustive over ``units x P(p)^length`` with no reduction rule imposed;
    an independent oracle for :func:`factor`.
    """
    elems = basis.elements
    partial: dict[Word, Quaternion] = {(): ONE}
    for _ in range(length):
        partial = {w + (x,): mul(q, elems[x]) for w, q in partial.items() for x in range(len(elems))}
    table: dict[Quaternion, list[tuple[Quaternion, Word]]] = {}
    for eps in units():
        for w, q in partial.items():
            table.setdefault(mul(eps, q), []).append((eps, w))
    return table
