"""Girth as the shortest nontrivial irreducible word that reduces to the identity mod q.

Meet in the middle over the tree of irreducible words: level ``h`` holds
the images in PGL_2(F_q) of all ``(d+1) d^(h-1)`` words of length ``h``.
Two distinct words ``a``, ``b`` with the same image and different last
letters close the non-backtracking cycle ``a * inverse(b)``.  Cycles of
length ``2h-1`` pair level ``h-1`` with level ``h``; cycles of length
``2h`` pair level ``h`` with itself.  Scanning lengths in increasing order,
the first hit is the girth of the identity's component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .projective import (
    IDENTITY,
    GraphSpec,
    canonicalize,
    decode,
    encode,
    generator_matrix,
    matmul,
    project,
    right_multiply,
)
from .words import Word, inverse, is_irreducible, star

__all__ = ["WordGirth", "girth_words", "level_sizes"]


@dataclass(frozen=True)
class WordGirth:
    """Outcome of the word search.

    ``girth`` is None exactly when ``exceeded`` is set: no cycle of length
    ``<= max_len`` exists.  ``witness`` is a cyclically reduced word of
    length ``girth`` whose image is the identity.
    """

    girth: int | None
    exceeded: bool
    max_len: int
    witness: Word | None = None
    words_enumerated: int = 0


@dataclass
class _Level:
    codes: np.ndarray  # canonical keys of the images
    last: np.ndarray  # last letter, -1 for the empty word
    parent: np.ndarray  # index into the previous level


def _extend(level: _Level, gens_m: np.ndarray, inv: np.ndarray, q: int) -> _Level:
    mats = decode(level.codes, q)
    parts_codes, parts_last, parts_parent = [], [], []
    rows = np.arange(level.codes.shape[0], dtype=np.int64)
    for s, g in enumerate(gens_m):
        allowed = level.last != inv[s]
        if not allowed.any():
            continue
        prod = canonicalize(right_multiply(mats[allowed], g, q), q)
        parts_codes.append(encode(prod, q))
        parts_last.append(np.full(int(allowed.sum()), s, dtype=np.int16))
        parts_parent.append(rows[allowed])
    return _Level(np.concatenate(parts_codes), np.concatenate(parts_last), np.concatenate(parts_parent))


def _word(levels: list[_Level], h: int, i: int) -> Word:
    out = []
    while h > 0:
        lv = levels[h]
        out.append(int(lv.last[i]))
        i = int(lv.parent[i])
        h -= 1
    return tuple(reversed(out))


def _same_level_hit(lv: _Level) -> tuple[int, int] | None:
    order = np.lexsort((lv.last, lv.codes))
    sc, sl = lv.codes[order], lv.last[order]
    starts = np.flatnonzero(np.r_[True, sc[1:] != sc[:-1]])
    ends = np.r_[starts[1:], sc.shape[0]] - 1
    hit = np.flatnonzero(sl[starts] != sl[ends])
    if hit.size == 0:
        return None
    g = hit[0]
    return int(order[starts[g]]), int(order[ends[g]])


def _cross_level_hit(short: _Level, long: _Level) -> tuple[int, int] | None:
    # codes of the shorter level are unique once shorter cycles are ruled out
    order = np.argsort(short.codes, kind="stable")
    sc = short.codes[order]
    pos = np.searchsorted(sc, long.codes)
    pos = np.minimum(pos, sc.shape[0] - 1)
    match = sc[pos] == long.codes
    j = order[pos]
    hit = np.flatnonzero(match & (short.last[j] != long.last))
    if hit.size == 0:
        return None
    b = int(hit[0])
    return int(j[b]), b


def level_sizes(d: int, h: int) -> int:
    return 1 if h == 0 else (d + 1) * d ** (h - 1)


def girth_words(spec: GraphSpec, max_len: int, max_words: int = 60_000_000) -> WordGirth:
    """Shortest cycle through the identity, found without building the graph.

    ``max_words`` caps the size of one level (reaching length ``t`` needs
    the level ``ceil(t / 2)``); building a level beyond it raises
    ``MemoryError`` rather than silently truncating the search.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    q = spec.q
    gens_m = generator_matrix(spec)
    inv = np.asarray(spec.inverse, dtype=np.int16)
    ident = encode(np.array([IDENTITY.entries], dtype=np.int64), q)
    levels = [_Level(ident, np.array([-1], dtype=np.int16), np.array([0], dtype=np.int64))]
    enumerated = 1
    for t in range(1, max_len + 1):
        h = (t + 1) // 2
        if len(levels) <= h:
            need = level_sizes(spec.d, h)
            if need > max_words:
                raise MemoryError(f"cycle length {t} needs {need} words in one level (cap {max_words})")
            levels.append(_extend(levels[-1], gens_m, inv, q))
            enumerated += levels[-1].codes.shape[0]
        if t % 2:
            hit = _cross_level_hit(levels[h - 1], levels[h])
            if hit is not None:
                a, b = _word(levels, h - 1, hit[0]), _word(levels, h, hit[1])
                return _accept(spec, a, b, t, max_len, enumerated)
        else:
            hit = _same_level_hit(levels[h])
            if hit is not None:
                a, b = _word(levels, h, hit[0]), _word(levels, h, hit[1])
                return _accept(spec, a, b, t, max_len, enumerated)
    return WordGirth(girth=None, exceeded=True, max_len=max_len, words_enumerated=enumerated)


def _accept(spec: GraphSpec, a: Word, b: Word, t: int, max_len: int, enumerated: int) -> WordGirth:
    gens = spec.gens
    cycle = star(a, inverse(b, gens), gens)
    if len(cycle) != t or not is_irreducible(cycle, gens):
        raise AssertionError(f"collision {a} / {b} does not give a reduced word of length {t}")
    if gens.inverse[cycle[-1]] == cycle[0]:
        raise AssertionError(f"cycle word {cycle} is not cyclically reduced; a shorter cycle was missed")
    img = IDENTITY
    for x in cycle:
        img = project(matmul(img.entries, spec.generator_images[x].entries, spec.q), spec.q)
    if img != IDENTITY:
        raise AssertionError(f"cycle word {cycle} does not map to the identity")
    return WordGirth(girth=t, exceeded=False, max_len=max_len, witness=cycle, words_enumerated=enumerated)
