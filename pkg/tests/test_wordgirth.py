import pytest

from quatcayley.basis import build_basis, select_generators
from quatcayley.graph import build, girth_bfs
from quatcayley.projective import IDENTITY, image_generators, proj_mul
from quatcayley.wordgirth import girth_words, level_sizes
from quatcayley.words import inverse, is_irreducible


def image(spec, word):
    e = IDENTITY
    for x in word:
        e = proj_mul(e, spec.generator_images[x], spec.q)
    return e


def brute_word_girth(spec, max_len):
    """Iterative deepening over cyclically reduced words; the first hit is the minimum."""
    inv = spec.inverse
    n = len(spec.generator_images)

    for t in range(1, max_len + 1):
        def limited(word, e):
            if len(word) == t:
                return word and e == IDENTITY and inv[word[-1]] != word[0]
            for x in range(n):
                if word and x == inv[word[-1]]:
                    continue
                if limited(word + (x,), proj_mul(e, spec.generator_images[x], spec.q)):
                    return True
            return False

        if limited((), IDENTITY):
            return t
    return None


def test_brute_force_agrees_small():
    spec = image_generators(select_generators(10, build_basis(11)), 7)
    assert girth_words(spec, 6).girth == brute_word_girth(spec, 4)


def test_examples(spec_10_11_13, spec_10_11_7):
    for spec in (spec_10_11_13, spec_10_11_7):
        wg = girth_words(spec, 12)
        assert not wg.exceeded and wg.girth == girth_bfs(build(spec))
        assert len(wg.witness) == wg.girth
        assert is_irreducible(wg.witness, spec.gens)
        assert image(spec, wg.witness) == IDENTITY


def test_sentinel(spec_10_11_13, spec_10_11_7):
    for spec in (spec_10_11_13, spec_10_11_7):
        wg = girth_words(spec, 2)
        assert wg.exceeded and wg.girth is None and wg.witness is None


def test_word_cap_raises(spec_10_11_13):
    with pytest.raises(MemoryError):
        girth_words(spec_10_11_13, 12, max_words=100)
    with pytest.raises(ValueError):
        girth_words(spec_10_11_13, 0)


def test_level_sizes():
    assert [level_sizes(10, h) for h in range(4)] == [1, 11, 110, 1100]


def test_witness_inverse_is_also_a_cycle(spec_10_11_13):
    wg = girth_words(spec_10_11_13, 12)
    assert image(spec_10_11_13, inverse(wg.witness, spec_10_11_13.gens)) == IDENTITY
