import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import legendre_by_squares

from quatcayley.basis import build_basis, select_generators
from quatcayley.primes import primes_upto
from quatcayley.projective import (
    IDENTITY,
    PGL2,
    PSL2,
    NonResidue,
    QTooSmall,
    SingularMatrix,
    admissible_q,
    canonicalize,
    decode,
    det,
    encode,
    enumerate_group,
    find_xy,
    image_generators,
    in_psl,
    legendre,
    matmul,
    phi,
    proj_inverse,
    proj_mul,
    project,
    sqrt_mod,
)
from quatcayley.quaternion import Quaternion, mul, norm

SMALL_Q = [int(q) for q in primes_upto(60) if q > 2]
coord = st.integers(-1000, 1000)
quats = st.builds(Quaternion, coord, coord, coord, coord)


def test_legendre_examples():
    assert legendre(1, 7) == 1
    assert legendre(11, 13) == -1
    assert legendre(11, 7) == 1
    assert legendre(26, 13) == 0


@pytest.mark.parametrize("q", SMALL_Q)
def test_legendre_matches_squares(q):
    for a in range(-q, 2 * q):
        assert legendre(a, q) == legendre_by_squares(a, q)


def test_sqrt_mod_examples():
    assert sqrt_mod(4, 13) == 2
    assert sqrt_mod(12, 13) == 5
    with pytest.raises(NonResidue):
        sqrt_mod(2, 5)


@pytest.mark.parametrize("q", [int(q) for q in primes_upto(400) if q > 2])
def test_sqrt_mod_all_residues(q):
    for a in range(q):
        if legendre_by_squares(a, q) >= 0:
            r = sqrt_mod(a, q)
            assert r * r % q == a % q and r <= q - r


def test_find_xy_examples():
    assert (find_xy(13).x, find_xy(13).y) == (0, 5)
    assert (find_xy(7).x, find_xy(7).y) == (2, 3)
    assert (find_xy(11).x, find_xy(11).y) == (1, 3)


@pytest.mark.parametrize("q", SMALL_Q)
def test_find_xy_is_lexicographically_minimal(q):
    ctx = find_xy(q)
    first = min((x, y) for x in range(q) for y in range(q) if (x * x + y * y + 1) % q == 0)
    assert (ctx.x, ctx.y) == first


@pytest.mark.parametrize("q", [7, 11, 13, 29, 59])
def test_phi_homomorphism_and_det(q):
    ctx = find_xy(q)
    rng = random.Random(q)
    for _ in range(2000):
        a = Quaternion(*(rng.randint(-500, 500) for _ in range(4)))
        b = Quaternion(*(rng.randint(-500, 500) for _ in range(4)))
        assert det(phi(a, ctx), q) == norm(a) % q
        assert phi(mul(a, b), ctx) == matmul(phi(a, ctx), phi(b, ctx), q)
    assert phi(Quaternion(1), ctx) == (1, 0, 0, 1)


@given(quats)
def test_det_phi_is_norm(a):
    ctx = find_xy(13)
    assert det(phi(a, ctx), 13) == norm(a) % 13


def test_project_examples():
    assert project((2, 0, 0, 2), 13) == IDENTITY
    assert project(phi(Quaternion(5), find_xy(13)), 13) == IDENTITY
    with pytest.raises(SingularMatrix):
        project((1, 2, 2, 4), 13)
    rng = random.Random(0)
    for _ in range(200):
        m = tuple(rng.randrange(13) for _ in range(4))
        if det(m, 13):
            assert project(m, 13) == project(tuple(3 * v for v in m), 13)


def test_center_maps_to_identity():
    for q in SMALL_Q:
        ctx = find_xy(q)
        for c in range(1, q):
            assert project(phi(Quaternion(c), ctx), q) == IDENTITY


def test_in_psl_examples():
    assert in_psl(IDENTITY, 13)
    a = Quaternion(1, 2)
    assert not in_psl(project(phi(a, find_xy(13)), 13), 13)
    assert in_psl(project(phi(a, find_xy(11)), 11), 11)


def test_group_sizes():
    assert len(enumerate_group(7, PGL2)) == 336
    assert len(enumerate_group(7, PSL2)) == 168
    assert len(enumerate_group(13, PGL2)) == 2184


@pytest.mark.parametrize("q", [3, 5, 7, 11])
def test_group_tables_against_brute_force(q):
    classes = set()
    for m in itertools.product(range(q), repeat=4):
        if det(m, q):
            classes.add(project(m, q))
    pgl = enumerate_group(q, PGL2)
    assert {pgl.element(i) for i in range(len(pgl))} == classes
    assert pgl.element(0) == IDENTITY
    psl = enumerate_group(q, PSL2)
    psl_set = {psl.element(i) for i in range(len(psl))}
    assert psl_set == {e for e in classes if in_psl(e, q)}
    for e, f in itertools.islice(itertools.product(sorted(psl_set, key=str), repeat=2), 5000):
        assert proj_mul(e, f, q) in psl_set
    for i in range(len(pgl)):
        assert pgl.index(pgl.element(i)) == i


def test_encode_decode_roundtrip():
    q = 17
    table = enumerate_group(q, PGL2)
    codes = encode(table.elements, q)
    assert len(np.unique(codes)) == len(table)
    assert (decode(codes, q) == table.elements).all()
    assert (canonicalize(table.elements * 5 % q, q) == table.elements).all()


def test_admissible_q():
    assert admissible_q(11, 7) and admissible_q(11, 13)
    assert not admissible_q(11, 11)
    assert not admissible_q(11, 5)  # 25 < 44
    assert not admissible_q(11, 15)
    assert not admissible_q(11, 2)


def test_image_generators_examples(spec_10_11_13, spec_10_11_7):
    s = spec_10_11_13
    assert len(set(s.generator_images)) == 11
    assert s.group_kind == PGL2 and s.legendre_pq == -1
    assert not any(in_psl(e, 13) for e in s.generator_images)
    s = spec_10_11_7
    assert len(set(s.generator_images)) == 11
    assert s.group_kind == PSL2 and s.legendre_pq == 1
    assert all(in_psl(e, 7) for e in s.generator_images)
    for spec in (spec_10_11_13, spec_10_11_7):
        assert not spec.theoretical_regime
        for e in spec.generator_images:
            # pure generators have order 2
            assert proj_mul(e, e, spec.q) == IDENTITY


@pytest.mark.parametrize("d,p", [(10, 11), (14, 19), (18, 19), (15, 17)])
def test_images_inversion_closed(d, p):
    gens = select_generators(d, build_basis(p))
    for q in SMALL_Q:
        if not admissible_q(p, q):
            continue
        spec = image_generators(gens, q)
        imgs = set(spec.generator_images)
        assert all(proj_inverse(e, q) in imgs for e in imgs)
        for i, j in enumerate(spec.inverse):
            assert proj_mul(spec.generator_images[i], spec.generator_images[j], q) == IDENTITY


def test_inadmissible_q_rejected():
    gens = select_generators(10, build_basis(11))
    with pytest.raises(ValueError):
        image_generators(gens, 11)
    with pytest.raises(ValueError):
        image_generators(gens, 5)


def test_qtoosmall_is_a_value_error():
    assert issubclass(QTooSmall, ValueError)
