"""Lattice constructions: brute-force scans are the oracles for enumeration."""

import itertools
import random

import pytest

from dpmod2 import errors, groups, intlinalg
from dpmod2.lattice import (LatticeIsometry, automorphism_group,
                            automorphism_order, build_del_pezzo,
                            build_plain_root_lattice, enumerate_roots,
                            gram_isometry_count, inner_product, is_root,
                            lattice_coords, root_components, root_reflection,
                            simple_roots, sublattice_gram, weyl_generators)

WEYL_ORDERS = {3: 12, 4: 120, 5: 1920, 6: 51840, 7: 2903040, 8: 696729600}
AUT_ORDERS = {3: 24, 4: 240, 5: 3840, 6: 103680, 7: 2903040, 8: 696729600}
ROOTS = {3: 8, 4: 20, 5: 40, 6: 72, 7: 126, 8: 240}


def _apply(g, p):
    return g.apply_ambient(p)


def test_inner_product_examples():
    e0 = (1, 0, 0, 0)
    e1 = (0, 1, 0, 0)
    e2 = (0, 0, 1, 0)
    assert inner_product(e0, e0) == -1
    assert inner_product(e1, e1) == 1
    assert inner_product(e1, e2) == 0
    K8 = (3,) + (-1,) * 8
    assert inner_product(K8, K8) == -1  # -9 + n at n = 8
    with pytest.raises(errors.LengthMismatch):
        inner_product((1, 0), (1, 0, 0))


@pytest.mark.parametrize("n", range(3, 9))
def test_del_pezzo_invariants(n):
    L = build_del_pezzo(n)
    assert len(L.basis) == n
    assert all(L.dot(b, L.K) == 0 for b in L.basis)
    assert all(L.gram[i][i] % 2 == 0 for i in range(n))
    assert abs(intlinalg.det(L.gram)) == 9 - n
    assert intlinalg.is_positive_definite(L.gram)
    # deterministic construction
    assert L == build_del_pezzo(n)


@pytest.mark.parametrize("n", (2, 9))
def test_del_pezzo_out_of_range(n):
    with pytest.raises(errors.OutOfRange):
        build_del_pezzo(n)


@pytest.mark.parametrize("rank", (1, 11))
def test_plain_out_of_range(rank):
    with pytest.raises(errors.OutOfRange):
        build_plain_root_lattice(rank)


@pytest.mark.parametrize("n", range(3, 9))
def test_root_counts(n):
    L = build_del_pezzo(n)
    R = enumerate_roots(L)
    assert len(R) == ROOTS[n]
    assert all(L.dot(v, v) == 2 and L.dot(v, L.K) == 0 for v in R)
    negs = {tuple(-c for c in v) for v in R}
    assert negs == set(R)
    assert list(R) == sorted(R)


@pytest.mark.parametrize("n", (3, 4, 5))
def test_roots_against_full_box_scan(n):
    """Independent oracle: scan the whole coordinate box with itertools."""
    L = build_del_pezzo(n)
    box = range(-2, 3)  # |v0| <= 1 for n <= 5, other coords bounded by sqrt(3)
    brute = sorted(v for v in itertools.product(box, repeat=n + 1)
                   if L.dot(v, v) == 2 and L.dot(v, L.K) == 0)
    assert list(enumerate_roots(L)) == brute


def test_plain_root_counts():
    assert len(enumerate_roots(build_plain_root_lattice(2))) == 6
    assert len(enumerate_roots(build_plain_root_lattice(8))) == 72
    for rank in range(2, 11):
        L = build_plain_root_lattice(rank)
        assert len(enumerate_roots(L)) == rank * (rank + 1)
        assert abs(intlinalg.det(L.gram)) == rank + 1


def test_plain_rank4_matches_del_pezzo_n4():
    """A4 is the n=4 del Pezzo type: same root count and censuses."""
    from dpmod2 import f2
    A4 = build_plain_root_lattice(4)
    D4 = build_del_pezzo(4)
    assert len(enumerate_roots(A4)) == len(enumerate_roots(D4)) == 20
    assert f2.value_census(f2.reduce(A4)) == f2.value_census(f2.reduce(D4))
    assert automorphism_order(A4) == automorphism_order(D4) == 240


@pytest.mark.parametrize("n", range(3, 9))
def test_root_reflection_properties(n):
    L = build_del_pezzo(n)
    R = enumerate_roots(L)
    random.seed(n)
    for alpha in random.sample(R, 5):
        s = root_reflection(L, alpha)
        assert s.apply_ambient(alpha) == tuple(-c for c in alpha)
        assert (s * s).is_identity()
        # fixes the orthogonal hyperplane
        for x in R:
            if L.dot(x, alpha) == 0:
                assert s.apply_ambient(x) == x
        # permutes the root set
        assert {s.apply_ambient(r) for r in R} == set(R)


def test_root_reflection_rejects_non_roots():
    L = build_del_pezzo(4)
    with pytest.raises(errors.NotARoot):
        root_reflection(L, (1, 0, 0, 0, 0))


@pytest.mark.parametrize("n", range(3, 9))
def test_simple_roots_shape(n):
    L = build_del_pezzo(n)
    simple = simple_roots(L)
    assert len(simple) == n
    # pairwise products of distinct simple roots are 0 or -1 (simply laced)
    for i, a in enumerate(simple):
        for b in simple[i + 1:]:
            assert L.dot(a, b) in (0, -1)


@pytest.mark.parametrize("n", range(3, 9))
def test_weyl_generator_count_and_order(n):
    L = build_del_pezzo(n)
    gens = weyl_generators(L)
    assert len(gens) == n
    G = groups.perm_from_action(gens, enumerate_roots(L), _apply)
    assert G.degree == ROOTS[n]
    assert G.order() == WEYL_ORDERS[n]


@pytest.mark.parametrize("n", (3, 4, 5))
def test_weyl_equals_all_root_reflections(n):
    L = build_del_pezzo(n)
    R = enumerate_roots(L)
    simple_group = groups.perm_from_action(weyl_generators(L), R, _apply)
    all_refl = [root_reflection(L, a) for a in R]
    full_group = groups.perm_from_action(all_refl, R, _apply)
    assert simple_group.order() == full_group.order()


@pytest.mark.parametrize("n", range(3, 9))
def test_minus_one_in_weyl_iff_7_or_8(n):
    L = build_del_pezzo(n)
    G = groups.perm_from_action(weyl_generators(L), enumerate_roots(L), _apply)
    neg = groups.action_perm(LatticeIsometry.minus_identity(L),
                             enumerate_roots(L), _apply)
    assert G.contains(neg) == (n in (7, 8))


@pytest.mark.parametrize("n", range(3, 9))
def test_automorphism_group_orders(n):
    L = build_del_pezzo(n)
    gens = automorphism_group(L)
    assert LatticeIsometry.minus_identity(L) in gens
    G = groups.perm_from_action(gens, enumerate_roots(L), _apply)
    # chain order equals the independent backtracking count
    assert G.order() == automorphism_order(L) == AUT_ORDERS[n]


@pytest.mark.parametrize("n", range(3, 9))
def test_generators_preserve_gram_and_permute_roots(n):
    L = build_del_pezzo(n)
    R = set(enumerate_roots(L))
    for g in weyl_generators(L) + automorphism_group(L):
        M, G = g.matrix, L.gram
        for i in range(n):
            for j in range(n):
                v = sum(M[i][a] * G[a][b] * M[j][b]
                        for a in range(n) for b in range(n))
                assert v == G[i][j]
        assert {g.apply_ambient(r) for r in R} == R


@pytest.mark.parametrize("n", (3, 4, 5))
def test_root_action_is_faithful(n):
    """Only the identity isometry fixes every root (exhaustive closure)."""
    L = build_del_pezzo(n)
    R = enumerate_roots(L)
    ident = LatticeIsometry.identity(L)
    elems = groups.closure(automorphism_group(L), lambda a, b: a * b, ident)
    assert len(elems) == AUT_ORDERS[n]
    for u in elems:
        if all(u.apply_ambient(r) == r for r in R):
            assert u == ident


def test_isometry_compose_inverse_roundtrip():
    L = build_del_pezzo(5)
    gens = weyl_generators(L)
    random.seed(1)
    for _ in range(10):
        u = random.choice(gens) * random.choice(gens) * random.choice(gens)
        assert (u * u.inverse()).is_identity()
        assert (u.inverse() * u).is_identity()


def test_ambient_matrix_for_reflections():
    """Reflections extend to the ambient lattice fixing K; -1 does not (n<=6)."""
    import numpy as np
    L = build_del_pezzo(4)
    s = root_reflection(L, enumerate_roots(L)[0])
    M = np.array(s.ambient_matrix())
    J = np.diag(np.array(L.signs))
    assert np.array_equal(M.T @ J @ M, J)
    assert tuple(M @ np.array(L.K)) == L.K
    with pytest.raises(ValueError):
        LatticeIsometry.minus_identity(L).ambient_matrix()
    # -1 does extend when the discriminant is 1 (n = 8)
    L8 = build_del_pezzo(8)
    M8 = np.array(LatticeIsometry.minus_identity(L8).ambient_matrix())
    assert tuple(M8 @ np.array(L8.K)) == L8.K


def test_lattice_coords_roundtrip():
    L = build_del_pezzo(6)
    random.seed(4)
    for _ in range(20):
        x = tuple(random.randint(-3, 3) for _ in range(L.n))
        v = tuple(sum(xi * b[j] for xi, b in zip(x, L.basis))
                  for j in range(L.width))
        assert lattice_coords(L, v) == x
    with pytest.raises(ValueError):
        lattice_coords(L, (1, 0, 0, 0, 0, 0, 0))  # not orthogonal to K


def test_root_components_and_component_isometries():
    L = build_del_pezzo(3)
    comps = root_components(L)
    assert tuple(len(c) for c in comps) == (2, 6)
    orders = [gram_isometry_count(sublattice_gram(L, c)) for c in comps]
    assert orders == [2, 12]


def test_plain_automorphism_orders():
    import math
    for rank in (5, 8):
        L = build_plain_root_lattice(rank)
        assert automorphism_order(L) == 2 * math.factorial(rank + 1)


def test_is_root_type_checks():
    L = build_del_pezzo(3)
    assert not is_root(L, (0, 1, -1))          # wrong width
    assert not is_root(L, (0, 1, -1, 0.0))     # non-integer entry
    assert is_root(L, (0, 1, -1, 0))
