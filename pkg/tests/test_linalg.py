from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantgames.errors import AmbiguousRank, NotHermitian
from quantgames.linalg import dagger, group_multiplicities, hermitian_spectrum, kron, polar_factors, real_nullspace
from quantgames.sun import haar_su, random_hermitian

SIGMA2 = np.array([[0, -1j], [1j, 0]])


def elementwise_kron(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def cmat(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_sigma2_antidiagonal():
    k = kron(SIGMA2, SIGMA2)
    expected = np.zeros((4, 4))
    expected[0, 3] = expected[3, 0] = -1
    expected[1, 2] = expected[2, 1] = 1
    assert np.array_equal(k, expected)


def test_kron_matches_elementwise_definition(rng):
    a, b = cmat(rng, 3), cmat(rng, 3)
    assert np.max(np.abs(kron(a, b) - elementwise_kron(a, b))) < 1e-14


def test_kron_mixed_product(rng):
    for _ in range(20):
        a, b, c, d = (cmat(rng, 3) for _ in range(4))
        assert np.linalg.norm(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)) < 1e-12


def test_kron_rectangular():
    a = np.arange(6).reshape(2, 3)
    b = np.arange(2).reshape(2, 1) + 1
    assert np.array_equal(kron(a, b), np.kron(a, b))


def test_spectrum_identity():
    w, _ = hermitian_spectrum(np.eye(3))
    assert np.allclose(w, 1, atol=1e-15)


def charpoly_roots(h):
    return np.sort(np.roots(np.poly(h)).real)


def test_spectrum_against_characteristic_polynomial(rng):
    for _ in range(10):
        h = random_hermitian(4, rng)
        w, v = hermitian_spectrum(h)
        assert np.max(np.abs(w - charpoly_roots(h))) < 1e-9
        assert np.linalg.norm(h @ v - v * w) < 1e-12 * np.linalg.norm(h) * 10


def test_spectrum_invariants(rng):
    for _ in range(50):
        h = random_hermitian(5, rng)
        w, v = hermitian_spectrum(h)
        assert np.all(np.diff(w) >= 0)
        assert abs(w.sum() - np.trace(h).real) < 1e-12
        assert np.linalg.norm((v * w) @ dagger(v) - h) < 1e-11
        assert np.linalg.norm(dagger(v) @ v - np.eye(5)) < 1e-12


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_spectrum(np.array([[0, 1], [0, 0]]), tol=1e-9)


def test_polar_unitary_input(rng):
    u = haar_su(3, rng)
    pf = polar_factors(u)
    assert np.allclose(pf.diag, 1, atol=1e-12)
    assert pf.multiplicities == (3,)


def test_polar_diag():
    pf = polar_factors(np.diag([2.0, 1.0]))
    assert np.allclose(pf.diag, [2, 1])
    assert pf.multiplicities == (1, 1)


def test_polar_random_symmetric(rng):
    for _ in range(20):
        a = cmat(rng, 3)
        f = a + a.T
        pf = polar_factors(f)
        assert np.linalg.norm(pf.reconstruct() - f) < 1e-12
        assert np.all(pf.diag > 0) and np.all(np.diff(pf.diag) <= 0)
        assert sum(pf.multiplicities) == 3
        for m in (pf.left, pf.right):
            assert np.linalg.norm(m @ dagger(m) - np.eye(3)) < 1e-12


def test_polar_singular_allowed():
    pf = polar_factors(np.array([[1.0, 0.0], [0.0, 0.0]]))
    assert pf.diag[-1] == 0
    assert not pf.invertible


def test_group_multiplicities_single_linkage():
    assert list(group_multiplicities([3.0, 2.0 + 1e-11, 2.0, 1.0], 1e-9)) == [1, 2, 1]


def test_nullspace_zero_matrix():
    assert real_nullspace(np.zeros((2, 2))).shape == (2, 2)


def test_nullspace_identity():
    assert real_nullspace(np.eye(3)).shape == (3, 0)


def test_nullspace_rank_one():
    ns = real_nullspace(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert ns.shape == (2, 1)
    assert np.allclose(np.abs(ns[:, 0]), [1 / np.sqrt(2)] * 2)
    assert ns[0, 0] * ns[1, 0] < 0


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_nullspace_properties(rows, cols, rank, seed):
    rng = np.random.default_rng(seed)
    rank = min(rank, rows, cols)
    m = rng.normal(size=(rows, rank)) @ rng.normal(size=(rank, cols))
    tol = 1e-9
    ns = real_nullspace(m, tol)
    assert ns.shape[1] == cols - np.linalg.matrix_rank(m)
    if ns.shape[1]:
        assert np.linalg.norm(ns.T @ ns - np.eye(ns.shape[1])) < 1e-12
        assert np.max(np.linalg.norm(m @ ns, axis=0)) <= 10 * tol * max(np.linalg.norm(m), 1e-300)


def test_nullspace_ambiguous_gap():
    m = np.diag([1.0, 3e-9])
    with pytest.raises(AmbiguousRank):
        real_nullspace(m, 1e-9, check_gap=True)
    assert real_nullspace(np.diag([1.0, 1e-12]), 1e-9, check_gap=True).shape == (2, 1)
