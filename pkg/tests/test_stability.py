from __future__ import annotations

import math
from collections import Counter

import numpy as np
import pytest
from scipy.linalg import expm

from conftest import PI, n3
from quantgames.entangler import EntanglerParams, build_entangler
from quantgames.entanglement import catalog_n3
from quantgames.errors import AmbiguousRank, DimensionMismatch, NotMaximallyEntangled
from quantgames.game import final_state
from quantgames.linalg import dagger, kron
from quantgames.reference_generators import CORRECTED, REFERENCE, reference_case
from quantgames.stability import (
    MINUS,
    PLUS,
    GeneratorPair,
    countermove,
    fidelity,
    span_residual,
    stability_algebra,
    stability_structure,
    stabilizer_factor,
    state_matrix,
    verify_generators,
)
from quantgames.sun import haar_su, random_hermitian


def test_maximal_case_ii_dimension_and_span():
    point, pairs = reference_case("maximal_ii")
    e = n3(*point)
    rep = stability_algebra(e)
    assert rep.dimension == 8
    assert span_residual(pairs, rep) < 1e-9


def test_generic_point_two_commuting_generators():
    rep = stability_algebra(n3(0, PI / 2, 0))
    assert rep.dimension == 2
    g1, g2 = (g.operator() for g in rep.basis)
    assert np.linalg.norm(g1 @ g2 - g2 @ g1) < 1e-12


def test_degenerate_case_iv_dimension():
    assert stability_algebra(n3(PI / 2, 0, 0)).dimension == 4


@pytest.mark.parametrize(
    "point,mult,pred,eff",
    [
        ((0, 2 * PI / 3, 0), (3,), 8, 8),
        ((0, PI / 3, 0), (2, 1), 4, 12),
        ((0, PI / 2, 0), (1, 1, 1), 2, 14),
    ],
)
def test_structure(point, mult, pred, eff):
    rep = stability_structure(n3(*point))
    assert Counter(rep.multiplicities) == Counter(mult)
    assert rep.predicted_dimension == pred
    assert rep.effective_manifold_dim == eff
    assert rep.f_invertible
    assert rep.wz_residual < 1e-9


def test_dimension_matches_prediction_on_catalog_and_random(rng):
    cat = catalog_n3(complete=True)
    points = cat.maximal_triples + cat.degenerate_points + [tuple(t) for t in rng.uniform(0, 2 * PI, (100, 3))]
    for t in points:
        for basis in ("tilde", "computational"):
            rep = stability_algebra(n3(*t), basis=basis)
            assert rep.dimension == rep.predicted_dimension
            assert rep.dimension in (2, 4, 8)


def test_dimension_other_n(rng):
    for n in (2, 4):
        for _ in range(5):
            p = EntanglerParams.from_free(n, rng.uniform(-PI, PI, n * (n - 1) // 2))
            rep = stability_algebra(build_entangler(p))
            assert rep.dimension == rep.predicted_dimension


def test_elw2_maximal_is_su2():
    rep = stability_algebra(build_entangler(EntanglerParams.elw2(PI / 2)))
    assert rep.dimension == 3
    assert rep.effective_manifold_dim == 3


def test_basis_orthonormal_and_annihilates():
    for t in [(0, 2 * PI / 3, 0), (0, PI / 3, 0), (0.3, 1.1, 2.5)]:
        e = n3(*t)
        for basis in ("tilde", "computational"):
            rep = stability_algebra(e, basis=basis)
            gram = np.array(
                [
                    [np.trace(a.x @ b.x).real + np.trace(a.y @ b.y).real for b in rep.basis]
                    for a in rep.basis
                ]
            )
            assert np.allclose(gram, 2 * np.eye(len(rep.basis)), atol=1e-9)
            assert verify_generators(rep.basis, e, basis) < 1e-9
            for g in rep.basis:
                assert np.linalg.norm(g.x - dagger(g.x)) < 1e-12
                assert abs(np.trace(g.x)) < 1e-12 and abs(np.trace(g.y)) < 1e-12


def test_parity_tags():
    rep = stability_algebra(n3(0, 2 * PI / 3, 0))
    tags = Counter(g.parity for g in rep.basis)
    assert tags == {MINUS: 5, PLUS: 3}
    for g in rep.basis:
        sign = 1 if g.parity == PLUS else -1
        assert np.linalg.norm(g.y - sign * g.x) < 1e-9


def test_exponentiated_stability():
    for t in [(0, 2 * PI / 3, 0), (0, PI, 0), (0, PI / 2, 0)]:
        e = n3(*t)
        psi = e.psi_in
        for g in stability_algebra(e, basis="computational").basis:
            for s in (0.1, 1.0):
                moved = kron(expm(1j * s * g.x), expm(1j * s * g.y)) @ psi
                assert np.linalg.norm(moved - psi) < 1e-8


def test_maximal_stability_is_diagonal_type():
    for t in catalog_n3().maximal_triples[:10]:
        e = n3(*t)
        for basis in ("tilde", "computational"):
            ft = math.sqrt(3) * state_matrix(e, basis)
            for g in stability_algebra(e, basis=basis).basis:
                assert np.linalg.norm(g.y + ft @ np.conj(g.x) @ dagger(ft)) < 1e-9


@pytest.mark.parametrize("name", ["maximal_ii", "maximal_iii", "maximal_iv", "degenerate_i", "degenerate_ii", "degenerate_iv", "generic"])
def test_published_lists_certify(name):
    point, pairs = reference_case(name)
    e = n3(*point)
    assert verify_generators(pairs, e) < 1e-10
    assert span_residual(pairs, stability_algebra(e)) < 1e-9


def test_case_i_list_fits_the_other_maximal_point():
    point, pairs = reference_case("maximal_i")
    assert verify_generators(pairs, n3(*point)) > 1e-3
    fixed_point, _ = reference_case("maximal_i", corrected=True)
    assert fixed_point == pytest.approx((0, 4 * PI / 3, 0))
    e = n3(*fixed_point)
    assert verify_generators(pairs, e) < 1e-10
    assert span_residual(pairs, stability_algebra(e)) < 1e-9


def test_degenerate_iii_rescaled_list():
    point, pairs = reference_case("degenerate_iii")
    e = n3(*point)
    assert verify_generators(pairs, e) > 1e-3
    _, fixed = reference_case("degenerate_iii", corrected=True)
    assert verify_generators(fixed, e) < 1e-10
    assert span_residual(fixed, stability_algebra(e)) < 1e-9
    # only G1, G3, G4 differ from the printed list
    printed = REFERENCE["degenerate_iii"][1]
    changed = [k for k, (a, b) in enumerate(zip(printed, CORRECTED["degenerate_iii"][1])) if a != b]
    assert changed == [0, 2, 3]


def test_verify_generators_random_pair(rng):
    e = build_entangler(EntanglerParams.n3(*rng.uniform(0, 2 * PI, 3)))
    pair = GeneratorPair(random_hermitian(3, rng), random_hermitian(3, rng))
    assert verify_generators([pair], e) > 1e-3


def test_verify_generators_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        verify_generators([GeneratorPair(np.eye(2), np.eye(2))], n3(0, 0, 0))


def test_ambiguous_rank_near_degenerate_point():
    with pytest.raises(AmbiguousRank):
        stability_algebra(n3(0, PI / 3 + 3e-9, 0))
    assert stability_algebra(n3(0, PI / 3 + 1e-6, 0)).dimension == 2
    assert stability_algebra(n3(0, PI / 3 + 1e-12, 0)).dimension == 4


def test_phase_inclusive_contains_strict():
    for t in [(0, 2 * PI / 3, 0), (0.3, 1.1, 2.5)]:
        e = n3(*t)
        strict = stability_algebra(e)
        wide = stability_algebra(e, phase_inclusive=True)
        assert wide.dimension >= strict.dimension
        m = state_matrix(e)
        for g in wide.basis:
            assert np.linalg.norm(g.x @ m + m @ g.y.T - g.phase * m) < 1e-9


def test_countermove_identity_case(rng):
    e = n3(0, 2 * PI / 3, 0)
    u1, u2 = haar_su(3, rng), haar_su(3, rng)
    assert np.linalg.norm(countermove(u1, u2, u1, e).unitary - u2) < 1e-12


def test_countermove_fidelity(rng):
    cat = catalog_n3().maximal_triples
    for k in range(1000):
        if k % 100 == 0:
            e = n3(*cat[(k // 100) * 4])
        u1, u2, ua = haar_su(3, rng, 3)
        ub = countermove(u1, u2, ua, e)
        assert fidelity(e, (u1, u2), (ua, ub)) > 1 - 1e-10


def test_countermove_n2():
    rng = np.random.default_rng(3)
    e = build_entangler(EntanglerParams.elw2(PI / 2))
    for _ in range(50):
        u1, u2, ua = haar_su(2, rng, 3)
        assert fidelity(e, (u1, u2), (ua, countermove(u1, u2, ua, e))) > 1 - 1e-10


def test_countermove_requires_maximal(rng):
    with pytest.raises(NotMaximallyEntangled):
        countermove(np.eye(3), np.eye(3), np.eye(3), n3(0, PI / 2, 0))


def test_stabilizer_factor_fixes_state(rng):
    for t in catalog_n3().maximal_triples[::8]:
        e = n3(*t)
        for _ in range(20):
            u1, ua = haar_su(3, rng, 2)
            a, b = stabilizer_factor(u1, ua, e)
            assert np.linalg.norm(kron(a, b) @ e.psi_in - e.psi_in) < 1e-10


def test_final_state_is_invariant_under_stability_group(rng):
    e = n3(0, PI / 3, 0)
    rep = stability_algebra(e, basis="computational")
    ua, ub = haar_su(3, rng, 2)
    g = rep.basis[0]
    ga, gb = expm(0.4j * g.x), expm(0.4j * g.y)
    p1 = np.abs(final_state(e, ua, ub)) ** 2
    p2 = np.abs(final_state(e, ua @ ga, ub @ gb)) ** 2
    assert np.max(np.abs(p1 - p2)) < 1e-12
