"""Stability group of the initial state.

The Lie algebra is found as the null space of the real-linear map
``(X, Y) ↦ (X⊗I + I⊗Y)|Ψ⟩`` over pairs of traceless Hermitian matrices.
Its expected dimension Σd_i² − 1 follows from the multiplicities d_i of the
singular values of the coefficient matrix F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entangler import Entangler
from .errors import DimensionMismatch, NotMaximallyEntangled
from .game import Strategy, final_state
from .linalg import RANK_TOL, dagger, frozen, kron, polar_factors, real_nullspace
from .sun import gell_mann_stack

PLUS, MINUS = "plus", "minus"


@dataclass(frozen=True)
class GeneratorPair:
    """Generator ``x⊗I + I⊗y`` of a one-parameter subgroup of SU(N)×SU(N).

    ``parity`` is "plus" when y = x, "minus" when y = −x, None otherwise.
    ``phase`` is only set by the phase-inclusive variant.
    """

    x: np.ndarray
    y: np.ndarray
    parity: str | None = None
    phase: float | None = None

    @classmethod
    def symmetric(cls, x, sign: int) -> GeneratorPair:
        x = np.asarray(x, dtype=np.complex128)
        return cls(x, sign * x, PLUS if sign > 0 else MINUS)

    def operator(self) -> np.ndarray:
        n = self.x.shape[0]
        eye = np.eye(n)
        return kron(self.x, eye) + kron(eye, self.y)

    def norm(self) -> float:
        return math.sqrt(float(np.linalg.norm(self.x) ** 2 + np.linalg.norm(self.y) ** 2))

    def coefficients(self) -> np.ndarray:
        basis = gell_mann_stack(self.x.shape[0])
        cx = 0.5 * np.einsum("ij,aji->a", self.x, basis).real
        cy = 0.5 * np.einsum("ij,aji->a", self.y, basis).real
        return np.concatenate([cx, cy])


@dataclass(frozen=True)
class StabilityReport:
    basis: tuple[GeneratorPair, ...]
    dimension: int | None
    multiplicities: tuple[int, ...]
    predicted_dimension: int
    effective_manifold_dim: int
    singular_values: np.ndarray = field(repr=False)
    f_invertible: bool = True
    wz_residual: float | None = None
    tol: float = RANK_TOL
    frame: str = "tilde"


def state_matrix(e: Entangler, basis: str = "tilde") -> np.ndarray:
    """Coefficient matrix of the initial state in the chosen frame."""
    if basis == "tilde":
        return np.asarray(e.f_tilde)
    if basis == "computational":
        return np.asarray(e.f)
    raise ValueError(f"unknown basis {basis!r}; use 'tilde' or 'computational'")


def _action_matrix(f: np.ndarray, phase_inclusive: bool) -> np.ndarray:
    """Real matrix of (c, d[, t]) ↦ Re/Im of vec(X F + F Yᵀ − t F)."""
    n = f.shape[0]
    basis = gell_mann_stack(n)
    cols_x = np.einsum("aij,jk->aik", basis, f).reshape(len(basis), -1)
    cols_y = np.einsum("ij,akj->aik", f, basis).reshape(len(basis), -1)
    cols = [cols_x, cols_y]
    if phase_inclusive:
        cols.append(-f.reshape(1, -1))
    c = np.concatenate(cols, axis=0).T
    return np.concatenate([c.real, c.imag], axis=0)


def _split_parity(null: np.ndarray, dim: int) -> tuple[np.ndarray, list[str | None]]:
    """Rotate a null-space basis into eigenvectors of the swap (c, d) ↦ (d, c)."""
    k = dim
    swap = np.zeros((2 * k, 2 * k))
    swap[:k, k:] = np.eye(k)
    swap[k:, :k] = np.eye(k)
    restricted = null.T @ swap @ null
    if np.linalg.norm(restricted @ restricted - np.eye(null.shape[1])) > 1e-8:
        return null, [None] * null.shape[1]
    w, v = np.linalg.eigh(0.5 * (restricted + restricted.T))
    # minus (−1) eigenvectors first, then plus
    rotated = null @ v
    tags = [PLUS if x > 0 else MINUS for x in w]
    return rotated, tags


def _pairs_from_vectors(vectors: np.ndarray, n: int, tags, phase_inclusive: bool) -> list[GeneratorPair]:
    basis = gell_mann_stack(n)
    k = n * n - 1
    out = []
    for col, tag in zip(vectors.T, tags):
        # fix the overall sign deterministically: largest |coefficient| positive
        lead = int(np.argmax(np.abs(col) > np.abs(col).max() - 1e-12))
        if col[lead] < 0:
            col = -col
        x = np.tensordot(col[:k], basis, axes=1)
        y = np.tensordot(col[k : 2 * k], basis, axes=1)
        phase = float(col[2 * k]) if phase_inclusive else None
        out.append(GeneratorPair(frozen(x), frozen(y), tag, phase))
    return out


def _structure(f: np.ndarray, tol: float):
    pf = polar_factors(f, tol)
    mult = pf.multiplicities
    n = f.shape[0]
    sq = sum(d * d for d in mult)
    return pf, mult, sq - 1, 2 * n * n - sq - 1


def stability_algebra(
    e: Entangler,
    tol: float = RANK_TOL,
    basis: str = "tilde",
    phase_inclusive: bool = False,
) -> StabilityReport:
    """Orthonormal basis of the stability Lie algebra of ``|Ψ_in⟩``.

    Raises AmbiguousRank when a singular value of the linear map lies within a
    factor 10 of the rank threshold ``tol·s_max``.
    """
    f = state_matrix(e, basis)
    n = f.shape[0]
    a = _action_matrix(f, phase_inclusive)
    null = real_nullspace(a, tol, check_gap=True)
    sv = np.linalg.svd(a, compute_uv=False)
    tags: list[str | None] = [None] * null.shape[1]
    if null.shape[1] and not phase_inclusive and np.allclose(f, f.T, atol=1e-12, rtol=0):
        null, tags = _split_parity(null, n * n - 1)
    pairs = _pairs_from_vectors(null, n, tags, phase_inclusive)
    pf, mult, predicted, effective = _structure(f, tol)
    return StabilityReport(
        basis=tuple(pairs),
        dimension=len(pairs),
        multiplicities=mult,
        predicted_dimension=predicted,
        effective_manifold_dim=effective,
        singular_values=frozen(sv),
        f_invertible=pf.invertible and pf.diag[-1] > tol,
        wz_residual=_wz_residual(pf, pairs) if pf.diag[-1] > tol and not phase_inclusive else None,
        tol=tol,
        frame=basis,
    )


def _wz_residual(pf, pairs) -> float:
    """max ‖W − Z‖ with W = U†xU and Z = −V yᵀ V† for F = U·D·V (infinitesimal W = Z)."""
    u, v = pf.left, pf.right
    worst = 0.0
    for g in pairs:
        w = dagger(u) @ g.x @ u
        z = -(v @ g.y.T @ dagger(v))
        worst = max(worst, float(np.linalg.norm(w - z)))
    return worst


def stability_structure(e: Entangler, tol: float = RANK_TOL, basis: str = "tilde") -> StabilityReport:
    """Block structure from the polar decomposition of F, without the explicit basis.

    When F is invertible the W = Z identification is checked on the
    computed algebra and reported as ``wz_residual``.
    """
    f = state_matrix(e, basis)
    pf, mult, predicted, effective = _structure(f, tol)
    residual = None
    invertible = bool(pf.diag[-1] > tol)
    if invertible:
        residual = stability_algebra(e, tol, basis).wz_residual
    return StabilityReport(
        basis=(),
        dimension=None,
        multiplicities=mult,
        predicted_dimension=predicted,
        effective_manifold_dim=effective,
        singular_values=frozen(pf.diag),
        f_invertible=invertible,
        wz_residual=residual,
        tol=tol,
        frame=basis,
    )


def generator_residual(pair: GeneratorPair, psi: np.ndarray) -> float:
    """``‖(x⊗I + I⊗y)|ψ⟩‖`` after scaling the pair to unit norm."""
    n = pair.x.shape[0]
    f = np.asarray(psi).reshape(n, n)
    out = pair.x @ f + f @ pair.y.T
    return float(np.linalg.norm(out) / pair.norm())


def verify_generators(pairs, e: Entangler, basis: str = "tilde") -> float:
    """Largest normalized residual of the given generators on the initial state."""
    f = state_matrix(e, basis)
    worst = 0.0
    for p in pairs:
        if p.x.shape != f.shape or p.y.shape != f.shape:
            raise DimensionMismatch(f"generator shape {p.x.shape} does not match N={f.shape[0]}")
        worst = max(worst, generator_residual(p, f.reshape(-1)))
    return worst


def span_residual(pairs, report: StabilityReport) -> float:
    """Largest distance of a unit-normalized generator from the span of ``report.basis``."""
    if not report.basis:
        return max((1.0 for _ in pairs), default=0.0)
    q = np.stack([b.coefficients() for b in report.basis], axis=1)
    q, _ = np.linalg.qr(q)
    worst = 0.0
    for p in pairs:
        c = p.coefficients()
        c = c / np.linalg.norm(c)
        worst = max(worst, float(np.linalg.norm(c - q @ (q.T @ c))))
    return worst


def f_tilde_unitary(e: Entangler, tol: float = 1e-9) -> np.ndarray:
    """``√N·F`` in the computational basis; NotMaximallyEntangled unless it is unitary."""
    ft = math.sqrt(e.n) * np.asarray(e.f)
    dev = float(np.linalg.norm(ft @ dagger(ft) - np.eye(e.n)))
    if dev > tol:
        raise NotMaximallyEntangled(f"‖F̃F̃† − I‖ = {dev:.3e} exceeds {tol:.1e}")
    return ft


def _u(s) -> np.ndarray:
    return s.unitary if isinstance(s, Strategy) else np.asarray(s, dtype=np.complex128)


def countermove(u1, u2, u_a, e: Entangler, tol: float = 1e-9) -> Strategy:
    """Bob's reply ``U₂·F̃·(Ū₁)†·Ū_A·F̃†`` reproducing the outcome of (U₁, U₂) against U_A."""
    ft = f_tilde_unitary(e, tol)
    m = _u(u2) @ ft @ dagger(np.conj(_u(u1))) @ np.conj(_u(u_a)) @ dagger(ft)
    # strip the rounding drift from det = 1 without changing the move
    m = m / np.linalg.det(m) ** (1.0 / e.n)
    return Strategy(m, ("explicit_matrix",))


def stabilizer_factor(u1, u_a, e: Entangler, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Second factor ``(U_A†U₁, F̃·(Ū_A)†·Ū₁·F̃†)`` of the countermove decomposition."""
    ft = f_tilde_unitary(e, tol)
    a, b = _u(u_a), _u(u1)
    return dagger(a) @ b, ft @ dagger(np.conj(a)) @ np.conj(b) @ dagger(ft)


def fidelity(e: Entangler, pair1, pair2) -> float:
    """``|⟨ψ_out(pair1)|ψ_out(pair2)⟩|``."""
    p1 = final_state(e, _u(pair1[0]), _u(pair1[1]))
    p2 = final_state(e, _u(pair2[0]), _u(pair2[1]))
    return float(abs(np.vdot(p1, p2)))
