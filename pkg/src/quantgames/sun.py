"""Special-unitary group helpers: generalized Gell-Mann basis and coordinates."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .linalg import dagger, frozen


@lru_cache(maxsize=None)
def _gell_mann(n: int) -> tuple[np.ndarray, ...]:
    mats = []
    for k in range(1, n):
        for j in range(k):
            sym = np.zeros((n, n), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1.0
            anti = np.zeros((n, n), dtype=np.complex128)
            anti[j, k] = -1j
            anti[k, j] = 1j
            mats += [frozen(sym), frozen(anti)]
        d = np.zeros(n)
        d[:k] = 1.0
        d[k] = -k
        mats.append(frozen(np.diag(d * np.sqrt(2.0 / (k * (k + 1)))).astype(np.complex128)))
    return tuple(mats)


def gell_mann(n: int) -> tuple[np.ndarray, ...]:
    """The N²−1 generalized Gell-Mann matrices, normalized to ``tr(T_a T_b) = 2δ_ab``.

    Ordering: for k = 2..N, the symmetric and antisymmetric pair for each
    j < k (interleaved), then the k-th diagonal matrix. For N=2 this is
    (σ1, σ2, σ3); for N=3 it is the standard λ1..λ8.
    """
    if n < 2:
        raise ValueError("gell_mann needs n >= 2")
    return _gell_mann(n)


def gell_mann_stack(n: int) -> np.ndarray:
    return np.stack(gell_mann(n))


def hermitian_from_coefficients(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    n = int(round(np.sqrt(c.shape[-1] + 1)))
    if n * n - 1 != c.shape[-1]:
        raise ValueError(f"{c.shape[-1]} is not N²−1 for any N")
    return np.tensordot(c, gell_mann_stack(n), axes=([-1], [0]))


def coefficients_of(h) -> np.ndarray:
    """Coefficients of a traceless Hermitian ``h`` over the Gell-Mann basis."""
    h = np.asarray(h, dtype=np.complex128)
    basis = gell_mann_stack(h.shape[-1])
    return 0.5 * np.einsum("...ij,aji->...a", h, basis).real


def su_exp(coeffs) -> np.ndarray:
    """``exp(i Σ c_a T_a)`` via Hermitian eigendecomposition; broadcasts over leading axes."""
    h = hermitian_from_coefficients(coeffs)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)[..., None, :]) @ dagger(v)


def su_log(u) -> np.ndarray:
    """Coefficients ``c`` with ``su_exp(c) = u`` for ``u`` in SU(N).

    Eigenphases are taken in (−π, π] and the largest ones are shifted by
    −2π until they sum to zero, so the generator is traceless.
    """
    u = np.asarray(u, dtype=np.complex128)
    # Schur form of a normal matrix is diagonal; this keeps eigenvectors unitary
    # even for degenerate spectra.
    from scipy.linalg import schur

    t, z = schur(u, output="complex")
    phases = np.angle(np.diag(t))
    turns = int(round(phases.sum() / (2 * np.pi)))
    order = np.argsort(-phases, kind="stable")
    for idx in order[: max(turns, 0)]:
        phases[idx] -= 2 * np.pi
    for idx in order[::-1][: max(-turns, 0)]:
        phases[idx] += 2 * np.pi
    h = (z * phases) @ dagger(z)
    return coefficients_of(h)


def euler_su2(theta, alpha, beta) -> np.ndarray:
    """SU(2) element ``[[e^{iα}cos θ/2, e^{iβ}sin θ/2], [−e^{−iβ}sin θ/2, e^{−iα}cos θ/2]]``.

    Broadcasts over array arguments.
    """
    theta, alpha, beta = np.broadcast_arrays(
        np.asarray(theta, float), np.asarray(alpha, float), np.asarray(beta, float)
    )
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out = np.empty(theta.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = np.exp(1j * alpha) * c
    out[..., 0, 1] = np.exp(1j * beta) * s
    out[..., 1, 0] = -np.exp(-1j * beta) * s
    out[..., 1, 1] = np.exp(-1j * alpha) * c
    return out


def haar_su(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-random SU(n) matrices (QR of a complex Ginibre matrix, phase-fixed)."""
    shape = (n, n) if size is None else (size, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    q = q * (d / np.abs(d))[..., None, :]
    det = np.linalg.det(q)
    return q / (det ** (1.0 / n))[..., None, None]


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    return hermitian_from_coefficients(rng.standard_normal(n * n - 1))
