"""Dense complex linear-algebra kernel.

Matrices are plain ``complex128`` numpy arrays. Every routine is a pure
function of its inputs and takes an explicit tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousRank, NotHermitian

RANK_TOL = 1e-9
RECON_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def frozen(a: np.ndarray) -> np.ndarray:
    """Return a read-only copy of ``a``."""
    out = np.array(a, copy=True)
    out.setflags(write=False)
    return out


def kron(a, b) -> np.ndarray:
    """Kronecker product, ``(a⊗b)[i*rb+k, j*cb+l] = a[i,j]*b[k,l]``."""
    a, b = as_matrix(a), as_matrix(b)
    ra, ca = a.shape
    rb, cb = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a)).swapaxes(-1, -2)


def is_unitary(u, tol: float = RECON_TOL) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return bool(np.linalg.norm(u @ dagger(u) - np.eye(u.shape[0])) <= tol)


def hermitian_spectrum(h, tol: float = RANK_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors (as columns) of ``h``.

    Raises NotHermitian when ``‖h − h†‖ > tol``.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotHermitian(f"matrix is not square: {h.shape}")
    skew = float(np.linalg.norm(h - dagger(h)))
    if skew > tol:
        raise NotHermitian(f"‖h − h†‖ = {skew:.3e} exceeds tol {tol:.1e}")
    w, v = np.linalg.eigh(0.5 * (h + dagger(h)))
    return w, v


def group_multiplicities(values, tol: float) -> list[int]:
    """Single-linkage grouping of a sorted sequence: a gap below ``tol`` joins groups."""
    values = list(values)
    if not values:
        return []
    groups = [1]
    for prev, cur in zip(values, values[1:]):
        if abs(cur - prev) < tol:
            groups[-1] += 1
        else:
            groups.append(1)
    return groups


@dataclass(frozen=True)
class PolarFactors:
    """``f = left @ diag(diag) @ right`` with unitary ``left`` and ``right``."""

    left: np.ndarray
    diag: np.ndarray
    right: np.ndarray
    multiplicities: tuple[int, ...]

    def reconstruct(self) -> np.ndarray:
        return self.left @ np.diag(self.diag) @ self.right

    @property
    def invertible(self) -> bool:
        return bool(self.diag[-1] > 0)


def polar_factors(f, tol: float = RANK_TOL) -> PolarFactors:
    """Factor ``f = U·D·V`` with D non-negative, diagonal and sorted descending.

    Equal diagonal values (single-linkage gap < tol) are grouped into
    multiplicities; these fix the block structure of the stability group.
    """
    f = as_matrix(f)
    if f.shape[0] != f.shape[1]:
        raise ValueError(f"polar_factors needs a square matrix, got {f.shape}")
    u, s, vh = np.linalg.svd(f)
    return PolarFactors(
        left=frozen(u),
        diag=frozen(s),
        right=frozen(vh),
        multiplicities=tuple(group_multiplicities(s, tol)),
    )


def singular_gap_ok(s: np.ndarray, threshold: float, factor: float = 10.0) -> bool:
    """True when no singular value falls inside ``(threshold/factor, threshold*factor)``."""
    inside = (s > threshold / factor) & (s < threshold * factor)
    return not bool(np.any(inside))


def real_nullspace(m, tol: float = RANK_TOL, *, check_gap: bool = False) -> np.ndarray:
    """Orthonormal basis (as columns) of the null space of a real matrix.

    A right singular vector is null when its singular value is below
    ``tol * s_max``. With ``check_gap`` an AmbiguousRank is raised if some
    singular value lies within a factor 10 of that threshold.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0))
    if rows == 0:
        return np.eye(cols)
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        return np.eye(cols)
    threshold = tol * smax
    if check_gap and not singular_gap_ok(s, threshold):
        raise AmbiguousRank(
            f"singular values {s[(s > threshold / 10) & (s < threshold * 10)]} "
            f"lie within 10x of the rank threshold {threshold:.3e}"
        )
    rank = int(np.sum(s >= threshold))
    return vt[rank:].T.copy()
