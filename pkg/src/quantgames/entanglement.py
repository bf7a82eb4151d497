"""Entanglement of the initial state: reduced density matrix and its classification.

Also holds the N=3 closed forms: the reduced density matrix as a function of
(τ, ρ, σ), the vanishing condition for its off-diagonal entries, the
double-root test for its spectrum, and the catalog of maximal and doubly
degenerate parameter points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angles import canonical, circular_distance
from .entangler import Entangler
from .linalg import dagger, frozen, group_multiplicities, hermitian_spectrum

DEGENERACY_TOL = 1e-9


class Classification(str, enum.Enum):
    MAXIMAL = "Maximal"
    DOUBLY_DEGENERATE = "DoublyDegenerate"
    GENERIC = "Generic"
    PURE = "Pure"


@dataclass(frozen=True)
class EntanglementReport:
    rho_a: np.ndarray
    spectrum: np.ndarray
    classification: Classification
    degeneracy_tol: float

    @property
    def multiplicities(self) -> list[int]:
        return group_multiplicities(self.spectrum, self.degeneracy_tol)


def classify_spectrum(spectrum, tol: float = DEGENERACY_TOL) -> Classification:
    """Classify an ascending spectrum of a trace-one density matrix."""
    spectrum = np.asarray(spectrum, dtype=float)
    n = spectrum.size
    if np.all(np.abs(spectrum - 1.0 / n) < tol):
        return Classification.MAXIMAL
    if abs(spectrum[-1] - 1.0) < tol and np.all(np.abs(spectrum[:-1]) < tol):
        return Classification.PURE
    groups = group_multiplicities(spectrum, tol)
    if len(groups) == 2 and 2 in groups:
        return Classification.DOUBLY_DEGENERATE
    return Classification.GENERIC


def reduced_density(e: Entangler, tol: float = DEGENERACY_TOL) -> EntanglementReport:
    """``ρ_A = F·F†`` of the initial state, its spectrum and classification."""
    rho = e.f @ dagger(e.f)
    w, _ = hermitian_spectrum(rho, tol=1e-10)
    return EntanglementReport(
        rho_a=frozen(rho),
        spectrum=frozen(w),
        classification=classify_spectrum(w, tol),
        degeneracy_tol=tol,
    )


def is_maximal(e: Entangler, tol: float = DEGENERACY_TOL) -> bool:
    """True when ``√N·F`` is unitary, i.e. ρ_A = I/N."""
    ft = math.sqrt(e.n) * e.f
    return bool(np.linalg.norm(ft @ dagger(ft) - np.eye(e.n)) < tol)


def off_diagonal_n3(tau, rho, sigma):
    """The entries (a, b, c) = 9·(ρ_12, ρ_13, ρ_23) of the N=3 reduced density matrix."""
    t, r, s = np.asarray(tau), np.asarray(rho), np.asarray(sigma)
    a = np.exp(1j * (3 * r + s + 2 * t)) + np.exp(-1j * (r + 2 * t)) + np.exp(-1j * (2 * r + s))
    b = np.exp(1j * (3 * r + 2 * s + t)) + np.exp(-1j * (2 * r + t)) + np.exp(-1j * (r + 2 * s))
    c = np.exp(1j * (s - t)) + np.exp(-1j * (r - t)) + np.exp(1j * (r - s))
    return a, b, c


def closed_form_rho_n3(tau: float, rho: float, sigma: float) -> np.ndarray:
    """Reduced density matrix of the N=3 initial state, in the Fourier product basis.

    Diagonal 1/3; the upper triangle is (a, b, c)/9 from :func:`off_diagonal_n3`
    and the lower triangle its conjugate.
    """
    a, b, c = (complex(x) for x in off_diagonal_n3(tau, rho, sigma))
    return np.array(
        [[3, a, b], [a.conjugate(), 3, c], [b.conjugate(), c.conjugate(), 3]],
        dtype=np.complex128,
    ) / 9.0


def phasor_sum(alpha, beta):
    return np.exp(1j * (np.asarray(alpha) + beta)) + np.exp(-1j * np.asarray(alpha)) + np.exp(-1j * np.asarray(beta))


def maximal_condition(alpha: float, beta: float, tol: float = 1e-9) -> bool:
    """True when ``e^{i(α+β)} + e^{−iα} + e^{−iβ}`` vanishes."""
    return bool(abs(phasor_sum(alpha, beta)) < tol)


MAXIMAL_PHASOR_SOLUTIONS = (
    (0.0, 2 * math.pi / 3),
    (0.0, -2 * math.pi / 3),
    (2 * math.pi / 3, 0.0),
    (-2 * math.pi / 3, 0.0),
    (2 * math.pi / 3, -2 * math.pi / 3),
    (-2 * math.pi / 3, 2 * math.pi / 3),
)


@dataclass(frozen=True)
class DoubleRoot:
    degenerate: bool
    double_root: float | None
    third_root: float | None


def _angle_diff_zero_or_pi(x: float, tol: float) -> bool:
    return circular_distance(x, 0.0) < tol or circular_distance(x, math.pi) < tol


def double_root_condition(a: complex, b: complex, c: complex, tol: float = 1e-8) -> DoubleRoot:
    """Double-root test for ``λ³ − (|a|²+|b|²+|c|²)λ − 2Re(a·b̄·c) = 0``.

    The cubic is the characteristic polynomial of the off-diagonal part
    ``[[0,a,b],[ā,0,c],[b̄,c̄,0]]``. It has a repeated root exactly when
    |a| = |b| = |c| and arg a − arg b + arg c ∈ {0, π}; the roots are then
    −s·|a| (twice) and 2s·|a| with s the sign of Re(a·b̄·c).
    """
    a, b, c = complex(a), complex(b), complex(c)
    mods = np.array([abs(a), abs(b), abs(c)])
    if np.all(mods < tol):
        return DoubleRoot(True, 0.0, 0.0)
    if mods.max() - mods.min() >= tol or np.any(mods < tol):
        return DoubleRoot(False, None, None)
    arg = math.atan2(a.imag, a.real) - math.atan2(b.imag, b.real) + math.atan2(c.imag, c.real)
    if not _angle_diff_zero_or_pi(arg, tol):
        return DoubleRoot(False, None, None)
    sign = 1.0 if (a * b.conjugate() * c).real >= 0 else -1.0
    r = float(mods.mean())
    return DoubleRoot(True, -sign * r, 2 * sign * r)


def off_diagonal_cubic_roots(a: complex, b: complex, c: complex) -> np.ndarray:
    """Roots of the off-diagonal characteristic cubic, ascending (independent of the test above)."""
    s = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2
    q = 2 * (complex(a) * complex(b).conjugate() * complex(c)).real
    return np.sort(np.roots([1.0, 0.0, -s, -q]).real)


# Eq. (f7) families as (τ, ρ, σ) offsets in units of π relative to σ, with the
# listed σ values. Stored as Fractions of π.
_S7 = tuple(Fraction(k, 9) for k in (6, 8, 10, 12, 14, 16, 18))
_S9 = tuple(Fraction(k, 9) for k in (0, 2, 4, 6, 8, 10, 12, 14, 16))
_S_OMITTED = (Fraction(2, 9), Fraction(4, 9))
_THIRD = Fraction(2, 3)

_FAMILIES = (
    # (τ(σ), ρ(σ), σ values)
    (lambda s: (s - _THIRD, s - _THIRD), _S7),
    (lambda s: (s + _THIRD, s + _THIRD), _S9),
    (lambda s: (s - _THIRD, s), _S7),
    (lambda s: (s + _THIRD, s), _S9),
    (lambda s: (s, s - _THIRD), _S7),
    (lambda s: (s, s + _THIRD), _S9),
)

_DEGENERATE = (
    (Fraction(0), Fraction(1, 3), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(5, 3), Fraction(0)),
    (Fraction(1, 2), Fraction(0), Fraction(0)),
    (Fraction(3, 2), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(0), Fraction(3, 2)),
)


def _mod2(f: Fraction) -> Fraction:
    return f % 2


@dataclass(frozen=True)
class CatalogN3:
    """Parameter points (τ, ρ, σ) as exact multiples of π, realized in radians on demand."""

    maximal_fractions: tuple[tuple[Fraction, Fraction, Fraction], ...]
    degenerate_fractions: tuple[tuple[Fraction, Fraction, Fraction], ...]

    @property
    def maximal_triples(self) -> list[tuple[float, float, float]]:
        return [tuple(float(x) * math.pi for x in t) for t in self.maximal_fractions]

    @property
    def degenerate_points(self) -> list[tuple[float, float, float]]:
        return [tuple(float(x) * math.pi for x in t) for t in self.degenerate_fractions]

    def contains_maximal(self, triple, tol: float = 1e-9) -> bool:
        return any(triple_distance(triple, t) < tol for t in self.maximal_triples)


def catalog_n3(complete: bool = False) -> CatalogN3:
    """The maximal-entanglement triples of the six families and the 7 degenerate points.

    The published family lists give 48 triples. ``complete=True`` also adds
    σ = 2π/9 and 4π/9 to the three families listed with seven σ values,
    which are maximal as well (54 triples in total).
    """
    seen = []
    for rule, sigmas in _FAMILIES:
        values = sigmas + (_S_OMITTED if complete and len(sigmas) == 7 else ())
        for s in values:
            tau, rho = rule(s)
            triple = (_mod2(tau), _mod2(rho), _mod2(s))
            if triple not in seen:
                seen.append(triple)
    return CatalogN3(tuple(seen), _DEGENERATE)


def triple_distance(a, b) -> float:
    """Euclidean distance between two angle triples, each coordinate taken mod 2π."""
    return math.sqrt(sum(circular_distance(x, y) ** 2 for x, y in zip(a, b)))


def canonical_triple(t) -> tuple[float, float, float]:
    return tuple(canonical(x) for x in t)


def maximal_grid_scan(points_per_axis: int = 90, tol: float = 1e-6) -> list[tuple[int, int, int]]:
    """Grid indices (i, j, k) of (2πi/n, 2πj/n, 2πk/n) where ρ_A = I/3 within ``tol``.

    Vectorized over the whole grid via :func:`off_diagonal_n3`; the returned
    list is in lexicographic index order.
    """
    n = points_per_axis
    ang = np.arange(n) * 2 * np.pi / n
    found = []
    for i in range(n):
        t = ang[i]
        r, s = np.meshgrid(ang, ang, indexing="ij")
        a, b, c = off_diagonal_n3(t, r, s)
        dev = np.sqrt(2 * (np.abs(a) ** 2 + np.abs(b) ** 2 + np.abs(c) ** 2)) / 9
        for j, k in np.argwhere(dev < tol):
            found.append((i, int(j), int(k)))
    return found


def degenerate_points_one_parameter(n: int = 3600, tol: float = 1e-9):
    """Grid search of doubly-degenerate points with a single nonzero parameter.

    Returns a dict mapping "tau"/"rho"/"sigma" to the canonical angles
    (multiples of 2π/n) where the double-root condition holds.
    """
    ang = np.arange(n) * 2 * np.pi / n
    out = {}
    for name in ("tau", "rho", "sigma"):
        hits = []
        for x in ang:
            args = {"tau": 0.0, "rho": 0.0, "sigma": 0.0}
            args[name] = x
            a, b, c = off_diagonal_n3(args["tau"], args["rho"], args["sigma"])
            if double_root_condition(a, b, c, tol=tol).degenerate:
                hits.append(float(x))
        out[name] = hits
    return out


__all__ = [
    "CatalogN3",
    "Classification",
    "DoubleRoot",
    "EntanglementReport",
    "canonical_triple",
    "catalog_n3",
    "classify_spectrum",
    "degenerate_points_one_parameter",
    "closed_form_rho_n3",
    "double_root_condition",
    "is_maximal",
    "maximal_condition",
    "maximal_grid_scan",
    "off_diagonal_cubic_roots",
    "off_diagonal_n3",
    "reduced_density",
    "triple_distance",
]
