"""Gate operators (entanglers) built from the cyclic group and the Cartan subalgebra.

The classical moves are powers of a (phase-decorated) cyclic shift. Any
operator commuting with all of them is diagonal in the product Fourier
basis, so the entangler is specified by the phases of its diagonal form::

    J̃ = exp i(Σ_k λ_k Λ_k⊗Λ_k + Σ_{k<l} μ_kl (Λ_k⊗Λ_l + Λ_l⊗Λ_k))
    J  = (V⊗V) J̃ (V†⊗V†)

with Λ_k = diag(1, 0, …, −1 at position k+1, …, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidDimension, InvalidParams
from .linalg import dagger, frozen, kron

DEFAULT_TOL = 1e-12


def _check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise InvalidDimension(f"number of strategies must be an integer >= 2, got {n!r}")
    return int(n)


def _decoration(n: int, phases) -> np.ndarray:
    if phases is None:
        return np.zeros(n)
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (n,):
        raise InvalidParams(f"expected {n} decoration phases, got shape {phases.shape}")
    return phases


def cyclic_shift(n: int, phases=None) -> np.ndarray:
    """The cyclic matrix with ``U|k⟩ = e^{iφ_k}|k+1⟩`` (indices mod N)."""
    n = _check_n(n)
    phi = _decoration(n, phases)
    u = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        u[(k + 1) % n, k] = np.exp(1j * phi[k])
    return u


def move_phases(n: int, phases=None) -> np.ndarray:
    """Phases φ_k with ``U_k|1⟩ = e^{iφ_k}|k⟩`` for the moves of :func:`cyclic_moves`."""
    n = _check_n(n)
    phi = _decoration(n, phases)
    k = np.arange(n)
    scale = np.pi * (n - 1) * k / n - k * phi.sum() / n
    accumulated = np.concatenate([[0.0], np.cumsum(phi[:-1])])
    return np.mod(scale + accumulated, 2 * np.pi)


def cyclic_moves(n: int, phases=None) -> tuple[np.ndarray, list[np.ndarray]]:
    """Cyclic matrix ``u`` and the N commuting classical moves ``U_k ∈ SU(N)``.

    ``U_k = c_k·u^{k−1}`` with ``c_k = e^{iπ(N−1)(k−1)/N}·e^{−i(k−1)Σφ/N}``; for the
    undecorated shift this is the textbook ``e^{iπ(N−1)(k−1)/N} U^{k−1}``.
    """
    n = _check_n(n)
    phi = _decoration(n, phases)
    u = cyclic_shift(n, phi)
    moves = []
    power = np.eye(n, dtype=np.complex128)
    for k in range(n):
        c = np.exp(1j * (np.pi * (n - 1) * k / n - k * phi.sum() / n))
        moves.append(frozen(c * power))
        power = u @ power
    return frozen(u), moves


def fourier_matrix(n: int, phases=None) -> np.ndarray:
    """Unitary V with ``V†·u·V = e^{iΣφ/N}·diag(1, ε, …, ε^{N−1})``, ε = e^{2πi/N}.

    Undecorated: ``V_ik = ε̄^{(i−1)(k−1)}/√N``. Decoration multiplies the rows
    by the gauge phases that turn the decorated shift into a scaled plain one;
    the first row stays ``(1, …, 1)/√N``.
    """
    n = _check_n(n)
    phi = _decoration(n, phases)
    idx = np.arange(n)
    v = np.exp(-2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)
    mean = phi.sum() / n
    gauge = np.concatenate([[0.0], np.cumsum(phi[:-1] - mean)])
    return np.exp(1j * gauge)[:, None] * v


def cartan_basis(n: int) -> list[np.ndarray]:
    """Diagonal Cartan generators Λ_k = diag(+1 at 1, −1 at k+1), k = 1..N−1."""
    n = _check_n(n)
    basis = []
    for k in range(1, n):
        d = np.zeros(n)
        d[0], d[k] = 1.0, -1.0
        basis.append(frozen(np.diag(d)))
    return basis


def cartan_diagonals(n: int) -> np.ndarray:
    """Rows are the diagonals of :func:`cartan_basis`, shape (N−1, N)."""
    return np.array([np.diag(m).real for m in cartan_basis(n)])


@dataclass(frozen=True)
class EntanglerParams:
    """Cartan coefficients and decoration phases of an entangler.

    ``lam`` holds the N−1 coefficients of Λ_k⊗Λ_k, ``mu`` the symmetric,
    zero-diagonal matrix of coefficients of Λ_k⊗Λ_l + Λ_l⊗Λ_k. Use
    :meth:`n3` for the (τ, ρ, σ) parametrization and :meth:`elw2` for the
    two-strategy gate ``exp(−iγ/2 σ2⊗σ2)``.
    """

    n: int
    lam: tuple[float, ...]
    mu: tuple[tuple[float, ...], ...]
    phases: tuple[float, ...] | None = None
    gamma: float | None = None

    def __post_init__(self):
        n = _check_n(self.n)
        lam = tuple(float(x) for x in np.asarray(self.lam, dtype=float).ravel())
        if len(lam) != n - 1:
            raise InvalidParams(f"expected {n - 1} λ coefficients, got {len(lam)}")
        mu = np.asarray(self.mu, dtype=float) if len(self.mu) else np.zeros((n - 1, n - 1))
        if mu.shape != (n - 1, n - 1):
            raise InvalidParams(f"μ must be {(n - 1, n - 1)}, got {mu.shape}")
        if not np.allclose(mu, mu.T, rtol=0, atol=1e-12):
            raise InvalidParams("μ must be symmetric (μ_kl = μ_lk)")
        if np.any(np.abs(np.diag(mu)) > 1e-12):
            raise InvalidParams("μ must have a zero diagonal")
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(mu))):
            raise InvalidParams("Cartan coefficients must be finite")
        phases = None
        if self.phases is not None:
            phases = tuple(float(x) for x in _decoration(n, self.phases))
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", tuple(tuple(float(x) for x in row) for row in mu))
        object.__setattr__(self, "phases", phases)

    @classmethod
    def cartan(cls, n: int, lam=None, mu=None, phases=None) -> EntanglerParams:
        n = _check_n(n)
        lam = np.zeros(n - 1) if lam is None else lam
        mu = np.zeros((n - 1, n - 1)) if mu is None else mu
        return cls(n=n, lam=tuple(np.ravel(lam)), mu=tuple(map(tuple, np.asarray(mu, float))), phases=phases)

    @classmethod
    def from_free(cls, n: int, values, phases=None) -> EntanglerParams:
        """Build from the N(N−1)/2 free values: λ_1..λ_{N−1}, then μ_kl for k<l row-major."""
        n = _check_n(n)
        values = np.asarray(values, dtype=float).ravel()
        if values.size != n * (n - 1) // 2:
            raise InvalidParams(f"expected {n * (n - 1) // 2} free parameters, got {values.size}")
        mu = np.zeros((n - 1, n - 1))
        iu = np.triu_indices(n - 1, 1)
        mu[iu] = values[n - 1 :]
        mu = mu + mu.T
        return cls.cartan(n, values[: n - 1], mu, phases)

    @classmethod
    def n3(cls, tau: float, rho: float, sigma: float, phases=None) -> EntanglerParams:
        """N=3 gate exp i(τ Λ⊗Λ + ρ(Λ⊗Δ+Δ⊗Λ) + σ Δ⊗Δ)."""
        return cls.cartan(3, [tau, sigma], [[0.0, rho], [rho, 0.0]], phases)

    @classmethod
    def elw2(cls, gamma: float) -> EntanglerParams:
        """The two-strategy gate ``J = exp(−iγ/2 σ2⊗σ2)``."""
        gamma = float(gamma)
        return cls(n=2, lam=(-gamma / 2,), mu=((0.0,),), phases=(np.pi, 0.0), gamma=gamma)

    @property
    def is_elw2(self) -> bool:
        return self.gamma is not None

    @property
    def free_parameter_count(self) -> int:
        return (self.n - 1) + (self.n - 1) * (self.n - 2) // 2

    def free_parameters(self) -> np.ndarray:
        if self.is_elw2:
            return np.array([self.gamma])
        mu = np.asarray(self.mu)
        return np.concatenate([self.lam, mu[np.triu_indices(self.n - 1, 1)]])

    @property
    def mu_matrix(self) -> np.ndarray:
        return np.asarray(self.mu, dtype=float)

    @property
    def tau(self) -> float:
        self._require_n3()
        return self.lam[0]

    @property
    def sigma(self) -> float:
        self._require_n3()
        return self.lam[1]

    @property
    def rho(self) -> float:
        self._require_n3()
        return self.mu[0][1]

    def _require_n3(self):
        if self.n != 3:
            raise AttributeError("τ, ρ, σ are defined for N=3 only")


def exponent_phases(params: EntanglerParams) -> np.ndarray:
    """N×N matrix θ with ``J̃|ĩ,j̃⟩ = e^{iθ_ij}|ĩ,j̃⟩``."""
    d = cartan_diagonals(params.n)
    lam = np.asarray(params.lam)
    mu = params.mu_matrix
    theta = np.einsum("k,ki,kj->ij", lam, d, d)
    # μ is symmetric with zero diagonal, so this counts each unordered pair once
    # per ordering, i.e. μ_kl(Λ_k⊗Λ_l + Λ_l⊗Λ_k) for k<l.
    theta += 0.5 * (np.einsum("kl,ki,lj->ij", mu, d, d) + np.einsum("kl,li,kj->ij", mu, d, d))
    return theta


def _elw2_gate(gamma: float) -> np.ndarray:
    s2 = np.array([[0, -1j], [1j, 0]])
    return np.cos(gamma / 2) * np.eye(4) - 1j * np.sin(gamma / 2) * kron(s2, s2)


@dataclass(frozen=True)
class Entangler:
    """A constructed gate operator together with its diagonal form and initial state.

    ``f`` is the coefficient matrix of ``|Ψ_in⟩ = J|1,1⟩ = Σ F_ij |i,j⟩`` and
    ``f_tilde`` the same state's coefficients in the Fourier product basis.
    """

    params: EntanglerParams
    v: np.ndarray
    jtilde_diag: np.ndarray
    j: np.ndarray
    f: np.ndarray
    f_tilde: np.ndarray
    cartan_basis: tuple[np.ndarray, ...]
    u: np.ndarray
    moves: tuple[np.ndarray, ...]
    move_phases: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def psi_in(self) -> np.ndarray:
        return self.f.reshape(-1)

    @property
    def psi_tilde(self) -> np.ndarray:
        return self.f_tilde.reshape(-1)

    def jtilde(self) -> np.ndarray:
        return np.diag(self.jtilde_diag)

    def classical(self, k: int):
        """Classical strategy k (1-based) as a :class:`~quantgames.game.Strategy`."""
        from .game import Strategy

        if not 1 <= k <= self.n:
            raise InvalidDimension(f"classical move index must lie in 1..{self.n}, got {k}")
        return Strategy(self.moves[k - 1], ("classical", k))


def build_entangler(params: EntanglerParams) -> Entangler:
    n = params.n
    u, moves = cyclic_moves(n, params.phases)
    v = fourier_matrix(n, params.phases)
    theta = exponent_phases(params)
    jt = np.exp(1j * theta).reshape(-1)
    vv = kron(v, v)
    if params.is_elw2:
        j = _elw2_gate(params.gamma)
    else:
        j = (vv * jt) @ dagger(vv)
    # (V†⊗V†)|1,1⟩ = r⊗r with r the conjugated first row of V.
    r = np.conj(v[0])
    m = np.exp(1j * theta) * np.outer(r, r)
    f = v @ m @ v.T
    return Entangler(
        params=params,
        v=frozen(v),
        jtilde_diag=frozen(jt),
        j=frozen(j),
        f=frozen(f),
        f_tilde=frozen(m),
        cartan_basis=tuple(cartan_basis(n)),
        u=u,
        moves=tuple(moves),
        move_phases=frozen(move_phases(n, params.phases)),
    )


def swap_operator(n: int) -> np.ndarray:
    s = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            s[j * n + i, i * n + j] = 1.0
    return s


@dataclass(frozen=True)
class FaithfulnessReport:
    max_commutator: float
    basis_map_ok: bool


def verify_faithfulness(e: Entangler, moves=None, tol: float = DEFAULT_TOL) -> FaithfulnessReport:
    """Check ``[J, U_k⊗U_l] = 0`` for all k, l and ``U_k|1⟩ = e^{iφ_k}|k⟩``."""
    moves = e.moves if moves is None else [np.asarray(m, dtype=np.complex128) for m in moves]
    n = e.n
    if len(moves) != n or any(m.shape != (n, n) for m in moves):
        raise DimensionMismatch(f"expected {n} moves of shape {(n, n)}")
    worst = 0.0
    for a in moves:
        for b in moves:
            ab = kron(a, b)
            worst = max(worst, float(np.linalg.norm(e.j @ ab - ab @ e.j)))
    ok = True
    for k, m in enumerate(moves):
        target = np.zeros(n, dtype=np.complex128)
        target[k] = np.exp(1j * e.move_phases[k])
        ok &= bool(np.linalg.norm(m[:, 0] - target) <= tol)
    return FaithfulnessReport(max_commutator=worst, basis_map_ok=ok)


def explicit_n3_moves(phi2: float, phi3: float, root: complex | None = None) -> list[np.ndarray]:
    """The general commuting N=3 moves with ``U_1 = I`` and ``U_k|1⟩ = e^{iφ_k}|k⟩``.

    ``root`` is the chosen cube root of unity (≠ 1), default e^{2πi/3}.
    """
    eps = np.exp(2j * np.pi / 3) if root is None else complex(root)
    e2, e3 = np.exp(1j * phi2), np.exp(1j * phi3)
    u2 = np.array(
        [[0, 0, eps / e3], [e2, 0, 0], [0, np.conj(eps) * e3 / e2, 0]], dtype=np.complex128
    )
    u3 = np.array(
        [[0, eps / e2, 0], [0, 0, np.conj(eps) * e2 / e3], [e3, 0, 0]], dtype=np.complex128
    )
    return [np.eye(3, dtype=np.complex128), u2, u3]


def explicit_n3_diagonalizer(phi2: float, phi3: float, root: complex | None = None) -> np.ndarray:
    """Common eigenbasis of :func:`explicit_n3_moves` as columns of V."""
    eps = np.exp(2j * np.pi / 3) if root is None else complex(root)
    e2, e3 = np.exp(1j * phi2), np.exp(1j * phi3)
    ec = np.conj(eps)
    return np.array(
        [[1, 1, 1], [e2, ec * e2, eps * e2], [ec * e3, e3, eps * e3]], dtype=np.complex128
    ) / np.sqrt(3)
