"""Payoff tables, strategies and evaluation of the quantized game."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entangler import Entangler
from .errors import DimensionMismatch, InvalidParams, NonUnitaryStrategy
from .linalg import dagger, frozen, kron
from .sun import euler_su2, su_exp

STRATEGY_TOL = 1e-10


@dataclass(frozen=True)
class GameDefinition:
    """Two N×N payoff tables; entry (k, k') is the payoff when Alice plays k and Bob k'."""

    payoff_a: np.ndarray
    payoff_b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.payoff_a, dtype=float)
        b = np.asarray(self.payoff_b, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
            raise InvalidParams(f"payoff_a must be N×N with N >= 2, got {a.shape}")
        if b.shape != a.shape:
            raise InvalidParams(f"payoff_b shape {b.shape} differs from payoff_a {a.shape}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise InvalidParams("payoffs must be finite")
        object.__setattr__(self, "payoff_a", frozen(a))
        object.__setattr__(self, "payoff_b", frozen(b))

    @property
    def n(self) -> int:
        return self.payoff_a.shape[0]

    @classmethod
    def symmetric(cls, payoff_a) -> GameDefinition:
        a = np.asarray(payoff_a, dtype=float)
        return cls(a, a.T)

    @classmethod
    def prisoners_dilemma(cls, r: float, s: float, t: float, p: float) -> GameDefinition:
        """Two-strategy game with rows/columns (C, D)."""
        return cls(np.array([[r, s], [t, p]]), np.array([[r, t], [s, p]]))

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.payoff_b - self.payoff_a.T) <= tol))

    def rstp(self) -> tuple[float, float, float, float]:
        if self.n != 2:
            raise InvalidParams("r, s, t, p are defined for two-strategy games")
        a = self.payoff_a
        return a[0, 0], a[0, 1], a[1, 0], a[1, 1]

    def is_prisoners_dilemma(self) -> bool:
        """Advisory predicate t > r > p > s for symmetric two-strategy games."""
        if self.n != 2 or not self.is_symmetric():
            return False
        r, s, t, p = self.rstp()
        return t > r > p > s

    def rewards_cooperation(self) -> bool:
        """Advisory predicate r + p > t + s."""
        r, s, t, p = self.rstp()
        return r + p > t + s


@dataclass(frozen=True)
class Strategy:
    """A move in SU(N) with a record of how it was specified.

    ``provenance`` is one of ``("classical", k)``, ``("su_coefficients", c)``,
    ``("euler", (θ, α, β))`` or ``("explicit_matrix",)``.
    """

    unitary: np.ndarray
    provenance: tuple = ("explicit_matrix",)

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=np.complex128)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise NonUnitaryStrategy(f"strategy must be a square matrix, got {u.shape}")
        dev = float(np.linalg.norm(u @ dagger(u) - np.eye(u.shape[0])))
        if dev > STRATEGY_TOL:
            raise NonUnitaryStrategy(f"‖UU† − I‖ = {dev:.3e}")
        det_err = abs(np.linalg.det(u) - 1.0)
        if det_err > STRATEGY_TOL:
            raise NonUnitaryStrategy(f"|det U − 1| = {det_err:.3e}")
        object.__setattr__(self, "unitary", frozen(u))

    @property
    def n(self) -> int:
        return self.unitary.shape[0]

    @classmethod
    def from_matrix(cls, m) -> Strategy:
        return cls(m, ("explicit_matrix",))

    @classmethod
    def from_su_coefficients(cls, coeffs) -> Strategy:
        c = tuple(float(x) for x in np.ravel(coeffs))
        return cls(su_exp(np.array(c)), ("su_coefficients", c))

    @classmethod
    def from_euler(cls, theta: float, alpha: float, beta: float) -> Strategy:
        return cls(euler_su2(theta, alpha, beta), ("euler", (float(theta), float(alpha), float(beta))))

    def times_phase(self, phase: float) -> np.ndarray:
        """``e^{iφ}·U`` as a bare matrix (no longer in SU(N) in general)."""
        return np.exp(1j * phase) * self.unitary


@dataclass(frozen=True)
class Outcome:
    probabilities: np.ndarray
    payoff_alice: float
    payoff_bob: float
    final_state: np.ndarray


def _unitary_of(s) -> np.ndarray:
    return s.unitary if isinstance(s, Strategy) else np.asarray(s, dtype=np.complex128)


def _check_dims(game: GameDefinition, e: Entangler, *mats):
    if game.n != e.n:
        raise DimensionMismatch(f"game has N={game.n} but entangler has N={e.n}")
    for m in mats:
        if m.shape != (e.n, e.n):
            raise DimensionMismatch(f"strategy shape {m.shape} does not match N={e.n}")


def final_state(e: Entangler, ua, ub) -> np.ndarray:
    """``J†(U_A⊗U_B)J|1,1⟩`` in the computational basis."""
    ua, ub = _unitary_of(ua), _unitary_of(ub)
    return dagger(e.j) @ (kron(ua, ub) @ e.psi_in)


def outcome_probabilities(e: Entangler, ua, ub) -> np.ndarray:
    return (np.abs(final_state(e, ua, ub)) ** 2).reshape(e.n, e.n)


def tilde_probabilities(e: Entangler, ua, ub) -> np.ndarray:
    """Same probabilities evaluated entirely in the Fourier product basis."""
    ua, ub = _unitary_of(ua), _unitary_of(ub)
    v = e.v
    uat, ubt = dagger(v) @ ua @ v, dagger(v) @ ub @ v
    # psi_tilde is J̃|1̃,1̃⟩
    out = np.conj(e.jtilde_diag) * (kron(uat, ubt) @ e.psi_tilde)
    # ⟨k̃,k̃'|φ⟩ with |k̃⟩ = V†|k⟩ means the k-th component of (V⊗V)φ.
    amps = kron(v, v) @ out
    return (np.abs(amps) ** 2).reshape(e.n, e.n)


def play(game: GameDefinition, e: Entangler, alice, bob) -> Outcome:
    ua, ub = _unitary_of(alice), _unitary_of(bob)
    _check_dims(game, e, ua, ub)
    if not isinstance(alice, Strategy):
        Strategy(ua)
    if not isinstance(bob, Strategy):
        Strategy(ub)
    psi = final_state(e, ua, ub)
    p = (np.abs(psi) ** 2).reshape(e.n, e.n)
    return Outcome(
        probabilities=frozen(p),
        payoff_alice=float(np.sum(game.payoff_a * p)),
        payoff_bob=float(np.sum(game.payoff_b * p)),
        final_state=frozen(psi),
    )


def batch_probabilities(e: Entangler, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Outcome probabilities for every pair of two stacks of moves.

    ``ua`` has shape (A, N, N), ``ub`` (B, N, N); the result is (A, B, N, N).
    """
    n = e.n
    ua = np.asarray(ua, dtype=np.complex128)
    ub = np.asarray(ub, dtype=np.complex128)
    left = np.einsum("aij,jk->aik", ua, e.f)
    w = np.einsum("aik,blk->abil", left, ub).reshape(len(ua), len(ub), n * n)
    out = w @ dagger(e.j).T
    return (np.abs(out) ** 2).reshape(len(ua), len(ub), n, n)


def payoff_tables(game: GameDefinition, e: Entangler, ua: np.ndarray, ub: np.ndarray, chunk: int = 256):
    """Expected payoffs (Alice, Bob) for every pair in ``ua × ub``, each of shape (A, B)."""
    _check_dims(game, e)
    pa = np.empty((len(ua), len(ub)))
    pb = np.empty((len(ua), len(ub)))
    fa, fb = game.payoff_a.reshape(-1), game.payoff_b.reshape(-1)
    for start in range(0, len(ua), chunk):
        probs = batch_probabilities(e, ua[start : start + chunk], ub).reshape(-1, len(ub), e.n * e.n)
        pa[start : start + chunk] = probs @ fa
        pb[start : start + chunk] = probs @ fb
    return pa, pb


def play_many(game: GameDefinition, e: Entangler, pairs) -> list[Outcome]:
    """Evaluate a sequence of (alice, bob) pairs; output order follows input order."""
    return [play(game, e, a, b) for a, b in pairs]


def classical_restriction(game: GameDefinition, e: Entangler) -> np.ndarray:
    """Payoffs of every classical pair, shape (N, N, 2) with [..., 0] Alice and [..., 1] Bob."""
    _check_dims(game, e)
    out = np.empty((e.n, e.n, 2))
    for k in range(e.n):
        for l in range(e.n):
            o = play(game, e, e.moves[k], e.moves[l])
            out[k, l] = (o.payoff_alice, o.payoff_bob)
    return out
