"""Equilibrium analysis on finite strategy grids.

Pure equilibria are checked as ε-equilibria over a grid of SU(N) moves.
For N = 2 the grid covers SU(2) through Euler angles; for N ≥ 3 it is a
cube of su(N) coefficients in [−π, π] plus the classical moves, which is a
heuristic cover of the group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .entangler import Entangler
from .errors import BudgetExceeded, InvalidParams, InvalidProbabilities, OrderingViolation
from .game import GameDefinition, Strategy, _check_dims, _unitary_of, batch_probabilities, payoff_tables
from .sun import euler_su2, su_exp, su_log

ALICE, BOB = "alice", "bob"
TIE_TOL = 1e-12
DEFAULT_BUDGET = 5_000_000
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_S3 = math.sqrt(3.0)


@dataclass(frozen=True)
class SearchGrid:
    """Finite strategy grid and equilibrium slack.

    ``resolution`` is the number of steps per angle; ``budget`` caps the
    number of (alice, bob) pairs a scan may tabulate.
    """

    resolution: int = 12
    epsilon: float = 0.0
    refine_steps: int = 0
    bound: float = math.pi
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if int(self.resolution) != self.resolution or self.resolution < 2:
            raise InvalidParams(f"resolution must be an integer >= 2, got {self.resolution}")
        if not self.epsilon >= 0:
            raise InvalidParams(f"epsilon must be >= 0, got {self.epsilon}")
        if int(self.refine_steps) != self.refine_steps or self.refine_steps < 0:
            raise InvalidParams(f"refine_steps must be a non-negative integer, got {self.refine_steps}")
        if not self.bound > 0:
            raise InvalidParams("bound must be positive")

    def describe(self, n: int) -> dict:
        return {
            "resolution": self.resolution,
            "epsilon": self.epsilon,
            "refine_steps": self.refine_steps,
            "parametrization": "euler" if n == 2 else "su_coefficients",
            "bound": self.bound if n != 2 else None,
            "points_per_player": grid_size(n, self),
        }


def grid_size(n: int, grid: SearchGrid) -> int:
    r = grid.resolution
    if n == 2:
        return (r + 1) * r * r
    return r ** (n * n - 1) + n


def _euler_coords(grid: SearchGrid) -> np.ndarray:
    r = grid.resolution
    theta = np.arange(r + 1) * math.pi / r
    phase = np.arange(r) * 2 * math.pi / r
    return np.array(list(itertools.product(theta, phase, phase)))


def _su_axis(grid: SearchGrid) -> np.ndarray:
    r = grid.resolution
    return -grid.bound + 2 * grid.bound * np.arange(r) / r


def _su_chunks(n: int, grid: SearchGrid, e: Entangler | None, chunk: int = 4096):
    """Yield (coords, unitaries) blocks of the su(N) grid in lexicographic order."""
    axis = _su_axis(grid)
    dim = n * n - 1
    block = []
    for c in itertools.product(axis, repeat=dim):
        block.append(c)
        if len(block) == chunk:
            coords = np.array(block)
            yield coords, su_exp(coords)
            block = []
    if block:
        coords = np.array(block)
        yield coords, su_exp(coords)
    if e is not None:
        coords = np.array([su_log(m) for m in e.moves])
        yield coords, np.array(e.moves)


def strategy_grid(n: int, grid: SearchGrid, e: Entangler | None = None) -> tuple[np.ndarray, np.ndarray]:
    """All grid points as (coords, unitaries); for N ≥ 3 the classical moves of ``e`` are appended."""
    if n == 2:
        coords = _euler_coords(grid)
        return coords, euler_su2(coords[:, 0], coords[:, 1], coords[:, 2])
    if grid_size(n, grid) > grid.budget:
        raise BudgetExceeded(f"{grid_size(n, grid)} grid points exceed the budget {grid.budget}")
    parts = list(_su_chunks(n, grid, e))
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def _grid_chunks(n: int, grid: SearchGrid, e: Entangler):
    if n == 2:
        yield strategy_grid(2, grid)
    else:
        if grid_size(n, grid) > grid.budget:
            raise BudgetExceeded(f"{grid_size(n, grid)} grid points exceed the budget {grid.budget}")
        yield from _su_chunks(n, grid, e)


def _make_unitary(n: int, coords: np.ndarray) -> np.ndarray:
    if n == 2:
        return euler_su2(coords[..., 0], coords[..., 1], coords[..., 2])
    return su_exp(coords)


def _strategy_of(n: int, coords) -> Strategy:
    c = tuple(float(x) for x in coords)
    if n == 2:
        return Strategy(euler_su2(*c), ("euler", c))
    return Strategy(su_exp(np.array(c)), ("su_coefficients", c))


def _lex_less(a, b) -> bool:
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return False


def _responder_payoffs(game: GameDefinition, e: Entangler, opponent: np.ndarray, side: str, moves: np.ndarray):
    if side == ALICE:
        probs = batch_probabilities(e, moves, opponent[None])[:, 0]
        table = game.payoff_a
    else:
        probs = batch_probabilities(e, opponent[None], moves)[0]
        table = game.payoff_b
    return probs.reshape(len(moves), -1) @ table.reshape(-1)


def _golden_max(f, lo: float, hi: float, iters: int = 40) -> tuple[float, float]:
    a, b = lo, hi
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def best_response(
    game: GameDefinition,
    e: Entangler,
    opponent,
    side: str,
    grid: SearchGrid,
) -> tuple[Strategy, float]:
    """Responder's best grid move against a fixed opponent, optionally refined.

    Ties within 1e−12 go to the lexicographically smallest coordinate vector.
    Refinement only accepts strict improvements, so it never lowers the
    reported payoff.
    """
    if side not in (ALICE, BOB):
        raise InvalidParams(f"side must be 'alice' or 'bob', got {side!r}")
    opp = _unitary_of(opponent)
    n = e.n
    _check_dims(game, e, opp)
    best_val, best_c = -math.inf, None
    for coords, moves in _grid_chunks(n, grid, e):
        vals = _responder_payoffs(game, e, opp, side, moves)
        top = vals.max()
        if top > best_val + TIE_TOL:
            best_val, best_c = top, None
        if top >= best_val - TIE_TOL:
            for c in coords[vals >= best_val - TIE_TOL]:
                if best_c is None or _lex_less(c, best_c):
                    best_c = c
            best_val = max(best_val, top)

    x = np.array(best_c, dtype=float)
    if grid.refine_steps:
        step = (math.pi / grid.resolution) if n == 2 else 2 * grid.bound / grid.resolution

        def value(c):
            return float(_responder_payoffs(game, e, opp, side, _make_unitary(n, c)[None])[0])

        for _ in range(grid.refine_steps):
            for k in range(len(x)):
                def along(t, k=k):
                    y = x.copy()
                    y[k] = t
                    return value(y)

                t, v = _golden_max(along, x[k] - step, x[k] + step)
                if v > best_val + TIE_TOL:
                    x[k], best_val = t, v
            step /= 2
    return _strategy_of(n, x), float(best_val)


@dataclass(frozen=True)
class NashPoint:
    n: int
    alice_coords: tuple[float, ...]
    bob_coords: tuple[float, ...]
    payoff_alice: float
    payoff_bob: float

    @property
    def alice(self) -> Strategy:
        return _strategy_of(self.n, self.alice_coords)

    @property
    def bob(self) -> Strategy:
        return _strategy_of(self.n, self.bob_coords)

    @property
    def payoffs(self) -> tuple[float, float]:
        return self.payoff_alice, self.payoff_bob


@dataclass(frozen=True)
class NashScan:
    """Result of a pure ε-equilibrium scan; iterates as NashPoint in grid order."""

    points: tuple[NashPoint, ...]
    grid: SearchGrid
    points_per_player: int
    max_regret_alice: np.ndarray = field(repr=False)
    max_regret_bob: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k):
        return self.points[k]


def pure_nash_scan(game: GameDefinition, e: Entangler, grid: SearchGrid) -> NashScan:
    """All grid pairs where no unilateral grid deviation gains more than ε.

    Raises BudgetExceeded when the pair count exceeds ``grid.budget``.
    """
    n = e.n
    _check_dims(game, e)
    size = grid_size(n, grid)
    if size * size > grid.budget:
        raise BudgetExceeded(f"{size}² = {size * size} pairs exceed the budget {grid.budget}")
    coords, moves = strategy_grid(n, grid, e)
    pa, pb = payoff_tables(game, e, moves, moves)
    slack = grid.epsilon + TIE_TOL
    best_a = pa.max(axis=0, keepdims=True)
    best_b = pb.max(axis=1, keepdims=True)
    mask = (pa >= best_a - slack) & (pb >= best_b - slack)
    ii, jj = np.nonzero(mask)
    pts = tuple(
        NashPoint(n, tuple(coords[i].tolist()), tuple(coords[j].tolist()), float(pa[i, j]), float(pb[i, j]))
        for i, j in zip(ii, jj)
    )
    return NashScan(pts, grid, len(coords), best_a[0] - pa.min(axis=0), best_b[:, 0] - pb.min(axis=1))


def du_li_threshold(r: float, s: float, t: float, p: float, *, require_reward: bool = False) -> float:
    """γ_B with sin²γ_B = (p − s) / ((p − s) + (t − r)).

    The ordering t > r > p > s is enforced. The companion condition
    r + p > t + s is only checked when ``require_reward`` is set, since the
    formula itself stays well defined without it.
    """
    if not (t > r > p > s):
        raise OrderingViolation(f"need t > r > p > s, got r={r}, s={s}, t={t}, p={p}")
    if require_reward and not (r + p > t + s):
        raise OrderingViolation(f"need r + p > t + s, got {r + p} <= {t + s}")
    return math.asin(math.sqrt((p - s) / ((p - s) + (t - r))))


def du_li_sin2(r: float, s: float, t: float, p: float) -> float:
    """sin²γ_B evaluated directly from the ratio."""
    du_li_threshold(r, s, t, p)
    return (p - s) / ((p - s) + (t - r))


# Three-strategy mixed realizability


def mixed_probabilities(alpha, beta) -> np.ndarray:
    """Outcome distribution (p₁, p₂, p₃) reachable with the diagonal move of angles (α, β)."""
    alpha, beta = np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float)
    eps = np.exp(2j * np.pi / 3)
    u1 = np.exp(-1j * (alpha + beta))
    u2 = np.exp(1j * (beta - 2 * alpha))
    p1 = np.abs(1 + u1 + u2) ** 2 / 9
    p2 = np.abs(1 + eps * u1 + eps**2 * u2) ** 2 / 9
    return np.stack([p1, p2, 1 - p1 - p2], axis=-1)


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of the realizability test for a target distribution.

    ``gamma_values`` and ``cos_delta_values`` are aligned; ``tg_gamma_roots``
    holds the real roots of the cubic only (the γ = π/2 candidate has no
    finite tangent).
    """

    p: tuple[float, float, float]
    lam: float
    mu: float
    tg_gamma_roots: tuple[float, ...]
    gamma_values: tuple[float, ...]
    cos_delta_values: tuple[float, ...]
    feasible: bool
    witness: tuple[float, float] | None
    witness_error: float | None

    @property
    def cos_delta(self) -> float | None:
        """Candidate closest to the admissible range |cos δ| ≤ 1."""
        if not self.cos_delta_values:
            return None
        return min(self.cos_delta_values, key=lambda c: (max(abs(c) - 1.0, 0.0), abs(c)))


def _cubic(lam: float, mu: float) -> np.ndarray:
    a = 3 - 2 * lam - 4 * mu
    return np.array([-2 * _S3 * lam, a, 2 * _S3 * (2 - lam), a])


def _polish(coeffs: np.ndarray, g: float, steps: int = 3) -> float:
    d = np.polyder(coeffs)
    for _ in range(steps):
        slope = np.polyval(d, g)
        if slope == 0:
            break
        g -= np.polyval(coeffs, g) / slope
    return float(g)


def mixed_feasibility(p1: float, p2: float, p3: float, tol: float = 1e-9) -> FeasibilityResult:
    """Decide whether (p₁, p₂, p₃) is reachable by a single diagonal move.

    Solves the cubic in g = tan γ, evaluates cos δ = (λ − cos²γ)/cos γ on
    each real root, and reconstructs (α, β) from the first admissible pair.
    """
    p = np.array([p1, p2, p3], dtype=float)
    if not np.all(np.isfinite(p)) or np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-12:
        raise InvalidProbabilities(f"expected non-negative probabilities summing to 1, got {p.tolist()}")
    # rounding can leave a complementary probability at −1e−17
    p = np.clip(p, 0.0, None)
    lam = (9 * p[0] - 1) / 4
    mu = (9 * p[1] - 1) / 4
    coeffs = _cubic(lam, mu)
    roots = []
    for g in np.roots(coeffs):
        if abs(g.imag) <= 1e-10 * max(1.0, abs(g)):
            roots.append(_polish(np.trim_zeros(coeffs, "f"), g.real))
    roots.sort()
    gammas = [math.atan(g) for g in roots]
    cds = [float((lam - math.cos(gm) ** 2) / math.cos(gm)) for gm in gammas]
    if abs(lam) <= tol:
        # the cubic loses its leading term; the root at infinity is γ = π/2
        gammas.append(math.pi / 2)
        cds.append(float((3 - 4 * mu) / (2 * _S3)))

    witness, err = None, None
    for gm, c in zip(gammas, cds):
        if abs(c) > 1 + tol:
            continue
        d = math.acos(min(1.0, max(-1.0, c)))
        w = (-2 * d / 3, -gm - d / 3)
        e = float(np.max(np.abs(mixed_probabilities(*w) - p)))
        if err is None or e < err:
            witness, err = w, e
    return FeasibilityResult(
        p=tuple(float(x) for x in p),
        lam=float(lam),
        mu=float(mu),
        tg_gamma_roots=tuple(roots),
        gamma_values=tuple(gammas),
        cos_delta_values=tuple(cds),
        feasible=witness is not None,
        witness=witness,
        witness_error=err,
    )


def brute_force_feasibility(target, points: int = 2000, tol: float = 1e-3) -> tuple[bool, float]:
    """Grid oracle: min over (α, β) of max_i |p_i − target_i| on a ``points``² grid."""
    t = np.asarray(target, dtype=float)
    a = np.linspace(0, 2 * np.pi, points, endpoint=False)
    best = math.inf
    for row in np.array_split(a, max(1, points // 200)):
        al, be = np.meshgrid(row, a, indexing="ij")
        best = min(best, float(np.max(np.abs(mixed_probabilities(al, be) - t), axis=-1).min()))
    return best <= tol, best
