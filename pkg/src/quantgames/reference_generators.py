"""Published stability generators for the three-strategy game.

Each entry maps a named parameter point (τ, ρ, σ) to a list of
``(sign, coefficients)`` where the generator is ``X⊗I + sign·I⊗X`` and
``X = Σ c_a λ_a`` over the Gell-Mann matrices λ₁…λ₈. The lists are kept as
printed; they are certified in the Fourier product basis, where the state
coefficient matrix is ``e^{iθ_ij}/3``.

Two printed lists do not annihilate the state at their stated point:
``maximal_i`` is exact at ρ = 4π/3 instead of 2π/3, and three entries of
``degenerate_iii`` need rescaled λ₂, λ₅, λ₇ components. The corrected
versions live in ``CORRECTED``.
"""

from __future__ import annotations

import math

import numpy as np

from .stability import GeneratorPair
from .sun import gell_mann_stack

_S3 = math.sqrt(3.0)
_PI = math.pi

REFERENCE: dict[str, tuple[tuple[float, float, float], list[tuple[int, list[float]]]]] = {
    "maximal_i": ((0.0, 2 * _PI / 3, 0.0), [
        (-1, [1, -_S3, 0, 0, 0, 0, 0, 2 / _S3]),
        (-1, [0, _S3, 1, 1, 0, 0, 0, -1 / _S3]),
        (-1, [0, 0, 1, 0, 0, 2, 0, 1 / _S3]),
        (-1, [0, 1, 0, 0, 1, 0, 0, 0]),
        (-1, [0, 4, _S3, 0, 0, 0, 2, -3]),
        (1, [1, 0, 0, -0.5, 0, 0.25, -3 * _S3 / 4, -_S3 / 2]),
        (1, [0, 1, 0, -_S3 / 2, -1, -_S3 / 4, 0.25, 1.5]),
        (1, [0, 0, 1, -1, 0, -0.5, -_S3 / 2, 0]),
    ]),
    "maximal_ii": ((0.0, 0.0, 2 * _PI / 3), [
        (-1, [1, 0, 0, 0, 0, 0, -_S3, 2 / _S3]),
        (-1, [0, 0, -1, 2, 0, 0, 0, 1 / _S3]),
        (-1, [0, 0, -1, 0, 0, 1, _S3, -1 / _S3]),
        (-1, [0, 1, 0, 0, 0, 0, -1, 0]),
        (-1, [0, 0, _S3, 0, 2, 0, -4, 3]),
        (1, [1, 0, 0, 0.25, 3 * _S3 / 4, -0.5, 0, -_S3 / 2]),
        (1, [0, 1, 0, -_S3 / 4, -0.25, -_S3 / 2, 1, 1.5]),
        (1, [0, 0, 1, 0.5, -_S3 / 2, 1, 0, 0]),
    ]),
    "maximal_iii": ((2 * _PI / 3, 0.0, 0.0), [
        (-1, [1, 0, 0, 0, 0, 0, 0, -1 / _S3]),
        (-1, [0, 0, 0, 0, 1, 0, 1, 0]),
        (-1, [0, 1, _S3, 0, -2, 0, 0, 0]),
        (-1, [0, 0, 0, 1, 0, 1, 0, -2 / _S3]),
        (-1, [0, 0, 2, 1, -2 * _S3, -1, 0, 0]),
        (1, [1, 0, 0, 1, 0, 1, 0, _S3]),
        (1, [0, 1, 0, _S3 / 2, 0.5, -_S3 / 2, -0.5, 0]),
        (1, [0, 0, 1, 0.5, _S3 / 2, -0.5, -_S3 / 2, 0]),
    ]),
    "maximal_iv": ((2 * _PI / 3, 4 * _PI / 3, 2 * _PI / 3), [
        (-1, [1, _S3, 0, 0, 0, 0, 0, 2 / _S3]),
        (-1, [0, -_S3, 1, 1, 0, 0, 0, -1 / _S3]),
        (-1, [0, 0, 1, 0, 0, 2, 0, 1 / _S3]),
        (-1, [0, 1, 0, 0, 1, 0, 0, 0]),
        (-1, [0, 4, -_S3, 0, 0, 0, 2, 3]),
        (1, [1, 0, 0, -0.5, 0, 0.25, 3 * _S3 / 4, -_S3 / 2]),
        (1, [0, 1, 0, _S3 / 2, -1, _S3 / 4, 0.25, -1.5]),
        (1, [0, 0, 1, -1, 0, -0.5, _S3 / 2, 0]),
    ]),
    "degenerate_i": ((0.0, _PI / 3, 0.0), [
        (-1, [1, -_S3, 0, 0, 0, 0, 0, 2 / _S3]),
        (-1, [0, 0, 1, 1, -_S3, 0, 0, -1 / _S3]),
        (-1, [0, 0, 1, 0, 0, 2, 0, 1 / _S3]),
        (1, [_S3, 1, 0, -_S3, -1, 0, -2, 0]),
    ]),
    "degenerate_ii": ((0.0, _PI, 0.0), [
        (-1, [1, 0, 0, 0, 0, 0, 0, -1 / _S3]),
        (-1, [0, 0, -1, 2, 0, 0, 0, 1 / _S3]),
        (-1, [0, 0, 1, 0, 0, 2, 0, 1 / _S3]),
        (1, [0, 1, 0, 0, -1, 0, 1, 0]),
    ]),
    "degenerate_iii": ((0.0, 0.0, _PI / 2), [
        (-1, [1, -1, 0, 0, -1, 0, -1, 1 / _S3]),
        (-1, [0, 0, -1, 2, 0, 0, 0, 1 / _S3]),
        (-1, [0, 2, -1, 0, 2, 2, 2, -1 / _S3]),
        (1, [2, 1, 1, 0, 1, -2, 1, _S3]),
    ]),
    "degenerate_iv": ((_PI / 2, 0.0, 0.0), [
        (-1, [1, 0, 0, 0, 0, 0, 0, -1 / _S3]),
        (-1, [0, 0, 0, 1, 0, 1, 0, -1 / _S3]),
        (-1, [0, 1, -1, 0, 1, 2, -1, -1 / _S3]),
        (1, [0, 1, 1, 1, 1, -1, -1, 0]),
    ]),
    "generic": ((0.0, _PI / 2, 0.0), [
        (-1, [2, -4, 1, 2, -4, 0, 0, 1 / _S3]),
        (-1, [0, 0, 1, 0, 0, 2, 0, 1 / _S3]),
    ]),
}

CORRECTED: dict[str, tuple[tuple[float, float, float], list[tuple[int, list[float]]]]] = {
    "maximal_i": ((0.0, 4 * _PI / 3, 0.0), REFERENCE["maximal_i"][1]),
    "degenerate_iii": ((0.0, 0.0, _PI / 2), [
        (-1, [1, -0.5, 0, 0, -0.5, 0, -0.5, 1 / _S3]),
        (-1, [0, 0, -1, 2, 0, 0, 0, 1 / _S3]),
        (-1, [0, 1, -1, 0, 1, 2, 1, -1 / _S3]),
        (1, [2, 2, 1, 0, 2, -2, 2, _S3]),
    ]),
}


def generator_pairs(entries) -> list[GeneratorPair]:
    """Turn ``(sign, coefficients)`` entries into GeneratorPair objects."""
    basis = gell_mann_stack(3)
    out = []
    for sign, coeffs in entries:
        x = np.tensordot(np.asarray(coeffs, dtype=float), basis, axes=1)
        out.append(GeneratorPair.symmetric(x, sign))
    return out


def reference_case(name: str, corrected: bool = False):
    """``(point, pairs)`` for a named case; ``corrected`` selects the fixed list when one exists."""
    table = CORRECTED if corrected and name in CORRECTED else REFERENCE
    point, entries = table[name]
    return point, generator_pairs(entries)
