"""Quantized N-strategy games with Cartan-type entanglers.

Build an entangler, play strategies, classify the entanglement of the
initial state, compute its stability group and search for equilibria.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .entangler import Entangler, EntanglerParams, build_entangler
from .entanglement import Classification, catalog_n3, reduced_density
from .errors import QuantGamesError
from .game import GameDefinition, Outcome, Strategy, play
from .nash import SearchGrid, best_response, du_li_threshold, mixed_feasibility, pure_nash_scan
from .stability import countermove, stability_algebra, stability_structure, verify_generators

__all__ = [
    "Classification",
    "Entangler",
    "EntanglerParams",
    "GameDefinition",
    "Outcome",
    "QuantGamesError",
    "SearchGrid",
    "Strategy",
    "best_response",
    "build_entangler",
    "catalog_n3",
    "countermove",
    "du_li_threshold",
    "mixed_feasibility",
    "play",
    "pure_nash_scan",
    "reduced_density",
    "stability_algebra",
    "stability_structure",
    "verify_generators",
]
