from __future__ import annotations

import math

import numpy as np
import pytest

from quantgames.entangler import EntanglerParams, build_entangler

PI = math.pi


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_params(n: int, rng: np.random.Generator) -> EntanglerParams:
    return EntanglerParams.from_free(n, rng.uniform(-PI, PI, n * (n - 1) // 2))


def n3(tau, rho, sigma):
    return build_entangler(EntanglerParams.n3(tau, rho, sigma))


# criterion number -> list of (ok, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))


def acceptance_lines() -> list[str]:
    lines = []
    for k in sorted(ACCEPTANCE):
        entries = ACCEPTANCE[k]
        ok = all(e[0] for e in entries)
        detail = "; ".join(d for _, d in entries)
        lines.append(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return lines


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
