"""Command-line front end.

Every command reads an optional JSON config, runs one analysis and writes a
JSON report (or CSV rows for ``sweep``). Exit codes: 0 on success, 2 on
invalid configuration, 3 when a numerical rank cannot be decided.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from importlib import resources

import jsonschema
import numpy as np

from . import __version__
from .angles import format_pi, parse_angle, pi_fraction
from .entangler import EntanglerParams, build_entangler, verify_faithfulness
from .entanglement import (
    catalog_n3,
    closed_form_rho_n3,
    double_root_condition,
    off_diagonal_n3,
    reduced_density,
)
from .errors import AmbiguousRank, ConfigInvalid, QuantGamesError
from .game import GameDefinition, Strategy, play
from .nash import SearchGrid, mixed_feasibility, pure_nash_scan
from .stability import stability_algebra
from .sun import haar_su

EXIT_OK, EXIT_CONFIG, EXIT_RANK = 0, 2, 3
COMMANDS = ("entangler", "play", "entanglement", "stability", "nash-scan", "mixed-check", "sweep", "catalog")
DEFAULT_TOL = 1e-9
SWEEP_HEADER = ("tau", "rho", "sigma", "spectrum_1", "spectrum_2", "spectrum_3", "classification", "stability_dim")


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("config_schema.json").read_text())


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from None
    validate_config(cfg)
    return cfg


def validate_config(cfg) -> None:
    try:
        jsonschema.validate(cfg, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigInvalid(f"{where}: {exc.message}") from None


# Config interpretation


def _require(cfg: dict, key: str, command: str):
    if key not in cfg:
        raise ConfigInvalid(f"command '{command}' needs '{key}' in the config")
    return cfg[key]


def _angles(values) -> list[float]:
    return [parse_angle(v) for v in values]


def entangler_params(cfg: dict, command: str) -> EntanglerParams:
    spec = _require(cfg, "entangler", command)
    if "elw2" in spec:
        params = EntanglerParams.elw2(parse_angle(spec["elw2"]["gamma"]))
    elif "n3" in spec:
        s = spec["n3"]
        phases = _angles(s["phases"]) if "phases" in s else None
        params = EntanglerParams.n3(parse_angle(s["tau"]), parse_angle(s["rho"]), parse_angle(s["sigma"]), phases)
    else:
        s = spec["cartan"]
        lam = _angles(s["lambda"])
        n = cfg.get("n", len(lam) + 1)
        mu = [_angles(row) for row in s["mu"]] if "mu" in s else None
        phases = _angles(s["phases"]) if "phases" in s else None
        params = EntanglerParams.cartan(n, lam, mu, phases)
    if "n" in cfg and cfg["n"] != params.n:
        raise ConfigInvalid(f"n={cfg['n']} disagrees with the entangler dimension {params.n}")
    return params


def game_definition(cfg: dict, command: str) -> GameDefinition:
    a = np.array(_require(cfg, "payoff_a", command), dtype=float)
    b = np.array(cfg["payoff_b"], dtype=float) if "payoff_b" in cfg else a.T
    return GameDefinition(a, b)


def strategy(spec: dict, e, rng: np.random.Generator) -> Strategy:
    if "classical" in spec:
        k = spec["classical"]
        if k > e.n:
            raise ConfigInvalid(f"classical move {k} out of range 1..{e.n}")
        return e.classical(k)
    if "su_coefficients" in spec:
        c = spec["su_coefficients"]
        if len(c) != e.n * e.n - 1:
            raise ConfigInvalid(f"su_coefficients needs {e.n * e.n - 1} values, got {len(c)}")
        return Strategy.from_su_coefficients(c)
    if "euler" in spec:
        if e.n != 2:
            raise ConfigInvalid("euler strategies are defined for n = 2")
        return Strategy.from_euler(*_angles(spec["euler"]))
    if "random" in spec:
        return Strategy(haar_su(e.n, rng), ("explicit_matrix",))
    m = np.array(spec["matrix"], dtype=float)
    if m.shape != (e.n, e.n, 2):
        raise ConfigInvalid(f"matrix must be {e.n}×{e.n} pairs [re, im], got shape {m.shape}")
    return Strategy.from_matrix(m[..., 0] + 1j * m[..., 1])


def search_grid(cfg: dict) -> SearchGrid:
    g = cfg.get("grid", {})
    kwargs = {k: g[k] for k in ("resolution", "epsilon", "refine_steps", "bound", "budget") if k in g}
    return SearchGrid(**kwargs)


def _probability(v) -> float:
    if isinstance(v, str):
        try:
            return float(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError):
            raise ConfigInvalid(f"cannot parse probability {v!r}") from None
    return float(v)


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` with stop excluded; π-fraction endpoints are stepped exactly."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigInvalid(f"range must be start:stop:step, got {text!r}")
    fracs = [pi_fraction(p) if p.strip() != "0" else Fraction(0) for p in parts]
    try:
        if all(f is not None for f in fracs):
            start, stop, step = fracs
            if step <= 0:
                raise ConfigInvalid("range step must be positive")
            out, x = [], start
            while x < stop:
                out.append(float(x) * math.pi)
                x += step
            return out
        start, stop, step = (parse_angle(p) for p in parts)
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from None
    if step <= 0:
        raise ConfigInvalid("range step must be positive")
    count = int(math.floor((stop - start) / step - 1e-9)) + 1
    return [start + k * step for k in range(max(count, 0))]


# Report helpers


def _complex(a) -> dict:
    a = np.asarray(a)
    return {"re": np.real(a).tolist(), "im": np.imag(a).tolist()}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _params_summary(params: EntanglerParams) -> dict:
    out = {"n": params.n, "free_parameters": params.free_parameters(), "free_parameter_count": params.free_parameter_count}
    if params.is_elw2:
        out["gamma"] = params.gamma
    else:
        out["lambda"] = params.lam
        out["mu"] = params.mu
        if params.n == 3:
            out["tau"], out["rho"], out["sigma"] = params.tau, params.rho, params.sigma
    if params.phases is not None:
        out["phases"] = params.phases
    return out


# Commands


def cmd_entangler(cfg, tol, rng):
    params = entangler_params(cfg, "entangler")
    e = build_entangler(params)
    faith = verify_faithfulness(e)
    return {
        "entangler": _params_summary(params),
        "j": _complex(e.j),
        "v": _complex(e.v),
        "f": _complex(e.f),
        "faithfulness": {"max_commutator": faith.max_commutator, "basis_map_ok": faith.basis_map_ok},
    }, {}


def cmd_play(cfg, tol, rng):
    params = entangler_params(cfg, "play")
    e = build_entangler(params)
    game = game_definition(cfg, "play")
    strat = _require(cfg, "strategies", "play")
    alice, bob = strategy(strat["alice"], e, rng), strategy(strat["bob"], e, rng)
    out = play(game, e, alice, bob)
    return {
        "entangler": _params_summary(params),
        "strategies": {"alice": _complex(alice.unitary), "bob": _complex(bob.unitary)},
        "probabilities": out.probabilities,
        "payoff_alice": out.payoff_alice,
        "payoff_bob": out.payoff_bob,
    }, {}


def _entanglement_block(e, tol) -> dict:
    rep = reduced_density(e, tol)
    block = {
        "spectrum": rep.spectrum,
        "classification": rep.classification.value,
        "multiplicities": rep.multiplicities,
    }
    if e.n == 3 and not e.params.is_elw2:
        p = e.params
        a, b, c = off_diagonal_n3(p.tau, p.rho, p.sigma)
        closed = np.linalg.eigvalsh(closed_form_rho_n3(p.tau, p.rho, p.sigma))
        dr = double_root_condition(complex(a), complex(b), complex(c))
        block["closed_form_spectrum"] = closed
        block["double_root_condition"] = dr.degenerate
    return block


def cmd_entanglement(cfg, tol, rng):
    params = entangler_params(cfg, "entanglement")
    e = build_entangler(params)
    return {"entangler": _params_summary(params), **_entanglement_block(e, tol)}, {"degeneracy": tol}


def cmd_stability(cfg, tol, rng):
    params = entangler_params(cfg, "stability")
    e = build_entangler(params)
    basis = cfg.get("basis", "tilde")
    rep = stability_algebra(e, tol, basis=basis, phase_inclusive=cfg.get("phase_inclusive", False))
    gens = []
    for g in rep.basis:
        item = {"parity": g.parity or "none", "coefficients": g.coefficients()}
        if g.phase is not None:
            item["phase"] = g.phase
        gens.append(item)
    return {
        "entangler": _params_summary(params),
        "frame": basis,
        "dimension": rep.dimension,
        "multiplicities": rep.multiplicities,
        "predicted_dimension": rep.predicted_dimension,
        "effective_manifold_dim": rep.effective_manifold_dim,
        "f_invertible": rep.f_invertible,
        "wz_residual": rep.wz_residual,
        "generators": gens,
    }, {"rank": tol, "gap_factor": 10}


def cmd_nash_scan(cfg, tol, rng):
    params = entangler_params(cfg, "nash-scan")
    e = build_entangler(params)
    game = game_definition(cfg, "nash-scan")
    grid = search_grid(cfg)
    scan = pure_nash_scan(game, e, grid)
    limit = cfg.get("grid", {}).get("report_limit", 100)
    pts = [
        {"alice": p.alice_coords, "bob": p.bob_coords, "payoff_alice": p.payoff_alice, "payoff_bob": p.payoff_bob}
        for p in scan.points[:limit]
    ]
    report = {
        "entangler": _params_summary(params),
        "grid": grid.describe(e.n),
        "count": len(scan),
        "equilibria": pts,
        "truncated": len(scan) > limit,
    }
    if e.n != 2:
        report["note"] = "su(N) coefficient grid in [-bound, bound] plus classical moves; heuristic cover of SU(N)"
    return report, {"epsilon": grid.epsilon, "tie": 1e-12}


def cmd_mixed_check(cfg, tol, rng):
    p = [_probability(x) for x in _require(cfg, "probabilities", "mixed-check")]
    res = mixed_feasibility(*p)
    return {
        "p": res.p,
        "lambda": res.lam,
        "mu": res.mu,
        "tg_gamma_roots": res.tg_gamma_roots,
        "gamma_values": res.gamma_values,
        "cos_delta_values": res.cos_delta_values,
        "cos_delta": res.cos_delta,
        "feasible": res.feasible,
        "witness": res.witness,
        "witness_error": res.witness_error,
    }, {"cos_delta": 1e-9, "imaginary_root": 1e-10}


def sweep_rows(cfg, param: str, values, tol) -> list[tuple]:
    base = {"tau": 0.0, "rho": 0.0, "sigma": 0.0}
    if "entangler" in cfg:
        if "n3" not in cfg["entangler"]:
            raise ConfigInvalid("sweep works on the n3 entangler parametrization")
        base = {k: parse_angle(cfg["entangler"]["n3"][k]) for k in base}
    rows = []
    for x in values:
        point = dict(base, **{param: x})
        e = build_entangler(EntanglerParams.n3(point["tau"], point["rho"], point["sigma"]))
        rep = reduced_density(e, tol)
        try:
            dim = stability_algebra(e, tol).dimension
        except AmbiguousRank:
            dim = "ambiguous"
        rows.append((point["tau"], point["rho"], point["sigma"], *rep.spectrum.tolist(), rep.classification.value, dim))
    return rows


def cmd_catalog(cfg, tol, rng):
    cat = catalog_n3(complete=cfg.get("complete", False))

    def entry(fracs):
        triple = tuple(float(f) * math.pi for f in fracs)
        rep = reduced_density(build_entangler(EntanglerParams.n3(*triple)), tol)
        return {
            "tau": format_pi(fracs[0]),
            "rho": format_pi(fracs[1]),
            "sigma": format_pi(fracs[2]),
            "radians": triple,
            "spectrum": rep.spectrum,
            "classification": rep.classification.value,
        }

    return {
        "maximal": [entry(t) for t in cat.maximal_fractions],
        "degenerate": [entry(t) for t in cat.degenerate_fractions],
        "counts": {"maximal": len(cat.maximal_fractions), "degenerate": len(cat.degenerate_fractions)},
    }, {"degeneracy": tol}


HANDLERS = {
    "entangler": cmd_entangler,
    "play": cmd_play,
    "entanglement": cmd_entanglement,
    "stability": cmd_stability,
    "nash-scan": cmd_nash_scan,
    "mixed-check": cmd_mixed_check,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quantgames", description="Quantized N-strategy games: analysis commands.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON run configuration")
    ap.add_argument("--out", help="write the report here instead of standard output")
    ap.add_argument("--format", choices=("report", "csv"), default="report")
    ap.add_argument("--tol", type=float, help="numerical tolerance (overrides the config)")
    ap.add_argument("--seed", type=int, help="seed for randomized inputs (overrides the config)")
    ap.add_argument("--param", choices=("tau", "rho", "sigma"), help="sweep parameter")
    ap.add_argument("--range", dest="range_", metavar="START:STOP:STEP", help="sweep range, stop excluded")
    ap.add_argument("--complete", action="store_true", help="catalog: include the σ values missing from the printed lists")
    return ap


def render_json(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def render_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in rows:
        w.writerow([repr(float(x)) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def run(argv=None) -> tuple[int, str]:
    """Execute one command; returns (exit code, output text). Errors go to stderr."""
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.complete:
            cfg["complete"] = True
        tol = args.tol if args.tol is not None else cfg.get("tolerance", DEFAULT_TOL)
        if not tol > 0:
            raise ConfigInvalid("tolerance must be positive")
        seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        if not 0 <= seed < 2**64:
            raise ConfigInvalid("seed must be an unsigned 64-bit integer")
        rng = np.random.default_rng(seed)
        meta = {"command": args.command, "version": __version__, "seed": seed}

        if args.command == "sweep":
            sw = cfg.get("sweep", {})
            param = args.param or sw.get("param")
            text = args.range_ or sw.get("range")
            if param is None or text is None:
                raise ConfigInvalid("sweep needs --param and --range (or a 'sweep' config block)")
            rows = sweep_rows(cfg, param, parse_range(text), tol)
            if args.format == "csv":
                return EXIT_OK, render_csv(rows)
            report = {"param": param, "range": text, "header": SWEEP_HEADER, "rows": rows}
            return EXIT_OK, render_json({**meta, "tolerances": {"degeneracy": tol, "rank": tol}, **report})

        if args.format == "csv":
            raise ConfigInvalid("csv output is only available for sweep")
        report, tols = HANDLERS[args.command](cfg, tol, rng)
        tols = {"tolerance": tol, **tols}
        return EXIT_OK, render_json({**meta, "tolerances": tols, **report})
    except AmbiguousRank as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANK, ""
    except (QuantGamesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG, ""


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, text = run(argv)
    if text:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
