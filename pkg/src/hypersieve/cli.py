"""Batch command line front end.

Every run writes one artifact (CSV or JSON) that embeds the resolved
configuration and the package version.  Exit codes: 0 success, 2 invalid
configuration, 3 numerical non-convergence, 4 unsaturated census.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import __version__
from .numerics import HypergeometricDivergenceError, QuadratureConfig, QuadratureError

COMMANDS = ("transform", "invert", "window", "lattice", "trace", "sieve")
DEFAULT_FORMAT = {"transform": "csv", "invert": "csv", "window": "csv", "lattice": "csv",
                  "trace": "json", "sieve": "json"}
PARAM_KEYS = ("T", "r", "X", "H", "z", "seed", "tol", "variant", "delta", "trials", "t_max",
              "n", "p_max", "T_max")

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_UNSATURATED = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


class CensusNotSaturated(RuntimeError):
    pass


@dataclass
class RunConfig:
    command: Optional[str] = None
    params: dict[str, Any] = field(default_factory=dict)
    output_path: Optional[str] = None
    format: Optional[str] = None

    def resolved(self) -> dict:
        return {"command": self.command, "params": dict(sorted(self.params.items())),
                "output_path": self.output_path, "format": self.resolved_format()}

    def resolved_format(self) -> Optional[str]:
        return self.format or DEFAULT_FORMAT.get(self.command or "", None)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _num(params: dict, key: str, diags: list[str]) -> Optional[float]:
    if key not in params or params[key] is None:
        return None
    try:
        v = float(params[key])
    except (TypeError, ValueError):
        diags.append(f"{key} must be a number, got {params[key]!r}")
        return None
    if not math.isfinite(v):
        diags.append(f"{key} must be finite")
        return None
    return v


def parse_z(z) -> complex:
    if isinstance(z, (list, tuple)):
        re_, im = z
    elif isinstance(z, complex):
        return z
    else:
        re_, im = str(z).split(",")
    return complex(float(re_), float(im))


def validate(config: RunConfig) -> list[str]:
    """All problems with ``config``; an empty list means it can run."""
    diags: list[str] = []
    if not config.command:
        diags.append("missing command")
    elif config.command not in COMMANDS:
        diags.append(f"unknown command {config.command!r}")
    if config.format is not None and config.format not in ("csv", "json"):
        diags.append(f"format must be csv or json, got {config.format!r}")
    p = config.params
    unknown = sorted(set(p) - set(PARAM_KEYS))
    if unknown:
        diags.append("unknown parameters: " + ", ".join(unknown))
    T = _num(p, "T", diags)
    if T is not None and T < 1:
        diags.append(f"T must be >= 1, got {T:g}")
    r = _num(p, "r", diags)
    if r is not None and not 0 < r <= math.log(2):
        diags.append(f"r must lie in (0, log 2], got {r:g}")
    X = _num(p, "X", diags)
    if X is not None and X <= 1:
        diags.append(f"X must exceed 1, got {X:g}")
    tol = _num(p, "tol", diags)
    if tol is not None and tol <= 0:
        diags.append(f"tol must be positive, got {tol:g}")
    for key in ("H", "trials", "n"):
        v = _num(p, key, diags)
        if v is not None and (v < 1 or v != int(v)):
            diags.append(f"{key} must be a positive integer")
    for key in ("delta", "t_max", "p_max", "T_max"):
        v = _num(p, key, diags)
        if v is not None and v <= 0:
            diags.append(f"{key} must be positive")
    pm = _num(p, "p_max", diags)
    if pm is not None and pm <= 1:
        diags.append("p_max must exceed 1")
    seed = p.get("seed")
    if seed is not None:
        try:
            if isinstance(seed, bool) or (isinstance(seed, float) and not seed.is_integer()):
                raise ValueError
            s = int(seed)
            if s < 0 or s >= 2 ** 64:
                raise ValueError
        except (TypeError, ValueError):
            diags.append("seed must be an unsigned 64-bit integer")
    if "variant" in p and p["variant"] not in ("a", "b"):
        diags.append("variant must be 'a' or 'b'")
    if "z" in p:
        try:
            if parse_z(p["z"]).imag <= 0:
                diags.append("z must have positive imaginary part")
        except (TypeError, ValueError):
            diags.append("z must be given as 're,im'")
    return diags


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


@dataclass
class Result:
    columns: list[str]
    rows: list[list]
    summary: dict = field(default_factory=dict)


def _cfg(params: dict, default: QuadratureConfig) -> QuadratureConfig:
    tol = params.get("tol")
    if tol is None:
        return default
    return default.replace(abs_tol=float(tol), rel_tol=max(float(tol), 1e-14))


def _window_params(params: dict):
    from .window import WindowParams

    return WindowParams(float(params.get("T", 4.0)), float(params.get("r", 0.1)))


def cmd_transform(params: dict) -> Result:
    from .transforms import RadialTestFunction, d0_direct, d1_direct

    f = RadialTestFunction.exponential()
    cfg = _cfg(params, QuadratureConfig(abs_tol=1e-13, rel_tol=1e-11))
    ts = np.linspace(0.0, float(params.get("t_max", 10.0)), int(params.get("n", 41)))
    rows = [[t, d0_direct(f, t, cfg), d1_direct(f, t, cfg)] for t in ts]
    return Result(["t", "d0", "d1"], rows, {"f": f.name})


def cmd_invert(params: dict) -> Result:
    from .transforms import RadialTestFunction, huber_d0, profile_from_d0, reconstruct_f0

    f = RadialTestFunction.exponential()
    # d0 values under 1e-14 are quadrature noise; treating them as zero ends the t grid near 45
    cfg = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-12, tail_cutoff=1e-15)
    rc = _cfg(params, QuadratureConfig(abs_tol=1e-14, rel_tol=1e-10))
    prof = profile_from_d0(huber_d0(f, cfg), cfg)
    ps = np.linspace(1.0, float(params.get("p_max", 20.0)), int(params.get("n", 39)))
    rows = []
    for p in ps:
        exact = float(f(np.array([p]))[0])
        rec = reconstruct_f0(prof, math.acosh(math.sqrt(p)), rc)
        rows.append([p, exact, rec, abs(rec - exact)])
    return Result(["p", "f", "f_reconstructed", "abs_err"], rows,
                  {"f": f.name, "max_abs_err": max(r[3] for r in rows)})


def cmd_window(params: dict) -> Result:
    from .window import CLAUSES, baseline_key, read_baseline, run_clause

    p = _window_params(params)
    try:
        base = read_baseline()
    except OSError:
        base = {}
    rows = []
    for c in CLAUSES:
        rep = run_clause(c, p)
        b = base.get(baseline_key(c, p.T, p.r), float("nan"))
        within = bool(math.isfinite(b) and rep.ratio_sup <= 2 * b and rep.ratio_sup >= b / 2)
        rows.append([c, p.T, p.r, rep.ratio_sup, len(rep.grid), rep.excluded, b, within])
    return Result(["clause", "T", "r", "ratio_sup", "points", "excluded", "baseline",
                   "within_2x_baseline"], rows, {})


def _census(params: dict, X_default: float):
    from .lattice import default_frame, enumerate_double_cosets, saturated_census

    frame = default_frame()
    X = float(params.get("X", X_default))
    if "H" in params and params["H"] is not None:
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            census = enumerate_double_cosets(frame, X, int(params["H"]))
    else:
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            census = saturated_census(frame, X)
    if not census.saturated:
        raise CensusNotSaturated(f"census at X={X:g}, H={census.H} is not saturated")
    return frame, census


def cmd_lattice(params: dict) -> Result:
    frame, census = _census(params, 50.0)
    rows = [[*r.element.entries, r.B, r.height] for r in
            sorted(census, key=lambda r: (abs(r.B), r.element.entries))]
    return Result(["a", "b", "c", "d", "B", "height"], rows,
                  {"count": len(census), "H": census.H, "unit_classes": len(census.unit_classes)})


def cmd_trace(params: dict) -> Result:
    from .lattice import geometric_side_terms
    from .window import f0_radial, f1_radial

    variant = params.get("variant", "b")
    frame, census = _census(params, 200.0)
    wp = _window_params(params)
    f = f0_radial(wp) if variant == "a" else f1_radial(wp)
    cfg = _cfg(params, QuadratureConfig(abs_tol=1e-13, rel_tol=1e-10))
    gs = geometric_side_terms(variant, f, frame, census, cfg)
    rows = [[b, t] for b, t in zip(gs.B, gs.terms)]
    return Result(["B", "term"], rows, {
        "variant": variant, "value": gs.value, "identity_term": gs.identity_term,
        "sum_terms": float(np.sum(gs.terms)), "sum_abs_terms": float(np.sum(np.abs(gs.terms))),
        "cancellation_ratio": gs.cancellation_ratio, "unit_excluded": gs.unit_excluded,
        "classes": len(census), "H": census.H, "saturated": bool(census.saturated)})


def cmd_sieve(params: dict) -> Result:
    from .sieve import SamplePoints, sieve_experiment, weyl_synthetic

    T = float(params.get("T", 10.0))
    X = float(params.get("X", 100.0))
    delta = float(params.get("delta", 1.0))
    seed = int(params.get("seed", 0))
    spectrum = weyl_synthetic(float(params.get("T_max", 2 * T)), seed=seed)
    pts = SamplePoints.equally_spaced(X, delta)
    rep = sieve_experiment(pts, T, spectrum, int(params.get("trials", 50)), seed)
    return Result(["ratio_max", "ratio_mean"], [[rep["ratio_max"], rep["ratio_mean"]]], rep)


HANDLERS = {"transform": cmd_transform, "invert": cmd_invert, "window": cmd_window,
            "lattice": cmd_lattice, "trace": cmd_trace, "sieve": cmd_sieve}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g")
    s = str(x)
    if any(ch in s for ch in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if math.isfinite(v) else None
    return x


def render(config: RunConfig, result: Result) -> str:
    meta = {"tool": "hypersieve", "version": __version__, "config": config.resolved()}
    if config.resolved_format() == "json":
        doc = dict(meta)
        doc.update(result.summary)
        doc["columns"] = result.columns
        doc["rows"] = result.rows
        return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"
    lines = [f"# hypersieve {__version__}",
             "# config " + json.dumps(_jsonable(config.resolved()), sort_keys=True)]
    if result.summary:
        lines.append("# summary " + json.dumps(_jsonable(result.summary), sort_keys=True))
    lines.append(",".join(result.columns))
    lines += [",".join(_fmt(v) for v in row) for row in result.rows]
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=target.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error(code: int, kind: str, message: str, extra: Optional[dict] = None) -> int:
    doc = {"error": kind, "exit_code": code, "message": message}
    if extra:
        doc.update(extra)
    sys.stderr.write(json.dumps(_jsonable(doc), sort_keys=True) + "\n")
    return code


def run(config: RunConfig) -> int:
    """Execute ``config``; see the module docstring for exit codes."""
    diags = validate(config)
    if diags:
        return _error(EXIT_INVALID, "validation", "; ".join(diags), {"diagnostics": diags})
    try:
        result = HANDLERS[config.command](config.params)
    except CensusNotSaturated as exc:
        return _error(EXIT_UNSATURATED, "census_not_saturated", str(exc))
    except (QuadratureError, HypergeometricDivergenceError, ArithmeticError) as exc:
        return _error(EXIT_NUMERIC, "non_convergence", str(exc))
    except ValueError as exc:
        return _error(EXIT_INVALID, "validation", str(exc))
    text = render(config, result)
    if config.output_path:
        write_atomic(config.output_path, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypersieve", description=__doc__.splitlines()[0])
    ap.add_argument("command_pos", nargs="?", metavar="command", help="one of " + ", ".join(COMMANDS))
    ap.add_argument("--command", dest="command")
    ap.add_argument("--config", help="JSON file with the same keys as the flags")
    ap.add_argument("--out", help="output path (stdout if omitted)")
    ap.add_argument("--format", choices=("csv", "json"))
    ap.add_argument("--seed", type=int)
    ap.add_argument("--T", type=float)
    ap.add_argument("--r", type=float)
    ap.add_argument("--X", type=float)
    ap.add_argument("--H", type=int)
    ap.add_argument("--z", help="complex point as 're,im'")
    ap.add_argument("--tol", type=float)
    ap.add_argument("--variant", choices=("a", "b"))
    ap.add_argument("--delta", type=float)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--n", type=int, help="number of grid points")
    ap.add_argument("--t-max", dest="t_max", type=float)
    ap.add_argument("--p-max", dest="p_max", type=float)
    ap.add_argument("--T-max", dest="T_max", type=float, help="spectrum cutoff for sieve runs")
    return ap


def config_from_args(argv: Optional[list[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    base: dict = {}
    if ns.config:
        try:
            base = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(base, dict):
            raise ConfigError("config file must hold a JSON object")
    params = dict(base.get("params", {}))
    params.update({k: v for k, v in base.items()
                   if k not in ("command", "params", "out", "output_path", "format")})
    for key in PARAM_KEYS:
        v = getattr(ns, key, None)
        if v is not None:
            params[key] = v
    command = ns.command or ns.command_pos or base.get("command")
    out = ns.out or base.get("out") or base.get("output_path")
    fmt = ns.format or base.get("format")
    return RunConfig(command, params, out, fmt)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        config = config_from_args(argv)
    except ConfigError as exc:
        return _error(EXIT_INVALID, "validation", str(exc))
    return run(config)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
