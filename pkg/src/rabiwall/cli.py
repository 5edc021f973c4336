"""Command-line driver: ``rabiwall <command> [--config FILE] [--out DIR] ...``.

Configuration is an INI-style file with one section per command holding
``key = value`` lines; ``--set key=value`` overrides single keys.  Unknown
sections and keys are rejected with their line numbers.

Exit codes: 0 success, 1 configuration error, 2 solver failure, and for
``verify`` 2 + (number of failed checks), capped at 255.
"""
from __future__ import annotations

import argparse
import configparser
import contextlib
import logging
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import energy, flow, io, linearized as lin, potential as pot, profile1d as p1, verify, walls
from .errors import ConfigError, NonFinite, ParamsOutOfRange, RabiWallError, StabilityViolation
from .field import BC, Field, central_diff, interior_mask

log = logging.getLogger("rabiwall")

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2


def _floats(text: str) -> tuple:
    items = [x for x in re.split(r"[,\s]+", text.strip()) if x]
    return tuple(float(x) for x in items)


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_COMMON = {"threads": (int, 0), "seed": (int, 0)}
_PARAMS = {"alpha": (float, 2.0), "omega": (float, 0.6)}

# key -> (parser, default); defaults double as documentation of the format.
SCHEMA = {
    "steady": {**_PARAMS},
    "profile": {
        **_PARAMS,
        "L": (float, 20.0),
        "n": (int, 4001),
        "tol": (float, 1e-10),
        "max_iters": (int, 50),
        "continuation_step": (float, 0.25),
    },
    "energy-scan": {
        **_PARAMS,
        "h": (float, 0.1),
        "R": (float, 10.0),
        "t_min": (float, -30.0),
        "t_max": (float, 50.0),
        "steps": (int, 81),
        "delta": (float, 0.1),
        "growth_radii": (_floats, (10.0, 20.0, 40.0, 80.0)),
        "growth_h": (float, 0.5),
        "profile_h": (float, 0.02),
    },
    "spectrum": {
        **_PARAMS,
        "h": (float, 0.5),
        "radii": (_floats, (5.0, 10.0, 20.0)),
        "background": (str, "planar"),
        "x1_margin": (float, 2.0),
        "x2_margin": (float, 10.0),
        "tol": (float, 1e-10),
        "max_iter": (int, 500),
        "block": (int, 4),
        "dense_check": (_bool, True),
        "dense_max_nodes": (int, 4000),
        "profile_h": (float, 0.02),
        "subwindow": (float, 2.0),
    },
    "flow": {
        **_PARAMS,
        "nx": (int, 256),
        "ny": (int, 256),
        "h": (float, 0.125),
        "dt": (float, 0.25),
        "bend": (float, 0.1),
        "s_perturb": (float, 0.0),
        "max_steps": (int, 20000),
        "tol": (float, 1e-10),
        "chunk": (int, 50),
        "sample_every": (int, 10),
        "snapshot_every": (int, 0),
        "kernel_radius": (float, 5.0),
        "resume": (str, ""),
        "profile_h": (float, 0.02),
    },
    "verify": {
        "mutation": (str, "none"),
        "checks": (str, ""),
    },
}
for _keys in SCHEMA.values():
    _keys.update(_COMMON)


# -- configuration -------------------------------------------------------------

_SECTION_RE = re.compile(r"^\s*\[([^\]]+)\]")
_KEY_RE = re.compile(r"^\s*([^=:#;\s\[][^=:]*?)\s*[=:]")


def _line_index(text: str) -> dict:
    """(section, key) -> line number, with (section, None) for headers."""
    where, section = {}, None
    for no, line in enumerate(text.splitlines(), 1):
        m = _SECTION_RE.match(line)
        if m:
            section = m.group(1).strip()
            where.setdefault((section, None), no)
            continue
        m = _KEY_RE.match(line)
        if m and section is not None:
            where.setdefault((section, m.group(1).strip()), no)
    return where


def _convert(command: str, key: str, raw: str, origin: str):
    if key not in SCHEMA[command]:
        allowed = ", ".join(sorted(SCHEMA[command]))
        raise ConfigError(f"{origin}: unknown key {key!r} in [{command}] (allowed: {allowed})")
    parse = SCHEMA[command][key][0]
    try:
        return parse(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"{origin}: bad value for {key!r}: {exc}") from None


def load_config(path, command: str, overrides=()) -> dict:
    """Defaults for ``command`` updated from the file section and ``overrides``."""
    cfg = {k: default for k, (_, default) in SCHEMA[command].items()}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        parser = configparser.ConfigParser(interpolation=None, default_section="\x00", strict=True)
        parser.optionxform = str
        try:
            parser.read_string(text, source=str(path))
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from None
        lines = _line_index(text)
        for section in parser.sections():
            if section not in SCHEMA:
                no = lines.get((section, None), "?")
                raise ConfigError(f"{path}:{no}: unknown section [{section}]")
            for key, raw in parser.items(section):
                no = lines.get((section, key), "?")
                value = _convert(section, key, raw, f"{path}:{no}")
                if section == command:
                    cfg[key] = value
    for item in overrides or ():
        if "=" not in item:
            raise ConfigError(f"--set {item!r}: expected key=value")
        key, raw = item.split("=", 1)
        cfg[key.strip()] = _convert(command, key.strip(), raw, f"--set {key.strip()}")
    return cfg


def _params(cfg) -> pot.Params:
    return pot.validate_params(cfg["alpha"], cfg["omega"])


def _positive(cfg, *keys):
    for k in keys:
        if not cfg[k] > 0:
            raise ConfigError(f"{k} must be positive, got {cfg[k]}")


@contextlib.contextmanager
def _thread_limit(n: int):
    if n and n > 0:
        from threadpoolctl import threadpool_limits

        with threadpool_limits(limits=n):
            yield
    else:
        yield


def _write_summary(path: Path, items) -> None:
    lines = []
    for k, v in items:
        if isinstance(v, (bool, np.bool_)):
            lines.append(f"{k}={str(bool(v)).lower()}")
        elif isinstance(v, (int, np.integer, str)):
            lines.append(f"{k}={v}")
        else:
            lines.append(f"{k}={io.fmt(v)}")
    io.atomic_write_text(path, "\n".join(lines) + "\n")
    print("\n".join(lines))


def _solved_profile(P, half: float, step: float) -> p1.Profile1D:
    n = 2 * int(math.ceil(half / step)) + 1
    return p1.solve_profile(P, p1.Grid1D(half, n))


def _background_profile(P, cfg, half):
    """None selects the closed form (alpha = 2); otherwise a solved profile."""
    if P.alpha == 2.0:
        return None
    return _solved_profile(P, half + 5.0, cfg["profile_h"])


def _aligned(x: float, h: float) -> float:
    """``x`` rounded outward to a multiple of ``h``."""
    return math.copysign(math.ceil(abs(x) / h - 1e-9) * h, x)


# -- commands ------------------------------------------------------------------


def cmd_steady(cfg, out: Path) -> int:
    P = _params(cfg)
    header = "state,u,v,grad_norm,eig_min,eig_max,stability"
    names = ("a_b", "b_a", "c_c")
    rows = []
    for name, s in zip(names, pot.steady_states(P)):
        g = float(np.hypot(*pot.potential_gradient(s, P)))
        eig = np.linalg.eigvalsh(pot.potential_hessian(s, P).matrix())
        label = pot.state_stability(s, P)
        rows.append(",".join([name, io.fmt(s.u), io.fmt(s.v), io.fmt(g),
                              io.fmt(eig[0]), io.fmt(eig[1]), label]))
    text = "\n".join([header] + rows) + "\n"
    io.atomic_write_text(out / "steady.csv", text)
    print(text, end="")
    return EXIT_OK


def cmd_profile(cfg, out: Path) -> int:
    P = _params(cfg)
    _positive(cfg, "L", "tol", "continuation_step")
    try:
        grid = p1.Grid1D(cfg["L"], cfg["n"])
    except ValueError as exc:
        raise ConfigError(f"bad profile grid: {exc}") from None
    prof = p1.solve_profile(P, grid, tol=cfg["tol"], max_iters=cfg["max_iters"],
                            continuation_step=cfg["continuation_step"])
    dU, dV = np.diff(prof.U), np.diff(prof.V)
    items = [
        ("alpha", P.alpha), ("omega", P.omega), ("L", grid.half_length), ("n", grid.n), ("h", grid.h),
        ("residual_inf", prof.residual_inf), ("newton_iters", prof.newton_iters), ("shift", prof.shift),
        ("energy", p1.profile_energy(prof, P)),
        ("min_dU", float(dU.min() / grid.h)), ("max_dV", float(dV.max() / grid.h)),
        # first free node next to each end state
        ("endpoint_err_left", max(abs(prof.U[1] - P.a), abs(prof.V[1] - P.b))),
        ("endpoint_err_right", max(abs(prof.U[-2] - P.b), abs(prof.V[-2] - P.a))),
    ]
    if P.alpha == 2.0:
        U, V = p1.analytic_profile_alpha2(P.omega, prof.t)
        err = max(np.max(np.abs(prof.U - U)), np.max(np.abs(prof.V - V)))
        items += [("sup_err_vs_analytic", float(err)), ("energy_exact", p1.analytic_energy_alpha2(P.omega))]
    io.write_profile_csv(out / "profile.csv", prof)
    _write_summary(out / "profile_summary.txt", items)
    return EXIT_OK


def cmd_energy_scan(cfg, out: Path) -> int:
    P = _params(cfg)
    _positive(cfg, "h", "R", "delta", "growth_h", "profile_h")
    if cfg["t_max"] <= cfg["t_min"] or cfg["steps"] < 2:
        raise ConfigError("need t_min < t_max and steps >= 2")
    radii = cfg["growth_radii"]
    if len(radii) < 3 or any(r <= 0 for r in radii):
        raise ConfigError("growth_radii needs at least 3 positive radii")
    h, R = cfg["h"], cfg["R"]
    x1 = _aligned(R + 1.0, h)
    lo = _aligned(cfg["t_min"] - R - cfg["delta"] - 1.0, h)
    hi = _aligned(cfg["t_max"] + R + cfg["delta"] + 1.0, h)
    gh, rmax = cfg["growth_h"], max(radii)
    gx = _aligned(rmax + 1.0, gh)
    profile = _background_profile(P, cfg, max(abs(lo), abs(hi), gx))

    free_x1 = (BC.free(), BC.dirichlet())
    f = walls.planar_wall(P, profile, int(round(2 * x1 / h)) + 1, h, (lo, hi), x1_origin=-x1, bc=free_x1)
    scan = energy.energy_translation_scan(f, R, cfg["t_min"], cfg["t_max"], cfg["steps"], P)
    t_mid = float(scan.t_samples[len(scan.t_samples) // 2])
    flux = energy.boundary_flux(f, R, t_mid)
    fd = energy.centered_energy_derivative(f, R, t_mid, cfg["delta"], P)

    g = walls.planar_wall(P, profile, int(round(2 * gx / gh)) + 1, gh, (-gx, gx), x1_origin=-gx, bc=free_x1)
    fit = energy.energy_growth_exponent(g, radii, P)

    io.write_energy_scan_csv(out / "energy_scan.csv", scan)
    io.write_growth_csv(out / "growth.csv", fit)
    c = fit.constants
    _write_summary(out / "energy_scan_summary.txt", [
        ("R", R), ("h", h), ("t_mid", t_mid), ("flux", flux), ("centered_difference", fd),
        ("flux_rel_err", abs(flux - fd) / abs(fd) if fd else math.nan),
        ("tail_ratio", float(max(scan.E[0], scan.E[-1]) / scan.E.max())),
        ("total_variation", scan.total_variation),
        ("growth_exponent", fit.exponent), ("growth_spread", float((c.max() - c.min()) / c.mean())),
    ])
    return EXIT_OK


def cmd_spectrum(cfg, out: Path) -> int:
    P = _params(cfg)
    _positive(cfg, "h", "tol", "profile_h")
    radii = cfg["radii"]
    if not radii:
        raise ConfigError("radii list is empty")
    if any(r <= 0 for r in radii):
        raise ConfigError("radii must be positive")
    if cfg["background"] not in ("planar", "constant"):
        raise ConfigError(f"background must be planar or constant, got {cfg['background']!r}")
    h, rmax = cfg["h"], max(radii)
    x1 = _aligned(rmax + cfg["x1_margin"], h)
    x2 = _aligned(rmax + cfg["x2_margin"], h)
    n1, n2 = int(round(2 * x1 / h)) + 1, int(round(2 * x2 / h)) + 1
    bc = (BC.free(), BC.dirichlet((P.a, P.b), (P.b, P.a)))
    if cfg["background"] == "planar":
        profile = _background_profile(P, cfg, x2)
        f = walls.planar_wall(P, profile, n1, h, (-x2, x2), x1_origin=-x1, bc=bc)
    else:
        f = Field(np.full((n1, n2), P.a), np.full((n1, n2), P.b), h, (-x1, -x2), (BC.free(), BC.dirichlet()))

    rows_R, rows_l, rows_s, rows_it = [], [], [], []
    ranges = []
    failed = 0
    for R in radii:
        try:
            pair = lin.principal_eigenpair(f, R, P, tol=cfg["tol"], max_iter=cfg["max_iter"],
                                           block=cfg["block"], seed=cfg["seed"])
        except RabiWallError as exc:
            log.error("R=%g: %s: %s", R, type(exc).__name__, exc)
            rows_R.append(R), rows_l.append(math.nan), rows_s.append(type(exc).__name__), rows_it.append(0)
            failed += 1
            continue
        io.write_eigenpair_csv(out / f"eigenpair_R{R:g}.csv", f, pair)
        rows_R.append(R), rows_l.append(pair.lambda_R), rows_s.append("ok"), rows_it.append(pair.iterations)
        if 0 < cfg["subwindow"] <= R:
            ranges.append((R, lin.difference_range(f, pair, cfg["subwindow"])))
    io.write_csv(out / "spectrum.csv", ("R", "lambda", "status", "iterations"),
                 (np.array(rows_R), np.array(rows_l), np.array(rows_s), np.array(rows_it, dtype=int)))

    ok = [(R, lam) for R, lam, s in zip(rows_R, rows_l, rows_s) if s == "ok"]
    lams = [lam for _, lam in sorted(ok)]
    items = [("background", cfg["background"]), ("h", h), ("failed", failed),
             ("min_lambda", min(lams) if lams else math.nan),
             ("non_increasing", all(b <= a + 1e-12 for a, b in zip(lams, lams[1:])))]
    if cfg["background"] == "constant":
        eig = np.linalg.eigvalsh(pot.potential_hessian((P.a, P.b), P).matrix())
        items.append(("min_eig_hessian_end_state", float(eig[0])))
    for R, (lo, hi) in ranges:
        items += [(f"D_min_R{R:g}", lo), (f"D_max_R{R:g}", hi)]
    r0 = min(radii)
    if cfg["dense_check"] and int(np.sum(lin.disc_mask(f, r0) & interior_mask(f))) <= cfg["dense_max_nodes"]:
        dense = lin.dense_lowest_eigenvalue(f, r0, P)
        items.append(("dense_lambda_smallest_R", dense))
        iterative = dict(ok).get(r0, math.nan)
        items.append(("dense_abs_diff", abs(iterative - dense)))
    _write_summary(out / "spectrum_summary.txt", items)
    return EXIT_SOLVER if failed else EXIT_OK


def _read_meta(path: Path) -> dict:
    meta = {}
    try:
        for line in path.read_text().splitlines():
            if "=" in line:
                k, v = line.split("=", 1)
                meta[k.strip()] = v.strip()
        return {"step": int(meta["step"]), "time": float(meta["time"])}
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError(f"resume metadata {path} unreadable: {exc}") from None


def _save_snapshot(path: Path, state: flow.FlowState) -> None:
    io.write_snapshot(path, state.field)
    io.atomic_write_text(Path(str(path) + ".meta"),
                         f"step={state.step_count}\ntime={io.fmt(state.time)}\ndt={io.fmt(state.dt)}\n")


def _flow_initial(P, cfg) -> tuple:
    h, nx, ny = cfg["h"], cfg["nx"], cfg["ny"]
    if cfg["resume"]:
        path = Path(cfg["resume"])
        try:
            f = io.read_snapshot(path)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot resume from {path}: {exc}") from None
        if f.shape != (nx, ny) or f.h != h:
            raise ConfigError(f"snapshot grid {f.shape}, h={f.h} does not match the config")
        meta = _read_meta(Path(str(path) + ".meta"))
        f = Field(f.u, f.v, f.h, f.origin, walls.periodic_x1_bc(P))
        return f, meta["step"], meta["time"]
    origin = (-0.5 * nx * h, -0.5 * (ny - 1) * h)
    profile = _background_profile(P, cfg, 0.5 * (ny - 1) * h + cfg["bend"])
    f = walls.wall_field(P, (nx, ny), h, origin, bend=cfg["bend"], profile=profile)
    if cfg["s_perturb"]:
        X1, X2 = f.mesh()
        bump = cfg["s_perturb"] * np.exp(-(X1**2 + X2**2) / 4.0) * interior_mask(f)
        f = f.with_values(f.u + bump, f.v + bump)
    return f, 0, 0.0


def _flow_diagnostics(f: Field, P, radius: float) -> dict:
    d = {}
    try:
        d["flatness"] = flow.flatness_metric(f)
    except RabiWallError:
        d["flatness"] = math.nan
    try:
        sl = flow.slope_fields(f)
        d["slope_std"], d["sup_diff"] = sl.stddev, sl.sup_diff
    except RabiWallError:
        d["slope_std"] = d["sup_diff"] = math.nan
    d["sup_dev"] = flow.decoupling_check(f, P)[0] if P.alpha == 2.0 else math.nan
    if radius > 0:
        d1u, d1v, d2u, d2v = (central_diff(a, f, k) for k in (0, 1) for a in (f.u, f.v))
        try:
            slopes = lin.slope_pair((d2u, d2v), (d1u, d1v))
            d["I_R"] = lin.weighted_dirichlet_integral(f, (d2u, d2v), slopes, radius)
        except RabiWallError:
            d["I_R"] = math.nan
    else:
        d["I_R"] = math.nan
    return d


def cmd_flow(cfg, out: Path) -> int:
    P = _params(cfg)
    _positive(cfg, "h", "dt", "tol", "chunk", "sample_every", "profile_h")
    if cfg["nx"] < 4 or cfg["ny"] < 4:
        raise ConfigError("nx and ny must be at least 4")
    if cfg["snapshot_every"] < 0 or (cfg["snapshot_every"] and cfg["snapshot_every"] % cfg["chunk"]):
        raise ConfigError("snapshot_every must be a non-negative multiple of chunk")
    f, step0, time0 = _flow_initial(P, cfg)
    dt = cfg["dt"]
    solver = flow.GradientFlow(f, P, dt)
    e0 = energy.total_energy(f, P)
    state = flow.FlowState(f, time0, step0, dt, np.array([e0]), np.array([step0]))

    cols = ("step", "time", "J", "step_change", "flatness", "slope_std", "sup_diff", "sup_dev", "I_R")
    diag = {k: [] for k in cols}

    def record(s, change):
        d = _flow_diagnostics(s.field, P, cfg["kernel_radius"])
        row = {"step": s.step_count, "time": s.step_count * dt, "J": s.energy_history[-1],
               "step_change": change, **d}
        for k in cols:
            diag[k].append(row[k])

    def flush():
        io.write_csv(out / "diagnostics.csv", cols,
                     [np.array(diag[k], dtype=int if k == "step" else float) for k in cols])
        io.write_energy_history_csv(out / "energy_history.csv", state)

    record(state, math.nan)
    chunk, every = cfg["chunk"], cfg["snapshot_every"]
    converged = False
    while state.step_count < cfg["max_steps"]:
        n = min(chunk - state.step_count % chunk, cfg["max_steps"] - state.step_count)
        try:
            prev = flow.evolve(state, n - 1, P, cfg["sample_every"], solver) if n > 1 else state
            new = flow.evolve(prev, 1, P, cfg["sample_every"], solver)
        except (StabilityViolation, NonFinite):
            _save_snapshot(out / "snapshot_last_good.txt", state)
            flush()
            raise
        change = flow.step_change(prev.field, new.field, dt)
        state = new
        record(state, change)
        if every and state.step_count % every == 0:
            _save_snapshot(out / f"snapshot_{state.step_count:08d}.txt", state)
        if change <= cfg["tol"]:
            converged = True
            break
    _save_snapshot(out / "snapshot_final.txt", state)
    flush()
    J = state.energy_history
    _write_summary(out / "flow_summary.txt", [
        ("converged", converged), ("steps", state.step_count), ("time", state.step_count * dt),
        ("final_step_change", diag["step_change"][-1]),
        ("flatness", diag["flatness"][-1]), ("slope_std", diag["slope_std"][-1]),
        ("sup_diff", diag["sup_diff"][-1]), ("sup_dev", diag["sup_dev"][-1]), ("I_R", diag["I_R"][-1]),
        ("max_energy_increase", float(np.max(np.diff(J))) if J.size > 1 else 0.0),
        ("elliptic_residual", flow.elliptic_residual(state.field, P)),
        ("warnings", len(state.warnings)),
    ])
    return EXIT_OK


def cmd_verify(cfg, out: Path) -> int:
    if cfg["mutation"] not in verify.MUTATIONS:
        raise ConfigError(f"mutation must be one of {', '.join(verify.MUTATIONS)}")
    names = [c.strip() for c in cfg["checks"].split(",") if c.strip()]
    known = {n for n, _ in verify.CHECKS}
    bad = [n for n in names if n not in known]
    if bad:
        raise ConfigError(f"unknown checks: {', '.join(bad)}")
    results = verify.run_checks(cfg["seed"], cfg["mutation"], names or None)
    text = verify.report_text(results)
    io.atomic_write_text(out / "verify_report.csv", text)
    print(text, end="")
    failed = sum(not r.passed for r in results)
    return min(255, EXIT_SOLVER + failed) if failed else EXIT_OK


COMMANDS = {
    "steady": cmd_steady,
    "profile": cmd_profile,
    "energy-scan": cmd_energy_scan,
    "spectrum": cmd_spectrum,
    "flow": cmd_flow,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rabiwall", description=__doc__.split("\n")[0])
    ap.add_argument("command", choices=list(COMMANDS))
    ap.add_argument("--config", help="INI file with one section per command")
    ap.add_argument("--out", default="out", help="output directory (default: out)")
    ap.add_argument("--threads", type=int, help="BLAS/LAPACK thread limit (0 = library default)")
    ap.add_argument("--seed", type=_seed, help="seed for randomized steps")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                    help="override one config key (repeatable)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args.config, args.command, args.set)
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.threads is not None:
            cfg["threads"] = args.threads
        if cfg["threads"] < 0:
            raise ConfigError("threads must be >= 0")
        out = Path(args.out)
        with _thread_limit(cfg["threads"]):
            return COMMANDS[args.command](cfg, out)
    except (ConfigError, ParamsOutOfRange) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RabiWallError as exc:
        print(f"solver failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
