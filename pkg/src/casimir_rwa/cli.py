"""Command-line front end: ``casimir-rwa {evolve,compare,sweep,check}``.

Configuration comes from an optional flat ``key=value`` file (``#`` starts a
comment) overridden by command-line flags.  Results go to CSV with a header
row, LF line endings and 17 significant digits per number.

Exit codes: 0 success, 1 check failure, 2 configuration error,
3 numerical error (norm drift, singular alpha, overflow).
"""

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import Optional, Tuple

import numpy as np

from . import checks, fock, model, observables
from .errors import CasimirError, NormDrift
from .integrator import IntegrationConfig, integrate
from .model import HamiltonianKind, ModelParams

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SCENARIOS = ("evolve", "compare", "sweep", "check")


class ConfigError(ValueError):
    pass


def _floats(text):
    return tuple(float(x) for x in str(text).split(",") if x.strip())


@dataclass(frozen=True)
class RunConfig:
    omega0: float = 1.0
    epsilon: float = 0.05
    eta: float = 2.0
    dim: int = fock.DEFAULT_DIM
    dt: Optional[float] = None
    t_final: float = 10.0
    record_stride: int = 100
    scenario: str = "evolve"
    output: Optional[str] = None
    sigma_list: Tuple[float, ...] = (1.0, 2.0, 4.0)
    guard_band: Optional[int] = None
    leakage_tol: float = fock.DEFAULT_LEAKAGE_TOL
    kind: str = "rwa"
    epsilon_list: Tuple[float, ...] = ()
    eta_list: Tuple[float, ...] = ()

    def params(self):
        return ModelParams(self.omega0, self.epsilon, self.eta)

    def integration(self, kind=None):
        return IntegrationConfig(
            t_final=self.t_final,
            hamiltonian_kind=kind or self.kind,
            dt=self.dt,
            record_stride=self.record_stride,
            guard_band=self.guard_band,
            leakage_tol=self.leakage_tol,
        )


_PARSERS = {
    "omega0": float,
    "epsilon": float,
    "eta": float,
    "dim": int,
    "dt": float,
    "t_final": float,
    "record_stride": int,
    "scenario": str,
    "output": str,
    "sigma_list": _floats,
    "guard_band": int,
    "leakage_tol": float,
    "kind": str,
    "epsilon_list": _floats,
    "eta_list": _floats,
}


def parse_config_text(text):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = value
    return values


def build_config(file_values, overrides):
    """Merge raw string values from a config file with flag overrides (flags win)."""
    raw = dict(file_values)
    raw.update({k: v for k, v in overrides.items() if v is not None})
    kwargs = {}
    for key, value in raw.items():
        try:
            kwargs[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r}") from exc
    cfg = RunConfig(**kwargs)
    validate(cfg)
    return cfg


def validate(cfg):
    if cfg.scenario not in SCENARIOS:
        raise ConfigError(f"scenario must be one of {SCENARIOS}, got {cfg.scenario!r}")
    if cfg.kind not in {k.value for k in HamiltonianKind}:
        raise ConfigError(f"unknown Hamiltonian kind {cfg.kind!r}")
    if cfg.dim < 2:
        raise ConfigError(f"dim must be >= 2, got {cfg.dim}")
    if cfg.record_stride < 1:
        raise ConfigError("record_stride must be >= 1")
    if cfg.t_final < 0:
        raise ConfigError("t_final must be >= 0")
    if cfg.dt is not None and cfg.dt <= 0:
        raise ConfigError("dt must be positive")
    if not cfg.sigma_list or min(cfg.sigma_list) <= 0:
        raise ConfigError("sigma_list must hold positive values")
    try:
        cfg.params()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------- CSV output


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


class _CsvSink:
    def __init__(self, path):
        self.path = path
        self._fh = None

    def __enter__(self):
        if self.path in (None, "-"):
            self._fh = None
            self.writer = csv.writer(sys.stdout, lineterminator="\n")
        else:
            self._fh = open(self.path, "w", newline="", encoding="utf-8")
            self.writer = csv.writer(self._fh, lineterminator="\n")
        return self

    def row(self, values):
        self.writer.writerow([v if isinstance(v, str) else _fmt(v) for v in values])

    def flush(self):
        (self._fh or sys.stdout).flush()

    def __exit__(self, *exc):
        if self._fh is not None:
            self._fh.close()
        else:
            sys.stdout.flush()
        return False


# ----------------------------------------------------------------- scenarios

EVOLVE_HEADER = ("t", "mean_n_analytic", "mean_n_ode", "infidelity", "norm_ode", "leakage")
COMPARE_HEADER = (
    "sigma",
    "eta",
    "terminal_infidelity",
    "terminal_mean_n_approx",
    "terminal_mean_n_rwa",
)
SWEEP_HEADER = ("epsilon", "eta", "mean_n", "infidelity", "leakage")


def evolve_rows(cfg):
    """Rows of the evolve table; on norm drift the rows computed so far are
    attached to the raised :class:`NormDrift` as ``rows``."""
    p = cfg.params()
    psi0 = fock.vacuum(cfg.dim)

    def rows_for(traj):
        out = []
        for t, state, nrm, rep in zip(traj.times, traj.states, traj.norms, traj.leakage):
            exact = model.vacuum_solution_closed_form(p, t, cfg.dim)
            out.append(
                (
                    t,
                    model.mean_photons_closed_form(p, t),
                    observables.mean_photon_number(state),
                    observables.infidelity(exact, state),
                    nrm,
                    rep.leakage,
                )
            )
        return out

    try:
        traj = integrate(p, psi0, cfg.integration())
    except NormDrift as exc:
        exc.rows = rows_for(exc.trajectory)
        raise
    return rows_for(traj)


def cmd_evolve(cfg):
    with _CsvSink(cfg.output) as sink:
        sink.row(EVOLVE_HEADER)
        try:
            rows = evolve_rows(cfg)
        except NormDrift as exc:
            for r in exc.rows:
                sink.row(r)
            sink.flush()
            raise
        for r in rows:
            sink.row(r)
    return EXIT_OK


def compare_row(cfg, sigma):
    """Approx-Hamiltonian ODE against the analytic RWA solution at eta = sigma * 2 omega0.

    The two-photon coupling d = epsilon * eta / 4 is held at the configured
    value, so epsilon shrinks as eta grows.
    """
    d = 0.25 * cfg.epsilon * cfg.eta
    eta = sigma * 2.0 * cfg.omega0
    p = ModelParams(cfg.omega0, 4.0 * d / eta, eta)
    psi0 = fock.vacuum(cfg.dim)
    run = replace(cfg, record_stride=10**9)
    traj = integrate(p, psi0, run.integration(HamiltonianKind.APPROX))
    rwa = model.vacuum_solution_closed_form(p, traj.t_end, cfg.dim)
    return (
        sigma,
        eta,
        observables.infidelity(rwa, traj.final),
        observables.mean_photon_number(traj.final),
        observables.mean_photon_number(rwa),
    )


def cmd_compare(cfg):
    rows = [compare_row(cfg, s) for s in cfg.sigma_list]
    with _CsvSink(cfg.output) as sink:
        sink.row(COMPARE_HEADER)
        for r in rows:
            sink.row(r)
    return EXIT_OK


def sweep_point(cfg, epsilon, eta):
    """Last row of the evolve scenario at one (epsilon, eta)."""
    t, mean_n, _, infid, _, leak = evolve_rows(replace(cfg, epsilon=epsilon, eta=eta))[-1]
    return (epsilon, eta, mean_n, infid, leak)


def sweep_workers():
    raw = os.environ.get("CASIMIR_RWA_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"CASIMIR_RWA_THREADS must be an integer, got {raw!r}")
    return os.cpu_count() or 1


def sweep_rows(cfg):
    epsilons = cfg.epsilon_list or (cfg.epsilon,)
    etas = cfg.eta_list or (cfg.eta,)
    grid = [(e, h) for e in epsilons for h in etas]
    for e, h in grid:
        try:
            ModelParams(cfg.omega0, e, h)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    workers = min(sweep_workers(), len(grid))
    if workers <= 1:
        return [sweep_point(cfg, e, h) for e, h in grid]
    # kernels release the GIL; map keeps grid order
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda eh: sweep_point(cfg, *eh), grid))


def cmd_sweep(cfg):
    rows = sweep_rows(cfg)
    with _CsvSink(cfg.output) as sink:
        sink.row(SWEEP_HEADER)
        for r in rows:
            sink.row(r)
    return EXIT_OK


def cmd_check(cfg, fault=False, stream=None):
    stream = stream or sys.stdout
    results = checks.run_all(fault=fault)
    for r in results:
        print(r.line(), file=stream)
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed", file=stream)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ----------------------------------------------------------------------- main


def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir-rwa",
        description="Analytic RWA evolution of the Law DCE Hamiltonian vs an RK4 Fock-space oracle.",
    )
    parser.add_argument("scenario", nargs="?", choices=SCENARIOS)
    parser.add_argument("-c", "--config", help="key=value configuration file")
    parser.add_argument("-o", "--output", help="CSV output path (default: stdout)")
    for name in ("omega0", "epsilon", "eta", "dt", "t_final", "leakage_tol"):
        parser.add_argument(f"--{name.replace('_', '-')}", dest=name)
    for name in ("dim", "record_stride", "guard_band"):
        parser.add_argument(f"--{name.replace('_', '-')}", dest=name)
    parser.add_argument("--kind", choices=[k.value for k in HamiltonianKind])
    parser.add_argument("--sigma-list", dest="sigma_list", help="comma-separated, e.g. 1,2,4")
    parser.add_argument("--epsilon-list", dest="epsilon_list")
    parser.add_argument("--eta-list", dest="eta_list")
    parser.add_argument(
        "--inject-fault",
        action="store_true",
        help="check only: flip the sign of K- to confirm the suite catches it",
    )
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {f.name: getattr(args, f.name, None) for f in fields(RunConfig)}
    overrides["scenario"] = args.scenario
    try:
        file_values = {}
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                file_values = parse_config_text(fh.read())
        cfg = build_config(file_values, overrides)
    except (ConfigError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    commands = {"evolve": cmd_evolve, "compare": cmd_compare, "sweep": cmd_sweep}
    try:
        if cfg.scenario == "check":
            return cmd_check(cfg, fault=args.inject_fault)
        return commands[cfg.scenario](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CasimirError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
