"""Command-line front end: spectra, dynamics, N00N statistics, validation.

Every run resolves its configuration from built-in defaults, then an
optional JSON config file, then explicit flags, and writes plot-ready CSV
files next to JSON sidecars echoing the full resolved configuration.
Identical configurations produce byte-identical output.

Exit codes: 0 ok, 2 configuration error, 3 numerical failure,
4 validation failure.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click
import numpy as np

from . import __version__, effective, harmonic, jc, rpm
from .core import ModelParams, NumericalFailureError, smoothed_density
from .dynamics import default_time_grid, evolve, first_transfer_time
from .entanglement import default_sampling_window, sample_joint
from .validation import run_checks

MODELS = ("jc", "harmonic", "anharmonic-rpm", "anharmonic-oracle")

DEFAULTS = {
    "model": "anharmonic-oracle",
    "N": 100,
    "g": 1.2,
    "J": 0.8,
    "omega0": 1.0,
    "sigma": 1,
    "delta": 0.0,
    "epsilon": None,
    "tmax": None,
    "dt": None,
    "bins": 50,
    "points": 2000,
    "grid": None,
    "noon_threshold": 0.55,
    "transfer_threshold": 0.5,
    "checks": None,
    "sweep_n": None,
}


class ConfigError(Exception):
    pass


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(loaded, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    unknown = sorted(set(loaded) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {', '.join(unknown)}")
    return loaded


def _resolve(config_path: str | None, overrides: dict) -> dict:
    cfg = dict(DEFAULTS)
    cfg.update(_load_config(config_path))
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = value
    if cfg["model"] not in MODELS:
        raise ConfigError(f"model must be one of {', '.join(MODELS)}, got {cfg['model']!r}")
    return cfg


def _params(cfg: dict) -> ModelParams:
    try:
        return ModelParams(
            n_photons=cfg["N"],
            omega0=cfg["omega0"],
            g=cfg["g"],
            j_tun=cfg["J"],
            sigma=cfg["sigma"],
            delta=cfg["delta"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _worker_count() -> int:
    raw = os.environ.get("CAVITY_RPM_THREADS")
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError as exc:
        raise ConfigError(f"CAVITY_RPM_THREADS must be an integer, got {raw!r}") from exc
    if count < 1:
        raise ConfigError(f"CAVITY_RPM_THREADS must be >= 1, got {count}")
    return count


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _write_csv(path: Path, columns: list[tuple[str, np.ndarray]]):
    header = ",".join(name for name, _ in columns)
    rows = zip(*(np.atleast_1d(col) for _, col in columns)) if columns else ()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_header_only_csv(path: Path, names: list[str]):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(names) + "\n")


def _write_json(path: Path, payload: dict):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _sidecar(command: str, cfg: dict, extra: dict | None = None) -> dict:
    payload = {"command": command, "version": __version__, "config": cfg}
    if extra:
        payload.update(extra)
    return payload


def _line_spectra(model: str, params: ModelParams):
    if model == "jc":
        return jc.rabi_line_spectra(params, params.n_photons)
    if model == "harmonic":
        return harmonic.harmonic_line_spectra(params)
    if model == "anharmonic-oracle":
        h = effective.build_sector_hamiltonian(params)
        return effective.spectra_from_eigen(effective.diagonalize(h))
    raise ConfigError(
        f"model {model!r} provides no line spectrum; it evaluates broadened "
        "densities only (set epsilon)"
    )


def _default_energy_grid(model: str, params: ModelParams, epsilon: float, points: int):
    if model == "jc":
        spec00, _ = jc.rabi_line_spectra(params, params.n_photons)
        lo, hi = float(spec00.energies[0]), float(spec00.energies[-1])
    else:
        h = effective.build_sector_hamiltonian(params)
        reach = 2.0 * float(np.max(np.abs(h.offdiag), initial=0.0))
        lo = float(np.min(h.diag)) - reach
        hi = float(np.max(h.diag)) + reach
    pad = max(1.0, 5.0 * epsilon)
    return np.linspace(lo - pad, hi + pad, points)


def _energy_grid(cfg: dict, params: ModelParams) -> np.ndarray:
    points = int(cfg["points"])
    if points < 2:
        raise ConfigError(f"points must be >= 2, got {points}")
    if cfg["grid"] is not None:
        bounds = cfg["grid"]
        if (not isinstance(bounds, (list, tuple))) or len(bounds) != 2:
            raise ConfigError("grid must be a [min, max] pair")
        lo, hi = float(bounds[0]), float(bounds[1])
        if not hi > lo:
            raise ConfigError(f"grid upper bound must exceed lower bound, got {bounds}")
        return np.linspace(lo, hi, points)
    return _default_energy_grid(cfg["model"], params, cfg["epsilon"], points)


def _smoothed_pair(model: str, params: ModelParams, grid: np.ndarray, epsilon: float):
    if model == "anharmonic-rpm":
        workers = _worker_count()
        if workers > 1:
            chunks = np.array_split(grid, workers)
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(
                    pool.map(lambda c: rpm.rpm_spectra(params, c, epsilon), chunks)
                )
            return (
                np.concatenate([p[0] for p in parts]),
                np.concatenate([p[1] for p in parts]),
            )
        return rpm.rpm_spectra(params, grid, epsilon)
    spec00, specn0 = _line_spectra(model, params)
    rho00 = smoothed_density(spec00, grid, epsilon)
    rhon0 = np.real(smoothed_density(specn0, grid, epsilon))
    return rho00, rhon0


def _out_dir(out: str) -> Path:
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _common_options(f):
    options = [
        click.option("--config", "config_path", default=None,
                     type=click.Path(exists=False, dir_okay=False),
                     help="JSON config file; flags override its fields."),
        click.option("--out", "out", default=".",
                     type=click.Path(file_okay=False),
                     help="Output directory (created if missing)."),
        click.option("--model", default=None, type=str,
                     help="jc | harmonic | anharmonic-rpm | anharmonic-oracle"),
        click.option("--N", "n_photons", default=None, type=int,
                     help="Total photon number."),
        click.option("--g", default=None, type=float, help="Atom-photon coupling."),
        click.option("--J", "j_tun", default=None, type=float, help="Tunneling rate."),
        click.option("--omega0", default=None, type=float, help="Cavity frequency."),
        click.option("--sigma", default=None, type=int, help="Dressed branch, +1 or -1."),
        click.option("--epsilon", default=None, type=float,
                     help="Lorentzian broadening for densities."),
        click.option("--tmax", default=None, type=float, help="Time window length."),
        click.option("--dt", default=None, type=float, help="Time step."),
        click.option("--bins", default=None, type=int, help="Histogram bins per axis."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _overrides(model, n_photons, g, j_tun, omega0, sigma, epsilon, tmax, dt, bins):
    return {
        "model": model,
        "N": n_photons,
        "g": g,
        "J": j_tun,
        "omega0": omega0,
        "sigma": sigma,
        "epsilon": epsilon,
        "tmax": tmax,
        "dt": dt,
        "bins": bins,
    }


def _fail(exc: Exception, code: int):
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _guarded(fn):
    try:
        fn()
    except ConfigError as exc:
        _fail(exc, 2)
    except NumericalFailureError as exc:
        _fail(exc, 3)
    except ValueError as exc:
        _fail(exc, 2)


@click.group()
@click.version_option(version=__version__, prog_name="cavity-rpm")
def main():
    """Spectra, transfer dynamics and N00N statistics of coupled cavities."""


@main.command()
@_common_options
@click.option("--compare", is_flag=True,
              help="Evaluate recursion and eigensolver densities on one grid "
                   "and report their largest difference.")
def spectrum(config_path, out, compare, **flag_values):
    """Write line spectra or broadened densities of the edge states."""

    def run():
        cfg = _resolve(config_path, _overrides(**flag_values))
        params = _params(cfg)
        out_path = _out_dir(out)
        if compare:
            if cfg["epsilon"] is None:
                raise ConfigError("--compare needs epsilon to evaluate densities")
            grid = _energy_grid({**cfg, "model": "anharmonic-rpm"}, params)
            r00, rn0 = _smoothed_pair("anharmonic-rpm", params, grid, cfg["epsilon"])
            o00, on0 = _smoothed_pair("anharmonic-oracle", params, grid, cfg["epsilon"])
            csv_path = out_path / "spectrum_compare.csv"
            _write_csv(csv_path, [
                ("energy", grid),
                ("rho00_rpm", r00), ("rhoN0_rpm", rn0),
                ("rho00_oracle", o00), ("rhoN0_oracle", on0),
            ])
            report = {
                "linf_rho00": float(np.max(np.abs(r00 - o00))),
                "linf_rhoN0": float(np.max(np.abs(rn0 - on0))),
                "grid_points": int(grid.size),
            }
            _write_json(csv_path.with_suffix(".json"),
                        _sidecar("spectrum", cfg, {"compare": report}))
            click.echo(f"wrote {csv_path}")
            return
        if cfg["epsilon"] is None:
            spec00, specn0 = _line_spectra(cfg["model"], params)
            csv_path = out_path / f"spectrum_{cfg['model']}.csv"
            _write_csv(csv_path, [
                ("energy", spec00.energies),
                ("weight00", np.real(spec00.weights)),
                ("weightN0", np.real(specn0.weights)),
            ])
        else:
            grid = _energy_grid(cfg, params)
            rho00, rhon0 = _smoothed_pair(cfg["model"], params, grid, cfg["epsilon"])
            csv_path = out_path / f"spectrum_{cfg['model']}.csv"
            _write_csv(csv_path, [
                ("energy", grid), ("rho00", rho00), ("rhoN0", rhon0),
            ])
        _write_json(csv_path.with_suffix(".json"), _sidecar("spectrum", cfg))
        click.echo(f"wrote {csv_path}")

    _guarded(run)


def _amplitude_columns(prefix: str, ret, tra) -> list[tuple[str, np.ndarray]]:
    return [
        (f"{prefix}return_re", ret.values.real),
        (f"{prefix}return_im", ret.values.imag),
        (f"{prefix}return_abs", np.abs(ret.values)),
        (f"{prefix}transition_re", tra.values.real),
        (f"{prefix}transition_im", tra.values.imag),
        (f"{prefix}transition_abs", np.abs(tra.values)),
    ]


@main.command()
@_common_options
@click.option("--compare", is_flag=True,
              help="Add the harmonic baseline at the same N, J and omega0.")
@click.option("--first-transfer", "first_transfer", is_flag=True,
              help="Also write the first transition-peak time per model.")
def dynamics(config_path, out, compare, first_transfer, **flag_values):
    """Write return and transition amplitude time series."""

    def run():
        cfg = _resolve(config_path, _overrides(**flag_values))
        params = _params(cfg)
        if cfg["model"] == "anharmonic-rpm":
            raise ConfigError(
                "dynamics needs a line-resolved model "
                "(jc, harmonic or anharmonic-oracle)"
            )
        out_path = _out_dir(out)
        t_default, dt_default = default_time_grid(params)
        t_max = t_default if cfg["tmax"] is None else float(cfg["tmax"])
        dt = dt_default if cfg["dt"] is None else float(cfg["dt"])
        if t_max < 0:
            raise ConfigError(f"tmax must be >= 0, got {t_max}")
        models = [cfg["model"]]
        if compare and cfg["model"] != "harmonic":
            models.append("harmonic")
        csv_path = out_path / f"dynamics_{cfg['model']}.csv"
        names = ["t"]
        for model in models:
            prefix = "" if model == cfg["model"] else "harmonic_"
            names += [f"{prefix}{c}" for c in (
                "return_re", "return_im", "return_abs",
                "transition_re", "transition_im", "transition_abs",
            )]
        transfer: dict[str, float | None] = {}
        if t_max == 0:
            _write_header_only_csv(csv_path, names)
            if first_transfer:
                raise ConfigError("first-transfer needs a non-empty time window")
        else:
            columns: list[tuple[str, np.ndarray]] = []
            for model in models:
                spec00, specn0 = _line_spectra(model, params)
                ret, tra = evolve(spec00, specn0, t_max, dt)
                if not columns:
                    columns.append(("t", ret.times))
                prefix = "" if model == cfg["model"] else "harmonic_"
                columns += _amplitude_columns(prefix, ret, tra)
                transfer[model] = first_transfer_time(tra, cfg["transfer_threshold"])
            _write_csv(csv_path, columns)
        extra = {"t_max": t_max, "dt": dt}
        if first_transfer and t_max > 0:
            transfer_path = out_path / "first_transfer.json"
            _write_json(transfer_path, {
                "threshold": cfg["transfer_threshold"],
                "times": transfer,
                "version": __version__,
            })
            extra["first_transfer"] = str(transfer_path)
        _write_json(csv_path.with_suffix(".json"), _sidecar("dynamics", cfg, extra))
        click.echo(f"wrote {csv_path}")

    _guarded(run)


def _noon_single(cfg: dict, params: ModelParams):
    model = cfg["model"]
    if model not in ("harmonic", "anharmonic-oracle"):
        raise ConfigError(
            "noon statistics need sector line spectra; "
            "use model harmonic or anharmonic-oracle"
        )
    spec00, specn0 = _line_spectra(model, params)
    t_auto, dt_auto = default_sampling_window(params, spec00)
    t_max = t_auto if cfg["tmax"] is None else float(cfg["tmax"])
    dt = dt_auto if cfg["dt"] is None else float(cfg["dt"])
    ret, tra = evolve(spec00, specn0, t_max, dt)
    hist = sample_joint(ret, tra, int(cfg["bins"]))
    scores = (np.abs(ret.values) + np.abs(tra.values)) ** 2 / 2.0
    best = int(np.argmax(scores))
    summary = {
        "max_score": float(scores[best]),
        "argmax_time": float(ret.times[best]),
        "fraction_above": float(np.mean(scores > cfg["noon_threshold"])),
        "threshold": cfg["noon_threshold"],
        "n_samples": hist.n_samples,
        "t_max": t_max,
        "dt": dt,
    }
    return hist, summary


def _write_noon(out_path: Path, cfg: dict, suffix: str, hist, summary):
    centers = hist.bin_centers()
    c0 = np.repeat(centers, hist.size)
    cn = np.tile(centers, hist.size)
    csv_path = out_path / f"noon_{cfg['model']}{suffix}.csv"
    _write_csv(csv_path, [
        ("c0_center", c0), ("cN_center", cn), ("mass", hist.bins.ravel()),
    ])
    metadata = {
        "axes": "moduli",
        "bins": hist.size,
        "bin_width": hist.bin_width,
    }
    _write_json(csv_path.with_suffix(".json"),
                _sidecar("noon", cfg, {"summary": summary, "metadata": metadata}))
    return csv_path


@main.command()
@_common_options
def noon(config_path, out, **flag_values):
    """Histogram joint edge-state amplitudes and score N00N reachability."""

    def run():
        cfg = _resolve(config_path, _overrides(**flag_values))
        out_path = _out_dir(out)
        sweep = cfg["sweep_n"]
        if sweep is None:
            params = _params(cfg)
            hist, summary = _noon_single(cfg, params)
            csv_path = _write_noon(out_path, cfg, "", hist, summary)
            click.echo(f"wrote {csv_path}")
            return
        if not isinstance(sweep, (list, tuple)) or not sweep:
            raise ConfigError("sweep_n must be a non-empty list of photon numbers")
        cfgs = [{**cfg, "N": int(n), "sweep_n": None} for n in sweep]
        workers = min(_worker_count(), len(cfgs))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(
                    lambda c: _noon_single(c, _params(c)), cfgs
                ))
        else:
            results = [_noon_single(c, _params(c)) for c in cfgs]
        for sub_cfg, (hist, summary) in zip(cfgs, results):
            csv_path = _write_noon(out_path, sub_cfg, f"_N{sub_cfg['N']}", hist, summary)
            click.echo(f"wrote {csv_path}")

    _guarded(run)


@main.command()
@_common_options
def validate(config_path, out, **flag_values):
    """Run the named cross-check suite and write a pass/fail report."""

    def run():
        cfg = _resolve(config_path, _overrides(**flag_values))
        out_path = _out_dir(out)
        names = cfg["checks"]
        if names is not None:
            if not isinstance(names, (list, tuple)) or not names:
                raise ConfigError("checks must be a non-empty list of check names")
            names = [str(n) for n in names]
        try:
            report = run_checks(names)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        report_path = out_path / "validation_report.json"
        _write_json(report_path, _sidecar("validate", cfg, report.as_dict()))
        for result in report.results:
            status = "pass" if result.passed else "FAIL"
            click.echo(f"{status}  {result.name}: {result.detail}")
        click.echo(f"wrote {report_path}")
        if not report.passed:
            sys.exit(4)

    _guarded(run)


if __name__ == "__main__":
    main()
