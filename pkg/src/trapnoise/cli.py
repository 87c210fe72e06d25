"""Command-line front end: ``trapnoise <command> [flags]``.

Commands
--------
fdt    Field noise above a layer stack over a temperature grid (CSV).
jnn    Johnson-noise budget of an electrode inventory (CSV).
fit    Power-law / temperature-model / surface-model fits (JSON report).
taf    Thermally-activated-fluctuator exponent prediction (CSV).
zeta   Patch-noise share of a target region vs fluctuation ratio (CSV).
synth  Synthetic heating-rate datasets from model parameters (CSV).

Every output embeds a run manifest (seed, configs, tool version, constants
fingerprint; no timestamps), so repeated runs with identical inputs produce
byte-identical files.  Exit codes: 0 success, 2 config error, 3 data error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from . import __version__
from .configio import (
    ConfigFileError,
    DataFileError,
    config_roles,
    format_value,
    load_circuit,
    load_materials,
    load_scene,
    load_stack,
    load_surface_params,
    load_temp_params,
    make_manifest,
    packaged_config,
    read_heating_csv,
    write_csv,
    write_heating_csv,
    write_json_report,
)
from .constants import (
    CONSTANTS,
    DomainError,
    heating_rate_from_noise,
    noise_from_heating_rate,
    omega_from_hz,
)
from .inference import (
    HeatingDataset,
    HeatingRecord,
    fit_freq_power_law,
    fit_surface_models,
    fit_temperature_models,
    loglog_spline_slope,
    plateau_width,
    synth_dataset,
    synth_surface,
    taf_alpha,
    taf_consistency_chi2,
)
from .layers import DegenerateInterfaceError
from .leastsq import FitFailure
from .materials import TemperatureRangeError, TwoFluidSC
from .noise import (
    electrode_resistance,
    fdt_noise,
    filter_effective_resistance,
    lead_resistance,
)
from .patches import PatchBudgetError, zeta as zeta_share
from .quadrature import QuadratureFailure

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

_NUMERIC_ERRORS = (
    DomainError,
    QuadratureFailure,
    FitFailure,
    PatchBudgetError,
    TemperatureRangeError,
    DegenerateInterfaceError,
)

_DEFAULT_CONFIGS = {
    "materials": ("materials", "default"),
    "stack": ("stacks", "sapphire-ybco"),
    "circuit": ("circuits", "ybco-trap"),
    "scene": ("scenes", "ybco-chip"),
}

_SYNTH_DEFAULT_PARAMS = {
    "gamma1": ("synth", "temp-simple"),
    "gamma2": ("synth", "temp-piecewise"),
    "power": ("synth", "surface-power"),
    "arrhenius": ("synth", "surface-arrhenius"),
}

_DEFAULT_TEMPS = "15,40,60,80,90,100,120,160,200"


# ---------------------------------------------------------------------------
# small helpers


def parse_grid(text: str) -> list[float]:
    """Comma-separated values; a ``lo:hi:n`` token expands to a linear grid."""
    values: list[float] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            parts = token.split(":")
            if len(parts) != 3:
                raise ConfigFileError(f"bad grid token {token!r}; want lo:hi:n")
            try:
                lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ConfigFileError(f"bad grid token {token!r}: {exc}") from exc
            if n < 1:
                raise ConfigFileError(f"grid count must be >= 1 in {token!r}")
            values.extend(float(v) for v in np.linspace(lo, hi, n))
        else:
            try:
                values.append(float(token))
            except ValueError as exc:
                raise ConfigFileError(f"bad grid value {token!r}") from exc
    if not values:
        raise ConfigFileError(f"empty grid {text!r}")
    return values


def resolve_configs(paths, needed: tuple[str, ...]) -> dict[str, str]:
    """Map config roles to file paths, filling gaps with packaged defaults.

    Each ``--config`` file declares its roles through its section names; a
    file may serve several roles at once, but two files must not claim the
    same role.  Files providing none of the needed roles are an error.
    """
    resolved: dict[str, str] = {}
    for path in paths:
        roles = config_roles(path) & set(needed)
        if not roles:
            raise ConfigFileError(
                f"{path}: provides none of the roles {needed} used here"
            )
        for role in roles:
            if role in resolved:
                raise ConfigFileError(
                    f"role '{role}' given twice: {resolved[role]} and {path}"
                )
            resolved[role] = str(path)
    for role in needed:
        if role not in resolved:
            category, name = _DEFAULT_CONFIGS[role]
            resolved[role] = str(packaged_config(category, name))
    return resolved


def _thread_map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _default_threads() -> int:
    return min(8, os.cpu_count() or 1)


def _require_single_frequency(dataset: HeatingDataset, what: str) -> float:
    freqs = sorted({r.f_secular for r in dataset.records})
    if len(freqs) != 1:
        raise DataFileError(
            f"{what} needs a single-frequency dataset, got frequencies {freqs}"
        )
    return freqs[0]


def _surface_curve(dataset: HeatingDataset, omega: float):
    """(T, S_E, sigma_S) tuples converted from heating-rate records."""
    return [
        (
            r.temperature,
            noise_from_heating_rate(r.gamma, omega),
            noise_from_heating_rate(r.sigma_gamma, omega),
        )
        for r in dataset.records
    ]


# ---------------------------------------------------------------------------
# commands


def cmd_fdt(args) -> int:
    configs = resolve_configs(args.config, ("materials", "stack"))
    materials = load_materials(configs["materials"])
    stack = load_stack(configs["stack"], materials)
    temps = parse_grid(args.temps)
    omega = omega_from_hz(args.omega_hz)
    distance = args.distance_um * 1e-6
    lambdas = args.lambda0_nm or []

    if lambdas:
        has_sc = any(isinstance(lay.material, TwoFluidSC) for lay in stack.layers)
        if not has_sc:
            raise ConfigFileError(
                "--lambda0-nm given but the stack has no superconducting layer"
            )
        stacks = []
        for nm in lambdas:
            layers = tuple(
                replace(lay, material=replace(lay.material, lambda0=nm * 1e-9))
                if isinstance(lay.material, TwoFluidSC)
                else lay
                for lay in stack.layers
            )
            stacks.append(replace(stack, layers=layers))
        s_cols = [f"S_E_V2m2Hz_lam0_{nm:g}nm" for nm in lambdas]
    else:
        stacks = [stack]
        s_cols = ["S_E_V2m2Hz"]

    def one(temperature: float):
        row = [temperature]
        results = [
            fdt_noise(s, omega, temperature, distance, rel_tol=args.tolerance)
            for s in stacks
        ]
        row.append(results[0].s_blackbody)
        row.extend(r.s_e for r in results)
        return row

    rows = _thread_map(one, temps, args.threads)
    manifest = make_manifest(
        "fdt",
        config_paths=[configs["materials"], configs["stack"]],
        overrides={
            "omega_hz": args.omega_hz,
            "temps": args.temps,
            "distance_um": args.distance_um,
            "tolerance": args.tolerance,
            "lambda0_nm": ",".join(f"{nm:g}" for nm in lambdas),
        },
        seed=args.seed,
    )
    write_csv(args.out, manifest, ["T_K", "S_BB_V2m2Hz", *s_cols], rows)
    return EXIT_OK


def cmd_jnn(args) -> int:
    configs = resolve_configs(args.config, ("materials", "circuit"))
    materials = load_materials(configs["materials"])
    electrodes = load_circuit(configs["circuit"], materials)
    temps = parse_grid(args.temps)
    omega = omega_from_hz(args.omega_hz)

    def one(temperature: float):
        block = []
        total = 0.0
        for e in electrodes:
            r_filter = (
                filter_effective_resistance(e.filter, omega)
                if e.filter is not None
                else 0.0
            )
            r_lead = lead_resistance(e.lead, omega, temperature)
            r_elec = electrode_resistance(e, temperature, omega)
            r_eff = r_filter + r_lead + r_elec
            s_e = (
                4.0 * CONSTANTS.kB * temperature * r_eff
                / e.characteristic_distance**2
            )
            total += s_e
            block.append(
                [
                    temperature,
                    e.name,
                    r_filter,
                    r_lead,
                    r_elec,
                    r_eff,
                    e.characteristic_distance,
                    s_e,
                    heating_rate_from_noise(s_e, omega),
                ]
            )
        block.append(
            [
                temperature,
                "TOTAL",
                None,
                None,
                None,
                None,
                None,
                total,
                heating_rate_from_noise(total, omega),
            ]
        )
        return block

    blocks = _thread_map(one, temps, args.threads)
    rows = [row for block in blocks for row in block]
    manifest = make_manifest(
        "jnn",
        config_paths=[configs["materials"], configs["circuit"]],
        overrides={"omega_hz": args.omega_hz, "temps": args.temps},
        seed=args.seed,
    )
    header = [
        "T_K",
        "electrode",
        "R_filter_ohm",
        "R_lead_ohm",
        "R_elec_ohm",
        "R_eff_ohm",
        "D_m",
        "S_E_V2m2Hz",
        "gamma_phps",
    ]
    write_csv(args.out, manifest, header, rows)
    return EXIT_OK


def _score_dict(score) -> dict:
    return {
        "rss": score.rss,
        "n_data": score.n_data,
        "n_params": score.n_params,
        "aic": score.aic,
        "bic": score.bic,
        "perfect": score.perfect,
    }


def _temp_fit_dict(fit) -> dict:
    p = fit.params
    out = {
        "gamma0_phps": {repr(f): g for f, g in sorted(p.gamma0.items())},
        "t1_K": p.t1,
        "beta1": p.beta1,
    }
    if p.piecewise:
        out.update({"t2_K": p.t2, "beta2": p.beta2, "t_star_K": p.t_star})
    return {
        "params": out,
        "errors": dict(fit.global_errors),
        "score": _score_dict(fit.score),
    }


def _fit_temp_report(dataset: HeatingDataset, args) -> dict:
    if len({r.temperature for r in dataset.records}) < 4:
        raise DataFileError("temperature-model fit needs >= 4 distinct temperatures")
    comparison = fit_temperature_models(dataset)
    report = {
        "mode": "temp",
        "n_records": len(dataset.records),
        "simple": _temp_fit_dict(comparison.simple),
        "piecewise": _temp_fit_dict(comparison.piecewise),
        "delta_aic": comparison.delta_aic,
        "aic_prefers_piecewise": comparison.delta_aic < 0.0,
        "plateau": {
            "tolerance_frac": args.plateau_tol,
            "width_K": plateau_width(comparison.piecewise.params, args.plateau_tol),
        },
    }
    return report


def _fit_freq_report(dataset: HeatingDataset) -> dict:
    groups: dict[float, list] = {}
    for r in dataset.records:
        groups.setdefault(r.temperature, []).append(r)
    fits = []
    for temperature in sorted(groups):
        recs = groups[temperature]
        if len({r.f_secular for r in recs}) < 3:
            raise DataFileError(
                f"frequency fit at T = {temperature} K needs >= 3 distinct "
                "frequencies"
            )
        points = [
            (omega_from_hz(r.f_secular), r.gamma, r.sigma_gamma) for r in recs
        ]
        fit = fit_freq_power_law(points)
        err_g, err_a = fit.errors()
        fits.append(
            {
                "T_K": temperature,
                "n_points": len(points),
                "gamma_coeff_phps": fit.gamma_coeff,
                "alpha": fit.alpha,
                "errors": {"gamma_coeff_phps": err_g, "alpha": err_a},
                "omega0_rad_s": fit.omega0,
            }
        )
    return {"mode": "freq", "n_records": len(dataset.records), "fits": fits}


def _surface_fit_dict(fit) -> dict:
    return {
        "params": dict(fit.params),
        "errors": dict(fit.errors),
        "chi2": fit.chi2,
        "chi2_red": fit.chi2_red,
        "p_value": fit.p_value,
    }


def _fit_surface_report(dataset: HeatingDataset) -> dict:
    f_hz = _require_single_frequency(dataset, "surface-model fit")
    curve = _surface_curve(dataset, omega_from_hz(f_hz))
    if len(curve) < 5:
        raise DataFileError("surface-model fit needs >= 5 points")
    fits = fit_surface_models(curve)
    return {
        "mode": "surface",
        "n_records": len(dataset.records),
        "f_Hz": f_hz,
        "power": _surface_fit_dict(fits.power),
        "arrhenius": _surface_fit_dict(fits.arrhenius),
    }


def cmd_fit(args) -> int:
    dataset = read_heating_csv(args.data)
    if args.model == "temp":
        report = _fit_temp_report(dataset, args)
    elif args.model == "freq":
        report = _fit_freq_report(dataset)
    else:
        report = _fit_surface_report(dataset)
    manifest = make_manifest(
        "fit",
        config_paths=[str(args.data)],
        overrides={"model": args.model},
        seed=args.seed,
    )
    write_json_report(args.out, manifest, report)
    return EXIT_OK


def _read_alpha_csv(path):
    """(alpha, sigma_alpha, T) triples from a T_K,alpha,sigma_alpha CSV."""
    expected = ("T_K", "alpha", "sigma_alpha")
    rows = []
    header_seen = False
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise DataFileError(f"cannot read data file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = [f.strip() for f in text.split(",")]
            if not header_seen:
                if tuple(fields) != expected:
                    raise DataFileError(
                        f"{path}:{lineno}: expected header "
                        f"'{','.join(expected)}', got {text!r}"
                    )
                header_seen = True
                continue
            if len(fields) != 3:
                raise DataFileError(f"{path}:{lineno}: expected 3 fields")
            try:
                t_k, alpha, sigma = (float(f) for f in fields)
            except ValueError as exc:
                raise DataFileError(f"{path}:{lineno}: {exc}") from exc
            rows.append((alpha, sigma, t_k))
    if not rows:
        raise DataFileError(f"{path}: no data rows")
    return rows


def cmd_taf(args) -> int:
    dataset = read_heating_csv(args.data)
    f_hz = _require_single_frequency(dataset, "TAF analysis")
    curve_pts = _surface_curve(dataset, omega_from_hz(f_hz))
    omega = omega_from_hz(args.omega_hz)
    seed = args.seed if args.seed is not None else 7041
    curve = loglog_spline_slope(curve_pts, n_boot=args.n_boot, seed=seed)

    temps = sorted({r.temperature for r in dataset.records})
    t_arr = np.array(temps)
    slopes = np.atleast_1d(curve(t_arr))
    lo, hi = curve.band(t_arr)
    lo = np.atleast_1d(lo)
    hi = np.atleast_1d(hi)
    rows = [
        [t, s, s_lo, s_hi, taf_alpha(s, omega, args.tau0_s)]
        for t, s, s_lo, s_hi in zip(temps, slopes, lo, hi)
    ]

    consistency = None
    if args.alphas is not None:
        measured = _read_alpha_csv(args.alphas)
        chi2, p = taf_consistency_chi2(
            measured,
            lambda t: taf_alpha(float(curve(t)), omega, args.tau0_s),
        )
        consistency = {"chi2": chi2, "p_value": p, "n_points": len(measured)}

    manifest = make_manifest(
        "taf",
        config_paths=[str(args.data)]
        + ([str(args.alphas)] if args.alphas else []),
        overrides={
            "omega_hz": args.omega_hz,
            "tau0_s": args.tau0_s,
            "n_boot": args.n_boot,
        },
        seed=seed,
    )
    header = ["T_K", "dlnS_dlnT", "slope_lo16", "slope_hi84", "alpha_pred"]
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# manifest: {manifest.to_json()}\n")
        if consistency is not None:
            blob = json.dumps(consistency, sort_keys=True, separators=(",", ":"))
            fh.write(f"# taf-consistency: {blob}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")
    if consistency is not None:
        print(
            f"taf consistency: chi2 = {consistency['chi2']:.4g} over "
            f"{consistency['n_points']} points, p = {consistency['p_value']:.3g}"
        )
    return EXIT_OK


def cmd_zeta(args) -> int:
    configs = resolve_configs(args.config, ("scene",))
    scene = load_scene(configs["scene"])
    if all(region.name != args.target for region in scene.regions):
        names = ", ".join(region.name for region in scene.regions)
        raise ConfigFileError(
            f"target region '{args.target}' not in scene (regions: {names})"
        )
    ratios = parse_grid(args.f_ratios)
    if any(r < 0.0 for r in ratios):
        raise ConfigFileError("f-ratios must be >= 0")
    patch_size = args.patch_um * 1e-6

    # The region integrals are independent of the ratio, so compute them once
    # and sweep the ratio analytically.
    ref = zeta_share(scene, 1.0, patch_size, target_name=args.target,
                     exact=args.exact)
    i_target = ref.region_integrals[args.target]
    rest = sum(
        region.weight * ref.region_integrals[region.name]
        for region in scene.regions
        if region.name != args.target
    )
    rows = [
        [r, r * i_target / (r * i_target + rest) if r > 0.0 else 0.0]
        for r in ratios
    ]

    manifest = make_manifest(
        "zeta",
        config_paths=[configs["scene"]],
        overrides={
            "f_ratios": args.f_ratios,
            "patch_um": args.patch_um,
            "target": args.target,
            "exact": args.exact,
        },
        seed=args.seed,
    )
    write_csv(args.out, manifest, ["f_ratio", "zeta"], rows)
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.params is not None:
        params_path = str(args.params)
    else:
        category, name = _SYNTH_DEFAULT_PARAMS[args.model]
        params_path = str(packaged_config(category, name))
    temps = parse_grid(args.temps)
    seed = args.seed if args.seed is not None else 0

    if args.model in ("gamma1", "gamma2"):
        params = load_temp_params(params_path)
        if args.model == "gamma2" and not params.piecewise:
            raise ConfigFileError(
                f"{params_path}: gamma2 needs t2_K, beta2, t_star_K"
            )
        freqs = parse_grid(args.freqs) if args.freqs else sorted(params.gamma0)
        missing = [f for f in freqs if f not in params.gamma0]
        if missing:
            raise ConfigFileError(
                f"{params_path}: no gamma0 for frequencies {missing}"
            )
        dataset = synth_dataset(
            args.model, params, temps, freqs, args.noise_frac, seed
        )
    else:
        params = load_surface_params(params_path, args.model)
        pts = synth_surface(args.model, params, temps, args.noise_frac, seed)
        omega = omega_from_hz(args.f_hz)
        records = tuple(
            HeatingRecord(
                temperature=t,
                f_secular=args.f_hz,
                gamma=heating_rate_from_noise(s, omega),
                sigma_gamma=heating_rate_from_noise(sigma, omega),
            )
            for t, s, sigma in pts
        )
        dataset = HeatingDataset(records)

    manifest = make_manifest(
        "synth",
        config_paths=[params_path],
        overrides={
            "model": args.model,
            "temps": args.temps,
            "freqs": args.freqs or "",
            "noise_frac": args.noise_frac,
            "f_hz": args.f_hz,
        },
        seed=seed,
    )
    write_heating_csv(args.out, dataset, manifest)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser, needs_config: bool = True) -> None:
    parser.add_argument(
        "--out", required=True, help="output file path (CSV or JSON)"
    )
    parser.add_argument(
        "--seed", type=int, default=None, help="seed recorded in the manifest"
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=_default_threads(),
        help="worker threads for sweeps (default: CPU count, capped at 8)",
    )
    if needs_config:
        parser.add_argument(
            "--config",
            action="append",
            default=[],
            metavar="PATH",
            help="config file; repeatable, roles inferred from sections",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trapnoise",
        description="Electric-field noise calculations for layered ion traps.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fdt", help="field noise above a layer stack")
    _add_common(p)
    p.add_argument("--temps", default="10:250:25", help="temperature grid (K)")
    p.add_argument("--omega-hz", type=float, default=1e6, help="frequency (Hz)")
    p.add_argument(
        "--distance-um", type=float, default=225.0, help="ion-surface gap (um)"
    )
    p.add_argument(
        "--tolerance", type=float, default=1e-6, help="quadrature rel. tolerance"
    )
    p.add_argument(
        "--lambda0-nm",
        type=float,
        action="append",
        metavar="NM",
        help="override the superconductor London depth; repeat for a band",
    )
    p.set_defaults(func=cmd_fdt)

    p = sub.add_parser("jnn", help="Johnson-noise budget of the electrodes")
    _add_common(p)
    p.add_argument("--temps", default="10:210:21", help="temperature grid (K)")
    p.add_argument("--omega-hz", type=float, default=1e6, help="frequency (Hz)")
    p.set_defaults(func=cmd_jnn)

    p = sub.add_parser("fit", help="fit heating-rate data")
    _add_common(p, needs_config=False)
    p.add_argument("--data", required=True, help="heating-rate CSV")
    p.add_argument(
        "--model",
        required=True,
        choices=("freq", "temp", "surface"),
        help="fit family",
    )
    p.add_argument(
        "--plateau-tol",
        type=float,
        default=0.1,
        help="relative rise defining the plateau width (temp model)",
    )
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("taf", help="fluctuator-model exponent prediction")
    _add_common(p, needs_config=False)
    p.add_argument("--data", required=True, help="heating-rate CSV (single f)")
    p.add_argument(
        "--omega-hz", type=float, default=1e6, help="prediction frequency (Hz)"
    )
    p.add_argument(
        "--tau0-s", type=float, default=1e-13, help="fluctuator attempt time (s)"
    )
    p.add_argument(
        "--n-boot", type=int, default=200, help="bootstrap refits for the band"
    )
    p.add_argument(
        "--alphas",
        default=None,
        help="optional T_K,alpha,sigma_alpha CSV for the consistency test",
    )
    p.set_defaults(func=cmd_taf)

    p = sub.add_parser("zeta", help="patch-noise share of a surface region")
    _add_common(p)
    p.add_argument(
        "--f-ratios",
        default="0:1:21",
        help="fluctuation-strength ratios (grid syntax like --temps)",
    )
    p.add_argument(
        "--patch-um", type=float, default=1.0, help="patch edge length (um)"
    )
    p.add_argument("--target", default="ybco", help="target region name")
    p.add_argument(
        "--exact",
        action="store_true",
        help="sum every patch directly instead of the hybrid far field",
    )
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    _add_common(p, needs_config=False)
    p.add_argument(
        "--model",
        required=True,
        choices=("gamma1", "gamma2", "power", "arrhenius"),
        help="generating model",
    )
    p.add_argument(
        "--params", default=None, help="parameter config (default: packaged)"
    )
    p.add_argument("--temps", default=_DEFAULT_TEMPS, help="temperature grid (K)")
    p.add_argument(
        "--freqs",
        default=None,
        help="secular frequencies in Hz (default: all in the params file)",
    )
    p.add_argument(
        "--noise-frac", type=float, default=0.1, help="relative noise level"
    )
    p.add_argument(
        "--f-hz",
        type=float,
        default=1e6,
        help="embedding frequency for surface-model datasets (Hz)",
    )
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigFileError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataFileError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except _NUMERIC_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
