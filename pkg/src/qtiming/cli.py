"""Command-line front end.

Subcommands compute widths, sweep photon numbers, grid the quantum/classical
ratio, locate transition photon numbers, evaluate air dispersion, and run
the numerical verification suites.  Every command writes a run manifest
(JSON) listing its parameters with units and every file it produced, so a
run can be reproduced from the manifest alone; CSV output is RFC-4180
style with '.' decimals and shortest-roundtrip float formatting, byte
identical across reruns with equal parameters.

Exit codes: 0 success, 1 usage error, 2 domain/validation error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .constants import sigma_phi_from_rad_per_s
from .distributions import (
    StateKind,
    StateSpec,
    TimingDistribution,
    TimingVariable,
    asymptotic_width,
    classical_shot_noise,
    classical_width,
    quantum_distribution,
    quantum_width,
    transition_photon_number,
)
from .errors import ConvergenceError, DomainError
from .media import (
    AirConditions,
    MediumSegment,
    PathPair,
    air_dispersion_coefficient,
    catalog_segment,
    edlen_refractivity,
    material_catalog,
    owens_refractivity,
    reference_air_beta,
)
from .montecarlo import SamplerConfig, sample_classical, sample_quantum
from .oracle import QuadratureSpec, verify_closed_form
from .spectral import GaussianSpectrum

MANIFEST_SCHEMA = "qtiming.run-manifest/1"
REPORT_SCHEMA = "qtiming.verification-report/1"
OUT_DIR_ENV = "QTIMING_OUT_DIR"

_LENGTH_UNITS_CM = {"cm": 1.0, "m": 100.0, "km": 100_000.0}
_SEGMENT_RE = re.compile(r"^([A-Za-z_][\w]*):([0-9.eE+\-]+)(cm|m|km)$")
_MATERIAL_ALIASES = {"silica": "fused_silica"}


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors on exit code 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    command: str
    parameters: dict
    outputs: list[str] = field(default_factory=list)
    artifact_version: str = __version__
    schema: str = MANIFEST_SCHEMA

    def write(self, out_dir: Path) -> Path:
        path = out_dir / f"{self.command}_manifest.json"
        payload = {
            "schema": self.schema,
            "command": self.command,
            "parameters": self.parameters,
            "artifact_version": self.artifact_version,
            "outputs": self.outputs,
            "timestamp_utc": datetime.now(timezone.utc).isoformat(),
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path


def _out_dir(args) -> Path:
    out = Path(args.out_dir or os.environ.get(OUT_DIR_ENV, "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else str(v) for v in row])


def _parse_segment(text: str) -> MediumSegment:
    match = _SEGMENT_RE.match(text)
    if match is None:
        raise DomainError(
            f"bad path segment {text!r}: expected MATERIAL:LENGTH with an explicit "
            "unit suffix, e.g. silica:1cm, air:10km"
        )
    material, length_str, unit = match.groups()
    length_cm = float(length_str) * _LENGTH_UNITS_CM[unit]
    material = _MATERIAL_ALIASES.get(material, material)
    if material == "air":
        return MediumSegment(label="air", alpha=0.0, beta=reference_air_beta(), length=length_cm)
    return catalog_segment(material, length_cm)


def _paths_from_args(parser: _Parser, args) -> tuple[PathPair, float]:
    """Resolve media flags into a PathPair; returns (paths, gdd_sum fs^2)."""
    has_paths = bool(args.path1 or args.path2)
    has_b = args.B is not None
    if has_paths and has_b:
        parser.error("--B conflicts with --path1/--path2; give one or the other")
    if not has_paths and not has_b:
        parser.error("media unspecified: give --B or --path1/--path2 explicitly")
    if has_b:
        # A bare total splits symmetrically across the two paths.
        half = args.B / 2.0
        paths = PathPair(
            [MediumSegment("aggregate", alpha=0.0, beta=half, length=1.0)],
            [MediumSegment("aggregate", alpha=0.0, beta=half, length=1.0)],
        )
        return paths, args.B
    path1 = [_parse_segment(s) for s in (args.path1 or [])]
    path2 = [_parse_segment(s) for s in (args.path2 or [])]
    paths = PathPair(path1, path2)
    _, gdd1, _, gdd2 = paths.coefficients()
    return paths, gdd1 + gdd2


def _spectrum_from_args(parser: _Parser, args) -> GaussianSpectrum:
    if args.sigma_phi is None:
        parser.error("--sigma-phi (rad/s) is required")
    return GaussianSpectrum.from_si(args.sigma_phi, wavelength_nm=args.wavelength)


def _state_from_args(parser: _Parser, args) -> StateSpec:
    kind = StateKind(args.state)
    if kind is StateKind.ENTANGLED_COHERENT:
        if args.v is None or args.u is None:
            parser.error("--state coherent needs --v and --u magnitudes")
        return StateSpec(kind=kind, n_photons=args.n, v_mag=args.v, u_mag=args.u)
    if args.v is not None or args.u is not None:
        parser.error("--v/--u apply only to --state coherent")
    return StateSpec(kind=kind, n_photons=args.n)


def _media_params(args) -> dict:
    return {
        "sigma_phi_rad_per_s": args.sigma_phi,
        "B_fs2": args.B,
        "path1": list(args.path1 or []),
        "path2": list(args.path2 or []),
        "wavelength_nm": args.wavelength,
    }


def _emit(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        width = max(len(k) for k in payload)
        for key, value in payload.items():
            print(f"{key:<{width}}  {value}")


def _add_common_output_flags(sub: _Parser) -> None:
    sub.add_argument("--out-dir", default=None,
                     help=f"output directory (default: ${OUT_DIR_ENV} or '.')")
    sub.add_argument("--json", action="store_true", help="print the report as JSON")


def _add_media_flags(sub: _Parser) -> None:
    sub.add_argument("--sigma-phi", type=float, default=None,
                     help="spectral one-sigma width, rad/s")
    sub.add_argument("--wavelength", type=float, default=800.0,
                     help="carrier wavelength, nm (default 800)")
    sub.add_argument("--B", type=float, default=None,
                     help="total group-delay dispersion beta1*x1 + beta2*x2, fs^2 "
                          "(split evenly over the two paths); conflicts with --path*")
    sub.add_argument("--path1", action="append", metavar="MATERIAL:LENGTH",
                     help="segment of path 1, e.g. silica:1cm or air:10km (repeatable)")
    sub.add_argument("--path2", action="append", metavar="MATERIAL:LENGTH",
                     help="segment of path 2 (repeatable)")


# -- width --------------------------------------------------------------------

def _cmd_width(parser: _Parser, args) -> int:
    _apply_preset(parser, args)
    spectrum = _spectrum_from_args(parser, args)
    paths, gdd_sum = _paths_from_args(parser, args)
    state = _state_from_args(parser, args)

    dist = quantum_distribution(state, spectrum, paths)
    _, gdd1, _, gdd2 = paths.coefficients()
    sigma_t = classical_width(spectrum.sigma_phi, gdd1, gdd2)
    sigma_c = classical_shot_noise(sigma_t, state.n_photons)

    payload = {
        "state": state.kind.value,
        "variable": dist.variable.value,
        "n_photons": state.n_photons,
        "gdd_sum_fs2": gdd_sum,
        "mean_fs": dist.mean,
        "sigma_quantum_fs": dist.sigma,
        "sigma_classical_pulse_fs": sigma_t,
        "sigma_classical_shot_noise_fs": sigma_c,
        "ratio_quantum_over_classical": dist.sigma / sigma_c,
        "asymptotic_width_fs": asymptotic_width(spectrum.sigma_phi, gdd_sum),
        "amplitude_scale": dist.amplitude_scale,
    }
    out = _out_dir(args)
    report_path = out / "width_report.json"
    report_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    manifest = RunManifest(
        command="width",
        parameters={**_media_params(args), "n": args.n, "state": args.state,
                    "v": args.v, "u": args.u},
        outputs=[str(report_path)],
    )
    manifest.write(out)
    _emit(args, payload)
    return 0


# -- scan ---------------------------------------------------------------------

def _cmd_scan(parser: _Parser, args) -> int:
    _apply_preset(parser, args)
    if args.n_points is None:
        args.n_points = 61
    spectrum = _spectrum_from_args(parser, args)
    paths, gdd_sum = _paths_from_args(parser, args)
    if args.n_min is None or args.n_max is None:
        parser.error("--n-min and --n-max are required")
    if args.n_min <= 0 or args.n_max < args.n_min:
        parser.error("need 0 < n-min <= n-max")
    if args.n_points < 1:
        parser.error("--n-points must be >= 1")

    if args.n_points == 1:
        n_values = np.array([float(args.n_min)])
    else:
        n_values = np.logspace(math.log10(args.n_min), math.log10(args.n_max), args.n_points)

    _, gdd1, _, gdd2 = paths.coefficients()
    sigma_t = classical_width(spectrum.sigma_phi, gdd1, gdd2)
    rows = []
    for n in n_values:
        p_quantum = spectrum.sigma_phi * quantum_width(spectrum.sigma_phi, float(n), gdd_sum)
        p_classical = spectrum.sigma_phi * classical_shot_noise(sigma_t, float(n))
        rows.append((float(n), float(p_quantum), float(p_classical)))

    out = _out_dir(args)
    csv_path = out / args.out
    _write_csv(csv_path, ["N", "p_quantum", "p_classical"], rows)
    manifest = RunManifest(
        command="scan",
        parameters={**_media_params(args), "n_min": args.n_min, "n_max": args.n_max,
                    "n_points": args.n_points, "out": args.out},
        outputs=[str(csv_path)],
    )
    manifest.write(out)
    print(f"wrote {csv_path} ({len(rows)} rows)")
    return 0


# -- surface ------------------------------------------------------------------

def _cmd_surface(parser: _Parser, args) -> int:
    _apply_preset(parser, args)
    if args.n_points is None:
        args.n_points = 33
    if args.x_points is None:
        args.x_points = 41
    if args.clip is None:
        args.clip = "none"
    if args.sigma_phi is None:
        parser.error("--sigma-phi (rad/s) is required")
    if args.beta is None:
        parser.error("--beta (fs^2/cm) is required")
    sigma_phi = sigma_phi_from_rad_per_s(args.sigma_phi)
    if args.n_min is None or args.n_max is None or args.x_min is None or args.x_max is None:
        parser.error("--n-min/--n-max and --x-min/--x-max are required")
    if args.n_min <= 0 or args.n_max < args.n_min:
        parser.error("need 0 < n-min <= n-max")
    if args.x_min < 0 or args.x_max < args.x_min:
        parser.error("need 0 <= x-min <= x-max")

    n_values = (np.array([float(args.n_min)]) if args.n_points == 1 else
                np.logspace(math.log10(args.n_min), math.log10(args.n_max), args.n_points))
    x_values = np.linspace(args.x_min, args.x_max, args.x_points)

    rows = []
    for n in n_values:
        for x in x_values:
            # x cm of the medium in each path: total GDD 2*beta*x, classical
            # per-path products beta*x each.
            gdd_path = args.beta * float(x)
            sigma_q = quantum_width(sigma_phi, float(n), 2.0 * gdd_path)
            sigma_c = classical_shot_noise(
                classical_width(sigma_phi, gdd_path, gdd_path), float(n))
            ratio = sigma_q / sigma_c
            clipped = max(ratio, 1.0) if args.clip == "unity" else ratio
            rows.append((float(n), float(x), float(clipped), float(ratio)))

    out = _out_dir(args)
    csv_path = out / args.out
    _write_csv(csv_path, ["N", "x_cm", "R", "R_raw"], rows)
    manifest = RunManifest(
        command="surface",
        parameters={"sigma_phi_rad_per_s": args.sigma_phi, "beta_fs2_per_cm": args.beta,
                    "n_min": args.n_min, "n_max": args.n_max, "n_points": args.n_points,
                    "x_min_cm": args.x_min, "x_max_cm": args.x_max, "x_points": args.x_points,
                    "clip": args.clip, "out": args.out},
        outputs=[str(csv_path)],
    )
    manifest.write(out)
    print(f"wrote {csv_path} ({len(rows)} rows)")
    return 0


# -- transition ---------------------------------------------------------------

def _cmd_transition(parser: _Parser, args) -> int:
    _apply_preset(parser, args)
    spectrum = _spectrum_from_args(parser, args)
    _, gdd_sum = _paths_from_args(parser, args)
    n_t = transition_photon_number(spectrum.sigma_phi, gdd_sum)

    silica_beta = material_catalog()["fused_silica"].beta
    payload = {
        "gdd_sum_fs2": gdd_sum,
        "transition_photon_number": n_t,
        "equivalent_silica_total_cm": abs(gdd_sum) / silica_beta,
        "equivalent_air_total_m": abs(gdd_sum) / reference_air_beta() / 100.0,
    }
    out = _out_dir(args)
    report_path = out / "transition_report.json"
    report_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    RunManifest(command="transition", parameters=_media_params(args),
                outputs=[str(report_path)]).write(out)
    _emit(args, payload)
    return 0


# -- media --------------------------------------------------------------------

def _cmd_media(parser: _Parser, args) -> int:
    material = _MATERIAL_ALIASES.get(args.material, args.material)
    silica_beta = material_catalog()["fused_silica"].beta
    if material == "air":
        conditions = AirConditions(
            temperature_c=args.temperature,
            pressure_pa=args.pressure,
            relative_humidity=args.rh,
            wavelength_nm=args.wavelength,
        )
        refractivity = (edlen_refractivity(conditions) if args.formula == "edlen"
                        else owens_refractivity(conditions))
        beta = air_dispersion_coefficient(conditions, formula=args.formula)
        payload = {
            "material": "air",
            "formula": args.formula,
            "wavelength_nm": args.wavelength,
            "temperature_c": args.temperature,
            "pressure_pa": args.pressure,
            "relative_humidity": args.rh,
            "n_minus_1": refractivity,
            "beta_fs2_per_cm": beta,
            "length_equivalent_to_1cm_silica_m": silica_beta / beta / 100.0,
        }
    else:
        catalog = material_catalog()
        if material not in catalog:
            raise DomainError(f"unknown material {args.material!r}; catalog has {sorted(catalog)} plus 'air'")
        entry = catalog[material]
        payload = {
            "material": entry.label,
            "alpha_fs_per_cm": entry.alpha,
            "beta_fs2_per_cm": entry.beta,
            "note": entry.note,
        }
        if entry.beta != 0:
            payload["length_equivalent_to_1cm_silica_cm"] = silica_beta / entry.beta
    out = _out_dir(args)
    report_path = out / "media_report.json"
    report_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    RunManifest(
        command="media",
        parameters={"material": args.material, "formula": args.formula,
                    "wavelength_nm": args.wavelength, "temperature_c": args.temperature,
                    "pressure_pa": args.pressure, "relative_humidity": args.rh},
        outputs=[str(report_path)],
    ).write(out)
    _emit(args, payload)
    return 0


# -- verify -------------------------------------------------------------------

def _quadrature_cases(max_points: int | None):
    spectrum = GaussianSpectrum.from_si(3.7e11)
    quad = QuadratureSpec(max_points=max_points) if max_points is not None else QuadratureSpec()
    for kind in StateKind:
        for n in (1, 3, 10, 100):
            for gdd_total in (0.0, 500.0, 1.0e5):
                yield kind, n, gdd_total, spectrum, quad


def _run_quadrature_suite(max_points: int | None) -> list[dict]:
    tolerance = 1e-6
    cases = []
    for kind, n, gdd_total, spectrum, quad in _quadrature_cases(max_points):
        if kind is StateKind.ENTANGLED_COHERENT:
            state = StateSpec(kind=kind, n_photons=n, v_mag=1.2, u_mag=0.8)
        else:
            state = StateSpec(kind=kind, n_photons=n)
        half = gdd_total / 2.0
        paths = PathPair(
            [MediumSegment("m1", alpha=0.0, beta=half, length=1.0)],
            [MediumSegment("m2", alpha=0.0, beta=half, length=1.0)],
        )
        name = f"{kind.value}/N={n}/gdd={gdd_total:g}"
        sigma = quantum_width(spectrum.sigma_phi, n, gdd_total)
        grid = np.linspace(-5.0 * sigma, 5.0 * sigma, 41)
        case = {"name": name, "tolerance": tolerance}
        try:
            report = verify_closed_form(state, spectrum, paths, grid, quad)
            case["max_rel_err"] = report.max_rel_err
            case["points_used"] = report.points_used
            case["passed"] = report.max_rel_err < tolerance
        except ConvergenceError as exc:
            case["error"] = str(exc)
            case["achieved"] = exc.achieved
            case["passed"] = False
        cases.append(case)
    return cases


def _run_montecarlo_suite(seed: int) -> list[dict]:
    cases = []

    # Scaling of the classical averaging law with photon number.
    widths = []
    photon_numbers = (1, 10, 100, 1000)
    for n in photon_numbers:
        estimate = sample_classical(1.0, SamplerConfig(seed=seed, n_samples=100_000, n_photons=n))
        widths.append(estimate.sigma_hat)
    slope = float(np.polyfit(np.log10(photon_numbers), np.log10(widths), 1)[0])
    cases.append({
        "name": "classical-averaging-slope",
        "slope": slope,
        "tolerance": 0.02,
        "passed": abs(slope + 0.5) < 0.02,
    })

    # Quantum sampler consistency with the closed form.
    dist = TimingDistribution(
        variable=TimingVariable.MEAN_TIME_DIFFERENCE, mean=25.0, sigma=3.5)
    estimate = sample_quantum(dist, SamplerConfig(seed=seed, n_samples=100_000))
    sigma_ok = abs(estimate.sigma_hat - dist.sigma) < 3.0 * estimate.standard_error
    mean_ok = abs(estimate.mean_hat - dist.mean) < 3.0 * estimate.mean_standard_error
    cases.append({
        "name": "quantum-sampler-consistency",
        "estimate": estimate.to_dict(),
        "sigma_expected": dist.sigma,
        "passed": bool(sigma_ok and mean_ok),
    })

    # Determinism: identical seeds give bit-identical estimates.
    repeat = sample_quantum(dist, SamplerConfig(seed=seed, n_samples=100_000))
    cases.append({
        "name": "determinism-per-seed",
        "passed": repeat == estimate,
    })
    return cases


def _cmd_verify(parser: _Parser, args) -> int:
    cases: list[dict] = []
    if args.suite in ("quadrature", "all"):
        cases.extend(_run_quadrature_suite(args.max_points))
    if args.suite in ("montecarlo", "all"):
        cases.extend(_run_montecarlo_suite(args.seed))
    passed = all(case["passed"] for case in cases)

    report = {
        "schema": REPORT_SCHEMA,
        "suite": args.suite,
        "seed": args.seed,
        "cases": cases,
        "passed": passed,
    }
    out = _out_dir(args)
    report_path = out / args.out
    report_path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    RunManifest(
        command="verify",
        parameters={"suite": args.suite, "seed": args.seed,
                    "max_points": args.max_points, "out": args.out},
        outputs=[str(report_path)],
    ).write(out)

    for case in cases:
        status = "pass" if case["passed"] else "FAIL"
        detail = ""
        if "max_rel_err" in case:
            detail = f"  max_rel_err={case['max_rel_err']:.3e}"
        elif "error" in case:
            detail = f"  {case['error']}"
        print(f"[{status}] {case['name']}{detail}")
    print(f"verification {'passed' if passed else 'FAILED'}; report: {report_path}")
    return 0 if passed else 3


# -- presets ------------------------------------------------------------------

_PRESETS = {
    "fig2": {
        "command": "scan",
        "values": {"sigma_phi": 3.7e11, "path1": ["silica:400cm"], "path2": [],
                   "n_min": 1.0, "n_max": 1.0e6, "n_points": 121},
    },
    "fig3": {
        "command": "surface",
        "values": {"sigma_phi": 3.7e11, "beta": 250.0,
                   "n_min": 1.0, "n_max": 1.0e4, "n_points": 33,
                   "x_min": 0.0, "x_max": 200.0, "x_points": 41, "clip": "unity"},
    },
    "ntrans-1cm": {
        "command": "transition",
        "values": {"sigma_phi": 3.7e11, "path1": ["silica:1cm"], "path2": ["silica:1cm"]},
    },
}


def _apply_preset(parser: _Parser, args) -> None:
    preset_name = getattr(args, "preset", None)
    if not preset_name:
        return
    preset = _PRESETS.get(preset_name)
    if preset is None or preset["command"] != args.command:
        valid = sorted(k for k, v in _PRESETS.items() if v["command"] == args.command)
        parser.error(f"unknown preset {preset_name!r} for {args.command}; valid: {valid}")
    for key, value in preset["values"].items():
        if getattr(args, key, None) in (None, [],):
            setattr(args, key, value)


# -- entry point --------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="qtiming",
        description="Arrival-time statistics of frequency-entangled photon "
                    "states in dispersive media",
    )
    parser.add_argument("--version", action="version", version=f"qtiming {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    width = sub.add_parser("width", help="widths and quantum/classical ratio for one configuration")
    _add_media_flags(width)
    width.add_argument("--n", type=float, required=True, help="photons per arm (>= 1)")
    width.add_argument("--state", choices=[k.value for k in StateKind], default="anti",
                       help="entangled state family (default anti)")
    width.add_argument("--v", type=float, default=None, help="coherent |v| (coherent state only)")
    width.add_argument("--u", type=float, default=None, help="coherent |u| (coherent state only)")
    width.add_argument("--preset", default=None, help=argparse.SUPPRESS)
    _add_common_output_flags(width)
    width.set_defaults(func=_cmd_width)

    scan = sub.add_parser("scan", help="sweep photon number; CSV of dimensionless widths")
    _add_media_flags(scan)
    scan.add_argument("--n-min", type=float, default=None)
    scan.add_argument("--n-max", type=float, default=None)
    scan.add_argument("--n-points", type=int, default=None, help="log-spaced points (default 61)")
    scan.add_argument("--preset", choices=["fig2"], default=None,
                      help="named parameter bundle pinned by the verification suite")
    scan.add_argument("--out", default="scan.csv", help="CSV filename (default scan.csv)")
    _add_common_output_flags(scan)
    scan.set_defaults(func=_cmd_scan)

    surface = sub.add_parser(
        "surface",
        help="grid of quantum/classical width ratio over photon number and "
             "propagation distance (x cm of the medium in each path)",
    )
    surface.add_argument("--sigma-phi", type=float, default=None, help="spectral width, rad/s")
    surface.add_argument("--beta", type=float, default=None,
                         help="medium dispersion coefficient, fs^2/cm")
    surface.add_argument("--n-min", type=float, default=None)
    surface.add_argument("--n-max", type=float, default=None)
    surface.add_argument("--n-points", type=int, default=None, help="default 33")
    surface.add_argument("--x-min", type=float, default=None, help="cm")
    surface.add_argument("--x-max", type=float, default=None, help="cm")
    surface.add_argument("--x-points", type=int, default=None, help="default 41")
    surface.add_argument("--clip", choices=["none", "unity"], default=None,
                         help="clip ratios below 1 to 1.0 in the R column "
                              "(raw kept in R_raw; default none)")
    surface.add_argument("--preset", choices=["fig3"], default=None,
                         help="named parameter bundle pinned by the verification suite")
    surface.add_argument("--out", default="surface.csv", help="CSV filename (default surface.csv)")
    _add_common_output_flags(surface)
    surface.set_defaults(func=_cmd_surface)

    transition = sub.add_parser("transition", help="photon number where dispersion "
                                                   "broadening overtakes the bandwidth term")
    _add_media_flags(transition)
    transition.add_argument("--preset", choices=["ntrans-1cm"], default=None,
                            help="named parameter bundle pinned by the verification suite")
    _add_common_output_flags(transition)
    transition.set_defaults(func=_cmd_transition)

    verify = sub.add_parser("verify", help="run the numerical verification suites")
    verify.add_argument("--suite", choices=["quadrature", "montecarlo", "all"], default="all")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--max-points", type=int, default=None,
                        help="override the quadrature evaluation budget")
    verify.add_argument("--out", default="verification_report.json")
    _add_common_output_flags(verify)
    verify.set_defaults(func=_cmd_verify)

    media = sub.add_parser("media", help="dispersion coefficient of a medium")
    media.add_argument("--material", required=True,
                       help="'air' or a catalog material (fused_silica, vacuum)")
    media.add_argument("--formula", choices=["edlen", "owens"], default="edlen",
                       help="air-index formula (air only; default edlen)")
    media.add_argument("--wavelength", type=float, default=800.0, help="nm (default 800)")
    media.add_argument("--temperature", type=float, default=15.0, help="deg C (default 15)")
    media.add_argument("--pressure", type=float, default=101325.0, help="Pa (default 101325)")
    media.add_argument("--rh", type=float, default=0.0, help="relative humidity fraction (default 0)")
    _add_common_output_flags(media)
    media.set_defaults(func=_cmd_media)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ConvergenceError as exc:
        print(f"qtiming: convergence failure: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ValueError) as exc:
        print(f"qtiming: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
