"""Command-line front end.

Usage::

    macrowave <command> CONFIG [--set block.key=value ...] [--output-dir DIR]

Commands: dispersion, fringes, sweep, beats, evolve, matrix. Every command
prints a JSON result envelope on stdout and, when an output directory is
configured (``--output-dir``, then ``$MACROWAVE_OUTPUT_DIR``, then
``output.directory``), writes ``<command>.json`` and ``<command>.csv``.

Exit status: 0 success, 2 configuration error, 3 physics-domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    SIGNAL_MODEL,
    PathLength,
    SweepConfig,
    beat_envelope,
    detect_peaks,
    inverse_length_check,
    local_fringe_spacing,
    separate_scales,
    transmission_sweep,
    Spectrum,
)
from .config import RunConfig, load_config, to_complex
from .dispersion import (
    beam_velocity,
    de_broglie_wavelength,
    delta_kappa,
    kappa_exact,
    macroscopic_wavelength,
    rydberg_delta_p_exact,
    rydberg_delta_p_over_hbar,
)
from .evolution import (
    EvolutionParams,
    dispersion_check,
    evolve,
    evolve_tracking_phase,
    gaussian_packet,
    norm,
    plane_wave,
)
from .exceptions import CapabilityError, ConfigurationError, DomainError
from .interference import (
    HarmonicMixture,
    RovibChannel,
    ScattererGrid,
    mixture_intensity,
    rovib_mixture_intensity,
)
from .io import to_jsonable, write_csv, write_json
from .matrixelem import (
    Gaussian,
    Linear,
    OscillatorBasis,
    Quadratic,
    beta_closed_form,
    matrix_element,
)
from .physcore import (
    CODATA,
    Landau,
    Rydberg,
    Vibrational,
    classical_action,
    effective_frequency,
    internal_energy,
    joule_to_ev,
    landau_quantum_number,
    ev_to_joule,
)
from .references import reference_notes

OUTPUT_ENV = "MACROWAVE_OUTPUT_DIR"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3


class Result:
    """Accumulates scalars, a table and notes for one command run."""

    def __init__(self, command: str, config: RunConfig):
        self.command = command
        self.config = config
        self.scalars = {}
        self.notes = []
        self.columns = []
        self.rows = []
        self.extra = {}

    def put(self, name, value, unit):
        self.scalars[name] = {"value": value, "unit": unit}

    def table(self, columns, rows):
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]

    def envelope(self, csv_path=None):
        return to_jsonable({
            "command": self.command,
            "version": __version__,
            "config": self.config.to_mapping(),
            "scalars": self.scalars,
            "notes": self.notes + reference_notes(self.config, self.scalars),
            "payload": {"columns": self.columns, "rows": len(self.rows),
                        "path": None if csv_path is None else str(csv_path)},
            **self.extra,
        })


# -- commands -----------------------------------------------------------------

def cmd_dispersion(config: RunConfig) -> Result:
    res = Result("dispersion", config)
    system = config.build_system()
    beam = config.build_beam(system)
    n = beam.central_quantum_number
    res.put("quantum_number", n, "1")
    res.put("total_energy", beam.total_energy, "J")
    res.put("internal_energy", internal_energy(system, n), "J")
    if n > 0:
        res.put("classical_action", classical_action(system, n).value, "J s")
    v = beam_velocity(beam, system)
    omega = effective_frequency(system, n)
    res.put("velocity", v, "m/s")
    res.put("effective_frequency", omega, "rad/s")
    res.put("wave_number", omega / v, "rad/m")
    res.put("wavelength", macroscopic_wavelength(v, omega, 1), "m")
    res.put("kappa", kappa_exact(beam, system), "rad/m")
    res.put("de_broglie_wavelength", de_broglie_wavelength(beam, system), "m")

    if isinstance(system, Landau):
        res.put("gyrofrequency", system.gyro_frequency, "rad/s")
        if config.beam["energy_ev"] is not None:
            energy = ev_to_joule(config.beam["energy_ev"])
            res.put("landau_quantum_number_full_perp",
                    landau_quantum_number(energy, system.gyro_frequency), "1")
    if isinstance(system, Vibrational):
        wavenumber_m = config.system["wavenumber_cm"] * 100.0
        res.put("wavelength_omega_c_nu", 2 * math.pi * v / (CODATA.light_speed * wavenumber_m), "m")
    if isinstance(system, Rydberg):
        approx = rydberg_delta_p_over_hbar(beam)
        exact = rydberg_delta_p_exact(beam)
        res.put("rydberg_delta_p_over_hbar", approx, "rad/m")
        res.put("rydberg_delta_p_exact", exact, "rad/m")
        res.put("rydberg_relative_error", abs(exact - approx) / approx, "1")

    levels = config.dispersion["quantum_numbers"] or [n]
    minimum = 1 if isinstance(system, Rydberg) else 0
    rows, skipped = [], []
    for level in levels:
        level = int(level) if float(level).is_integer() else level
        for l in config.dispersion["harmonics"]:
            if level - l < minimum:
                skipped.append({"quantum_number": level, "harmonic": l})
                continue
            pair = delta_kappa(beam, system, level, l)
            v_level = beam_velocity(beam, system, level)
            rows.append([level, l, pair.delta_kappa_exact, pair.delta_kappa_approx,
                         pair.relative_error,
                         macroscopic_wavelength(v_level, effective_frequency(system, level), l)])
    res.table(["quantum_number", "harmonic", "delta_kappa_exact_per_m",
               "delta_kappa_approx_per_m", "relative_error", "wavelength_m"], rows)
    if skipped:
        res.notes.append({"remark": "levels too low for the requested harmonics were skipped",
                          "skipped": skipped})
    return res


def _two_grids(config):
    grids = config.geometry["grids"]
    if len(grids) != 2:
        raise ConfigurationError(f"geometry.grids: exactly two grids are required, got {len(grids)}")
    return [ScattererGrid(g["position_m"], to_complex(g["coupling"]), g["label"] or f"G{i + 1}")
            for i, g in enumerate(grids)]


def _base_wavenumber(config):
    if config.fringes["wavenumber_per_m"] is not None:
        return config.fringes["wavenumber_per_m"]
    system = config.build_system()
    beam = config.build_beam(system)
    return effective_frequency(system, beam.central_quantum_number) / beam_velocity(beam, system)


def cmd_fringes(config: RunConfig) -> Result:
    res = Result("fringes", config)
    opts = config.fringes
    g1, g2 = _two_grids(config)
    k = _base_wavenumber(config)
    period = 2 * math.pi / k
    lo = opts["separation_min_m"] if opts["separation_min_m"] is not None else -0.5 * period
    hi = opts["separation_max_m"] if opts["separation_max_m"] is not None else 2.5 * period
    if not lo < hi:
        raise ConfigurationError("fringes: separation_min_m must be below separation_max_m")
    sep = np.linspace(lo, hi, opts["samples"])
    res.put("wave_number", k, "rad/m")
    res.put("fundamental_period", period, "m")

    if opts["channels"]:
        k_rot = opts["rotational_wavenumber_per_m"]
        if k_rot is None:
            raise ConfigurationError("fringes.rotational_wavenumber_per_m: required with channels")
        channels = [RovibChannel(c["l_vib"], c["l_rot"], to_complex(c["weight"]),
                                 to_complex(c["gamma"])) for c in opts["channels"]]
        intensity = rovib_mixture_intensity(g1, g2, k, k_rot, channels, separation=sep)
        fine, coarse = separate_scales(sep, intensity, opts["min_prominence"])
        res.put("rotational_wave_number", k_rot, "rad/m")
        res.put("fine_period", fine, "m")
        res.put("coarse_period", coarse, "m")
        res.put("period_ratio", coarse / fine, "1")
    else:
        harmonics = opts["harmonics"]
        mixture = HarmonicMixture(tuple((h["l"], to_complex(h["weight"])) for h in harmonics))
        betas = {h["l"]: to_complex(h["beta"]) for h in harmonics}
        intensity = mixture_intensity(g1, g2, k, mixture, betas, separation=sep)
        spectrum = Spectrum(sep, intensity)
        all_peaks = detect_peaks(spectrum, opts["min_prominence"])
        res.put("maxima_count", int(all_peaks.peak_positions.size), "1")
        res.put("mean_spacing", all_peaks.mean_spacing, "m")
        if len(harmonics) > 1:
            dominant = detect_peaks(spectrum, 0.5 * float(np.ptp(intensity)))
            res.put("dominant_spacing", dominant.mean_spacing, "m")
            res.put("period_ratio", dominant.mean_spacing / all_peaks.mean_spacing, "1")
    res.table(["X1_minus_X2_m", "intensity"], zip(sep, intensity))
    return res


def _sweep_config(config: RunConfig, *, need_lengths=1) -> SweepConfig:
    system = config.build_system()
    beam = config.build_beam(system)
    sweep = config.sweep
    if sweep["energy_min_ev"] is None or sweep["energy_max_ev"] is None:
        raise ConfigurationError("sweep: energy_min_ev and energy_max_ev are required")
    lengths = config.geometry["lengths"]
    if len(lengths) < need_lengths:
        raise ConfigurationError(f"geometry.lengths: at least {need_lengths} length(s) required")
    e_int = internal_energy(system, beam.central_quantum_number)
    mixture = HarmonicMixture(tuple((h["l"], to_complex(h["weight"])) for h in sweep["harmonics"]))
    return SweepConfig(
        energy_min=e_int + ev_to_joule(sweep["energy_min_ev"]),
        energy_max=e_int + ev_to_joule(sweep["energy_max_ev"]),
        sample_count=sweep["samples"],
        lengths=[PathLength(p["label"] or f"L{i + 1}", p["length_m"], p["weight"])
                 for i, p in enumerate(lengths)],
        system=system, beam=beam, mixture=mixture)


def _sweep_table(res, spectrum, e_int):
    kinetic_ev = joule_to_ev(spectrum.abscissa - e_int)
    res.table(["energy_eV", "signal"], zip(kinetic_ev, spectrum.signal))


def cmd_sweep(config: RunConfig) -> Result:
    res = Result("sweep", config)
    sc = _sweep_config(config)
    e_int = internal_energy(sc.system, sc.beam.central_quantum_number)
    spectrum = transmission_sweep(sc)
    report = detect_peaks(spectrum, config.sweep["min_prominence"])
    res.put("internal_energy_offset", joule_to_ev(e_int), "eV")
    res.put("peak_count", int(report.peak_positions.size), "1")
    res.put("mean_spacing", joule_to_ev(report.mean_spacing), "eV")
    centre = 0.5 * (sc.energy_min + sc.energy_max)
    res.put("analytic_spacing_at_centre",
            joule_to_ev(local_fringe_spacing(sc, centre, sc.lengths[0].length)), "eV")
    res.extra["signal_model"] = SIGNAL_MODEL
    res.extra["peaks_eV"] = joule_to_ev(report.peak_positions - e_int)
    scan = config.sweep["scan_lengths_m"]
    if scan:
        result = inverse_length_check(sc, scan, config.sweep["min_prominence"])
        res.put("length_exponent", result.exponent, "1")
        res.extra["length_scan"] = [{"length_m": L, "mean_spacing_eV": joule_to_ev(s)}
                                    for L, s in result.pairs()]
    _sweep_table(res, spectrum, e_int)
    return res


def cmd_beats(config: RunConfig) -> Result:
    res = Result("beats", config)
    sc = _sweep_config(config, need_lengths=2)
    if len(sc.lengths) != 2:
        raise ConfigurationError("geometry.lengths: beats need exactly two lengths")
    e_int = internal_energy(sc.system, sc.beam.central_quantum_number)
    spectrum = transmission_sweep(sc)
    report = beat_envelope(spectrum, config.sweep["min_prominence"])
    lp, lg = sorted((p.length for p in sc.lengths), reverse=True)
    res.put("carrier_period", joule_to_ev(report.carrier_period)
            if report.carrier_period is not None else None, "eV")
    res.put("beat_present", report.envelope_period is not None, "bool")
    if report.envelope_period is not None:
        res.put("envelope_period", joule_to_ev(report.envelope_period), "eV")
        res.put("envelope_to_carrier_ratio", report.envelope_ratio, "1")
        res.put("node_count", int(report.node_positions.size), "1")
    if lp != lg:
        res.put("expected_ratio", 2 * lp / (lp - lg), "1")
    res.extra["signal_model"] = SIGNAL_MODEL
    _sweep_table(res, spectrum, e_int)
    return res


def cmd_evolve(config: RunConfig) -> Result:
    if config.evolution is None:
        raise ConfigurationError("evolution: block required for the evolve command")
    res = Result("evolve", config)
    opts = config.evolution
    system = config.build_system()
    hbar = CODATA.planck_reduced
    if opts["gyroaction_js"] is not None and opts["gyroaction_hbar"] is not None:
        raise ConfigurationError("evolution: give gyroaction_js or gyroaction_hbar, not both")
    if opts["gyroaction_js"] is not None:
        mu = opts["gyroaction_js"]
    elif opts["gyroaction_hbar"] is not None:
        mu = opts["gyroaction_hbar"] * hbar
    elif config.beam["quantum_number"]:
        mu = config.beam["quantum_number"] * hbar
    else:
        raise ConfigurationError("evolution: gyroaction_js, gyroaction_hbar or "
                                 "beam.quantum_number is required")
    if opts["omega_rad_s"] is not None:
        omega = opts["omega_rad_s"]
    else:
        omega = effective_frequency(system, config.beam["quantum_number"] or 1)
    if opts["points"] & (opts["points"] - 1):
        raise ConfigurationError("evolution.points: must be a power of two")
    l = opts["mode"]
    init = opts["initial"]
    length = opts["domain_length_m"]
    if init["kind"] == "plane_wave":
        field = plane_wave(opts["points"], length, init["harmonic_index"], mode=l,
                           gyroaction=mu, omega=omega)
        k0 = 2 * math.pi * init["harmonic_index"] / length
    else:
        width = init["width_m"] if init["width_m"] is not None else length / 40.0
        k0 = init["wavenumber_per_m"]
        field = gaussian_packet(opts["points"], length, init["center_m"], width, k0,
                                mode=l, gyroaction=mu, omega=omega)
    params = EvolutionParams(opts["time_step_s"], opts["steps"])
    analytic = float(dispersion_check(mu, omega, l, k0))
    res.put("gyroaction", mu, "J s")
    res.put("omega", omega, "rad/s")
    res.put("analytic_frequency", analytic, "rad/s")
    res.put("group_velocity", 2 * (mu / l) * k0, "m/s")
    res.put("stability_ratio", params.stability_ratio(field), "1")

    if init["kind"] == "plane_wave":
        if abs(analytic) * params.time_step >= math.pi:
            raise DomainError("evolution.time_step_s: phase advance per step exceeds pi; "
                              "the plane-wave frequency cannot be resolved")
        final, measured = evolve_tracking_phase(field, params)
        res.put("measured_frequency", measured, "rad/s")
        res.put("dispersion_residual", abs(measured - analytic) / abs(analytic), "1")
    else:
        final = evolve(field, params)
    n0, n1 = norm(field), norm(final)
    res.put("norm_initial", n0, "sqrt(m)")
    res.put("norm_final", n1, "sqrt(m)")
    res.put("norm_drift", abs(n1 - n0) / n0, "1")
    psi = final.samples
    res.table(["x_m", "re", "im", "abs2"], zip(final.x, psi.real, psi.imag, np.abs(psi) ** 2))
    return res


def cmd_matrix(config: RunConfig) -> Result:
    if config.matrix is None:
        raise ConfigurationError("matrix: block required for the matrix command")
    res = Result("matrix", config)
    opts = config.matrix
    mass, omega = opts["mass_kg"], opts["omega_rad_s"]
    if mass is None or omega is None:
        system = config.build_system()
        if isinstance(system, Landau):
            mass = mass or config.beam_mass()
            omega = omega or system.gyro_frequency
        elif isinstance(system, Vibrational):
            mass = mass or system.reduced_mass
            omega = omega or system.omega
        else:
            raise ConfigurationError("matrix: mass_kg and omega_rad_s are required for "
                                     f"{config.system_kind} systems")
    basis = OscillatorBasis(mass, omega, opts["hbar_js"] or CODATA.planck_reduced)
    kind = opts["perturbation"]
    if kind == "linear":
        pert = Linear(opts["strength"])
    elif kind == "quadratic":
        pert = Quadratic(opts["strength"])
    else:
        if opts["width_m"] is None:
            raise ConfigurationError("matrix.width_m: required for gaussian perturbations")
        pert = Gaussian(opts["strength"], opts["width_m"])
    nu = opts["quantum_number"]
    if int(nu) != nu:
        raise ConfigurationError("matrix.quantum_number: must be an integer")
    nu = int(nu)

    entries = []
    for l in opts["harmonics"]:
        if l < 0 or nu - l < 0:
            raise DomainError(f"matrix: harmonic {l} is not allowed for quantum number {nu}")
        closed = None if isinstance(pert, Gaussian) else beta_closed_form(basis, pert, nu, l)
        quad = matrix_element(basis, pert, nu - l, nu)
        entries.append((l, closed, quad))
    scale = max([abs(c) for _, c, _ in entries if c is not None] + [0.0])
    rows, worst = [], 0.0
    for l, closed, quad in entries:
        if closed is None:
            rows.append([nu, l, math.nan, quad.value, quad.nodes, math.nan, math.nan])
            continue
        diff = abs(closed - quad.value)
        rel = diff / max(abs(closed), scale) if scale > 0 else diff
        worst = max(worst, rel)
        rows.append([nu, l, closed, quad.value, quad.nodes, diff, rel])
    res.put("length_scale", basis.length_scale, "m")
    if not isinstance(pert, Gaussian):
        res.put("max_relative_difference", worst, "1")
    res.table(["quantum_number", "harmonic", "closed_form", "quadrature", "nodes",
               "abs_difference", "relative_difference"], rows)
    return res


COMMANDS = {
    "dispersion": (cmd_dispersion, "wave numbers, velocities, wavelengths and expansion errors"),
    "fringes": (cmd_fringes, "two-grid interference pattern versus grid separation"),
    "sweep": (cmd_sweep, "energy-swept transmission spectrum and fringe spacing"),
    "beats": (cmd_beats, "two-length sweep and beat-envelope analysis"),
    "evolve": (cmd_evolve, "split-step evolution of a mode amplitude"),
    "matrix": (cmd_matrix, "oscillator transition matrix elements"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macrowave", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("config", type=Path, help="YAML or JSON configuration file")
        cmd.add_argument("--set", dest="overrides", action="append", default=[],
                         metavar="KEY=VALUE", help="override a config value, e.g. beam.energy_ev=600")
        cmd.add_argument("--output-dir", type=Path, default=None,
                         help=f"directory for result files (default: ${OUTPUT_ENV} or output.directory)")
        cmd.add_argument("--quiet", action="store_true", help="do not print the envelope")
    return parser


def _load(args) -> RunConfig:
    return load_config(args.config, args.overrides)


def _output_dir(args, config):
    if args.output_dir is not None:
        return args.output_dir
    if os.environ.get(OUTPUT_ENV):
        return Path(os.environ[OUTPUT_ENV])
    if config.output["directory"]:
        return Path(config.output["directory"])
    return None


def run(args) -> int:
    try:
        config = _load(args)
        func, _ = COMMANDS[args.command]
        result = func(config)
    except ConfigurationError as exc:
        print(f"configuration error ({args.config}): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, CapabilityError) as exc:
        print(f"physics error ({args.config}): {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    out_dir = _output_dir(args, config)
    csv_path = None
    fmt = config.output["format"]
    if out_dir is not None:
        if fmt in ("csv", "both"):
            csv_path = out_dir / f"{result.command}.csv"
            write_csv(csv_path, result.columns, result.rows)
        envelope = result.envelope(csv_path)
        if fmt in ("json", "both"):
            write_json(out_dir / f"{result.command}.json", envelope)
    else:
        envelope = result.envelope()
    if not args.quiet:
        print(json.dumps(envelope, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
