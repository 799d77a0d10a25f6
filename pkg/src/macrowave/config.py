"""Run configuration: parsing, validation, unit conversion and echo.

A configuration is a YAML (or JSON) mapping with one block per concern::

    system:      exactly one of landau / vibrational / rotational / rydberg
    beam:        mass, energy or velocity, quantum number, pitch angle
    geometry:    scatterer grids and flight lengths
    sweep:       energy window and analysis options
    dispersion, fringes, evolution, matrix:  per-command options
    output:      directory and format

Unknown keys are rejected. Parsing fills in defaults so that the echo
written into every result reproduces the same :class:`RunConfig`.
"""

from __future__ import annotations

import copy
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .exceptions import ConfigurationError
from .physcore import (
    CODATA,
    BeamSpec,
    Landau,
    Rotational,
    Rydberg,
    Vibrational,
    amu_to_kg,
    angstrom_to_m,
    cm_per_s_to_m_per_s,
    ev_to_joule,
)

__all__ = ["RunConfig", "load_config", "apply_overrides", "parse_complex", "parse_yaml", "REQUIRED"]

HYDROGEN_MASS_AMU = 1.00784


class _Loader(yaml.SafeLoader):
    """Safe loader that also reads exponent floats such as ``1e8`` and ``1.0e9``.

    Plain YAML 1.1 resolution treats those as strings.
    """


_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"""^[-+]?(?:[0-9][0-9_]*)(?:\.[0-9_]*)?[eE][-+]?[0-9]+$"""),
    list("-+0123456789"),
)


def parse_yaml(text: str):
    """Parse YAML or JSON text with :class:`_Loader`."""
    return yaml.load(text, Loader=_Loader)


class _Required:
    def __repr__(self):
        return "REQUIRED"


REQUIRED = _Required()
FILL = object()  # absent block: validate an empty mapping so defaults are filled


def _number(path, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"{path}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigurationError(f"{path}: value must be finite")
    return value


def _positive(path, value):
    value = _number(path, value)
    if not value > 0:
        raise ConfigurationError(f"{path}: must be positive, got {value!r}")
    return value


def _nonnegative(path, value):
    value = _number(path, value)
    if value < 0:
        raise ConfigurationError(f"{path}: must be >= 0, got {value!r}")
    return value


def _integer(path, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigurationError(f"{path}: expected an integer, got {value!r}")
    return int(value)


def _positive_int(path, value):
    value = _integer(path, value)
    if value < 1:
        raise ConfigurationError(f"{path}: must be >= 1, got {value}")
    return value


def _string(path, value):
    if not isinstance(value, str):
        raise ConfigurationError(f"{path}: expected a string, got {value!r}")
    return value


def _choice(*options):
    def check(path, value):
        value = _string(path, value)
        if value not in options:
            raise ConfigurationError(f"{path}: expected one of {options}, got {value!r}")
        return value
    return check


def parse_complex(path, value):
    """A real number or a ``[re, im]`` pair; returned in canonical form."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigurationError(f"{path}: complex values are written [re, im]")
        re, im = _number(path, value[0]), _number(path, value[1])
        return re if im == 0 else [re, im]
    return _number(path, value)


def to_complex(value) -> complex:
    return complex(*value) if isinstance(value, list) else complex(value)


def _list_of(item):
    def check(path, value):
        if not isinstance(value, (list, tuple)):
            raise ConfigurationError(f"{path}: expected a list")
        return [item(f"{path}[{i}]", v) for i, v in enumerate(value)]
    return check


def _block(schema):
    def check(path, value):
        return _validate(path, value, schema)
    return check


def _validate(path, mapping, schema):
    if mapping is None:
        mapping = {}
    if not isinstance(mapping, dict):
        raise ConfigurationError(f"{path}: expected a mapping")
    unknown = sorted(set(mapping) - set(schema))
    if unknown:
        raise ConfigurationError(f"{path}: unknown keys {unknown}")
    out = {}
    for key, (check, default) in schema.items():
        where = f"{path}.{key}" if path else key
        if key in mapping and mapping[key] is not None:
            out[key] = check(where, mapping[key])
        elif default is REQUIRED:
            raise ConfigurationError(f"{where}: required key missing")
        elif default is FILL:
            out[key] = check(where, {})
        else:
            out[key] = copy.deepcopy(default)
    return out


SYSTEM_SCHEMAS = {
    "landau": {"field_gauss": (_positive, REQUIRED)},
    "vibrational": {
        "wavenumber_cm": (_positive, REQUIRED),
        "reduced_mass_amu": (_positive, 7.0),
    },
    "rotational": {
        "reduced_mass_amu": (_positive, REQUIRED),
        "internuclear_distance_angstrom": (_positive, REQUIRED),
    },
    "rydberg": {},
}

BEAM_SCHEMA = {
    "particle": (_choice("electron", "hydrogen"), None),
    "mass_amu": (_positive, None),
    "energy_ev": (_positive, None),
    "parallel_energy_ev": (_positive, None),
    "velocity_cm_s": (_positive, None),
    "quantum_number": (_nonnegative, None),
    "pitch_angle_deg": (_nonnegative, 0.0),
}

GRID_SCHEMA = {
    "label": (_string, ""),
    "position_m": (_number, REQUIRED),
    "coupling": (parse_complex, 1.0),
}

LENGTH_SCHEMA = {
    "label": (_string, ""),
    "length_m": (_positive, REQUIRED),
    "weight": (_number, 1.0),
}

HARMONIC_SCHEMA = {
    "l": (_positive_int, REQUIRED),
    "weight": (parse_complex, 1.0),
    "beta": (parse_complex, 1.0),
}

CHANNEL_SCHEMA = {
    "l_vib": (_integer, REQUIRED),
    "l_rot": (_integer, REQUIRED),
    "weight": (parse_complex, 1.0),
    "gamma": (parse_complex, 1.0),
}

SCHEMA = {
    "beam": (_block(BEAM_SCHEMA), FILL),
    "geometry": (_block({
        "grids": (_list_of(_block(GRID_SCHEMA)), []),
        "lengths": (_list_of(_block(LENGTH_SCHEMA)), []),
    }), FILL),
    "sweep": (_block({
        "energy_min_ev": (_positive, None),
        "energy_max_ev": (_positive, None),
        "samples": (_positive_int, 4000),
        "min_prominence": (_positive, 1e-3),
        "harmonics": (_list_of(_block(HARMONIC_SCHEMA)), [{"l": 1, "weight": 1.0, "beta": 1.0}]),
        "scan_lengths_m": (_list_of(_positive), []),
    }), FILL),
    "dispersion": (_block({
        "harmonics": (_list_of(_positive_int), [1]),
        "quantum_numbers": (_list_of(_nonnegative), []),
    }), FILL),
    "fringes": (_block({
        "separation_min_m": (_number, None),
        "separation_max_m": (_number, None),
        "samples": (_positive_int, 2000),
        "wavenumber_per_m": (_positive, None),
        "min_prominence": (_positive, 1e-3),
        "harmonics": (_list_of(_block(HARMONIC_SCHEMA)), [{"l": 1, "weight": 1.0, "beta": 1.0}]),
        "rotational_wavenumber_per_m": (_positive, None),
        "channels": (_list_of(_block(CHANNEL_SCHEMA)), []),
    }), FILL),
    "evolution": (_block({
        "points": (_positive_int, 1024),
        "domain_length_m": (_positive, 1.0),
        "mode": (_positive_int, 1),
        "gyroaction_js": (_positive, None),
        "gyroaction_hbar": (_positive, None),
        "omega_rad_s": (_positive, None),
        "time_step_s": (_positive, REQUIRED),
        "steps": (_positive_int, REQUIRED),
        "initial": (_block({
            "kind": (_choice("plane_wave", "gaussian"), "plane_wave"),
            "harmonic_index": (_integer, 1),
            "center_m": (_number, 0.0),
            "width_m": (_positive, None),
            "wavenumber_per_m": (_number, 0.0),
        }), FILL),
    }), None),
    "matrix": (_block({
        "perturbation": (_choice("linear", "quadratic", "gaussian"), REQUIRED),
        "strength": (_number, 1.0),
        "width_m": (_positive, None),
        "quantum_number": (_nonnegative, REQUIRED),
        "harmonics": (_list_of(_integer), [0, 1, 2]),
        "mass_kg": (_positive, None),
        "omega_rad_s": (_positive, None),
        "hbar_js": (_positive, None),
    }), None),
    "output": (_block({
        "directory": (_string, None),
        "format": (_choice("json", "csv", "both"), "both"),
    }), FILL),
}


@dataclass(frozen=True)
class RunConfig:
    """Validated, default-filled configuration (all values in input units)."""

    system_kind: str
    system: dict
    beam: dict
    geometry: dict
    sweep: dict
    dispersion: dict
    fringes: dict
    evolution: Any
    matrix: Any
    output: dict = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, mapping) -> "RunConfig":
        if not isinstance(mapping, dict):
            raise ConfigurationError("configuration must be a mapping")
        allowed = {"system"} | set(SCHEMA)
        unknown = sorted(set(mapping) - allowed)
        if unknown:
            raise ConfigurationError(f"unknown top-level keys {unknown}")
        system_block = mapping.get("system")
        if not isinstance(system_block, dict) or not system_block:
            raise ConfigurationError("system: exactly one system block is required")
        if len(system_block) != 1:
            raise ConfigurationError(
                f"system: exactly one system block is required, got {sorted(system_block)}")
        (kind, params), = system_block.items()
        if kind not in SYSTEM_SCHEMAS:
            raise ConfigurationError(
                f"system: unknown system {kind!r}; expected one of {sorted(SYSTEM_SCHEMAS)}")
        system = _validate(f"system.{kind}", params, SYSTEM_SCHEMAS[kind])
        rest = _validate("", {k: v for k, v in mapping.items() if k != "system"}, SCHEMA)
        config = cls(kind, system, **rest)
        config._check_beam()
        return config

    def to_mapping(self) -> dict:
        out = {"system": {self.system_kind: dict(self.system)}}
        for key in SCHEMA:
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    # -- physics objects ------------------------------------------------------

    def _check_beam(self):
        beam = self.beam
        given = [k for k in ("energy_ev", "parallel_energy_ev", "velocity_cm_s")
                 if beam[k] is not None]
        if len(given) > 1:
            raise ConfigurationError(f"beam: give only one of energy/velocity keys, got {given}")
        if beam["particle"] is not None and beam["mass_amu"] is not None:
            raise ConfigurationError("beam: give either particle or mass_amu, not both")
        if beam["pitch_angle_deg"] >= 90.0:
            raise ConfigurationError("beam.pitch_angle_deg: must be below 90")
        if self.system_kind != "landau" and beam["pitch_angle_deg"] != 0.0:
            raise ConfigurationError("beam.pitch_angle_deg: only meaningful for landau systems")

    def build_system(self, constants=CODATA):
        p = self.system
        if self.system_kind == "landau":
            return Landau.from_field(p["field_gauss"], constants)
        if self.system_kind == "vibrational":
            return Vibrational.from_wavenumber(p["wavenumber_cm"],
                                               amu_to_kg(p["reduced_mass_amu"]), constants)
        if self.system_kind == "rotational":
            return Rotational(amu_to_kg(p["reduced_mass_amu"]),
                              angstrom_to_m(p["internuclear_distance_angstrom"]))
        return Rydberg()

    def beam_mass(self, constants=CODATA) -> float:
        beam = self.beam
        if beam["mass_amu"] is not None:
            return amu_to_kg(beam["mass_amu"])
        particle = beam["particle"]
        if particle is None:
            particle = {"landau": "electron", "rydberg": "hydrogen"}.get(self.system_kind)
        if particle == "electron":
            return constants.electron_mass
        if particle == "hydrogen":
            return amu_to_kg(HYDROGEN_MASS_AMU)
        raise ConfigurationError("beam: mass_amu or particle is required for this system")

    def build_beam(self, system=None, constants=CODATA) -> BeamSpec:
        system = system or self.build_system(constants)
        beam = self.beam
        mass = self.beam_mass(constants)
        n = beam["quantum_number"]
        pitch = math.radians(beam["pitch_angle_deg"])
        if self.system_kind == "landau" and n is None:
            if beam["energy_ev"] is None:
                raise ConfigurationError(
                    "beam.quantum_number: required unless energy_ev and pitch angle set it")
            return BeamSpec.injected(system, ev_to_joule(beam["energy_ev"], constants),
                                     pitch, mass, constants)
        if n is None:
            raise ConfigurationError("beam.quantum_number: required key missing")
        if beam["velocity_cm_s"] is not None:
            spec = BeamSpec.from_velocity(system, cm_per_s_to_m_per_s(beam["velocity_cm_s"]),
                                          mass, n, constants)
        elif beam["parallel_energy_ev"] is not None:
            spec = BeamSpec.from_kinetic_energy(system, ev_to_joule(beam["parallel_energy_ev"],
                                                                    constants), mass, n, constants)
        elif beam["energy_ev"] is not None:
            spec = BeamSpec(ev_to_joule(beam["energy_ev"], constants), mass, n)
        else:
            raise ConfigurationError(
                "beam: one of energy_ev, parallel_energy_ev or velocity_cm_s is required")
        return BeamSpec(spec.total_energy, spec.com_mass, spec.central_quantum_number, pitch)


def load_config(path, overrides=()) -> RunConfig:
    """Read, override (``block.key=value`` strings) and validate a configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    try:
        mapping = parse_yaml(text)
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"{path}: not valid YAML/JSON: {exc}") from exc
    if overrides:
        mapping = apply_overrides(mapping if mapping is not None else {}, overrides)
    return RunConfig.from_mapping(mapping if mapping is not None else {})


def apply_overrides(mapping: dict, overrides) -> dict:
    """Apply ``block.key=value`` overrides; values are parsed as YAML scalars."""
    mapping = copy.deepcopy(mapping) if mapping else {}
    for item in overrides or ():
        if "=" not in item:
            raise ConfigurationError(f"override {item!r} is not of the form key.path=value")
        key, raw = item.split("=", 1)
        parts = key.strip().split(".")
        target = mapping
        for part in parts[:-1]:
            target = target.setdefault(part, {})
            if not isinstance(target, dict):
                raise ConfigurationError(f"override {item!r}: {part} is not a block")
        try:
            target[parts[-1]] = parse_yaml(raw)
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"override {item!r}: cannot parse value: {exc}") from exc
    return mapping
