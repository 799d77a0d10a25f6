import math

import pytest
from hypothesis import given, strategies as st

from macrowave.exceptions import DomainError
from macrowave.physcore import (
    CODATA,
    ActionKind,
    BeamSpec,
    Landau,
    PhysicalConstants,
    Rotational,
    Rydberg,
    Vibrational,
    amu_to_kg,
    approximate_energy,
    classical_action,
    effective_frequency,
    gap_excess,
    gyrofrequency,
    internal_energy,
    landau_quantum_number,
    transition_gap,
    wavenumber_to_angular,
)

# CODATA 2022 values, typed in independently of scipy
E_CHARGE = 1.602176634e-19
M_ELECTRON = 9.1093837139e-31
HBAR = 1.054571817e-34

SYSTEMS = [
    Landau(1.758820008e9),
    Vibrational(3.767e14, amu_to_kg(7.0)),
    Rotational(amu_to_kg(7.0), 1.1e-10),
    Rydberg(),
]


def test_constants_match_codata():
    assert CODATA.electron_charge == E_CHARGE
    assert math.isclose(CODATA.electron_mass, M_ELECTRON, rel_tol=1e-9)
    assert math.isclose(CODATA.planck_reduced, HBAR, rel_tol=1e-9)
    assert math.isclose(CODATA.rydberg_energy, 13.605693 * E_CHARGE, rel_tol=1e-15)


def test_constants_reject_nonpositive():
    with pytest.raises(DomainError):
        CODATA.with_hbar(0.0)
    with pytest.raises(DomainError):
        PhysicalConstants(1.0, 1.0, 1.0, float("nan"), 1.0)


def test_gyrofrequency_100g():
    # [DERIVED] Omega = e B / m with B = 100 G = 0.01 T
    assert math.isclose(gyrofrequency(100.0), E_CHARGE * 0.01 / M_ELECTRON, rel_tol=1e-9)


@given(st.floats(1e-3, 1e6))
def test_gyrofrequency_linear_in_field(b):
    assert gyrofrequency(2 * b) == 2 * gyrofrequency(b)


def test_gyrofrequency_rejects_nonpositive_field():
    with pytest.raises(DomainError):
        gyrofrequency(0.0)


def test_wavenumber_conversion():
    # [DERIVED] omega = 2 pi c nu~ with nu~ = 2000 cm^-1 = 2e5 m^-1
    assert math.isclose(wavenumber_to_angular(2000.0), 2 * math.pi * 299792458.0 * 2e5,
                        rel_tol=1e-15)


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: type(s).__name__)
@given(n=st.floats(1.0, 1e6))
def test_internal_energy_increasing(system, n):
    assert internal_energy(system, n + 1) > internal_energy(system, n)


def test_rydberg_energy_n100():
    # [DERIVED] 13.605693 eV / 100^2
    assert math.isclose(internal_energy(Rydberg(), 100), -13.605693 * E_CHARGE / 1e4, rel_tol=1e-15)
    assert internal_energy(Rydberg(), 100) < 0


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: type(s).__name__)
@pytest.mark.parametrize("n", [1e3, 1e4, 1e5])
def test_effective_frequency_is_action_derivative(system, n):
    # [DERIVED] central difference of E(A) at A = n hbar, large-n energy surface
    h = 0.01
    hbar = CODATA.planck_reduced
    dE = approximate_energy(system, n + h) - approximate_energy(system, n - h)
    numeric = dE / (2 * h * hbar)
    assert math.isclose(effective_frequency(system, n), numeric, rel_tol=1e-6)


def test_rotor_exact_vs_approximate_energy():
    rotor = Rotational(amu_to_kg(7.0), 1.1e-10)
    j = 40
    diff = internal_energy(rotor, j) - approximate_energy(rotor, j)
    assert math.isclose(diff, rotor.rotational_constant * CODATA.planck_reduced ** 2 * j,
                        rel_tol=1e-9)


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: type(s).__name__)
@pytest.mark.parametrize("n,l", [(10, 1), (57, 3), (400, 2)])
def test_transition_gap_matches_energy_difference(system, n, l):
    direct = internal_energy(system, n) - internal_energy(system, n - l)
    assert math.isclose(transition_gap(system, n, l), direct, rel_tol=1e-10)


@pytest.mark.parametrize("system", SYSTEMS, ids=lambda s: type(s).__name__)
@pytest.mark.parametrize("n,l", [(10, 1), (57, 3), (400, 2)])
def test_gap_excess_definition(system, n, l):
    gap = transition_gap(system, n, l)
    linear = l * CODATA.planck_reduced * effective_frequency(system, n)
    assert math.isclose(gap / linear - 1.0, gap_excess(system, n, l), rel_tol=1e-7, abs_tol=1e-13)


def test_landau_quantum_number_1kev_100g():
    # [DERIVED] nu = E / (hbar Omega), Omega = e B / m
    omega = E_CHARGE * 0.01 / M_ELECTRON
    nu = landau_quantum_number(1000 * E_CHARGE, gyrofrequency(100.0))
    assert math.isclose(nu, 1000 * E_CHARGE / (HBAR * omega), rel_tol=1e-8)
    assert 1e8 <= nu <= 1e9


def test_classical_action():
    act = classical_action(Landau(1.0), 7)
    assert act.value == 7 * CODATA.planck_reduced
    assert act.kind is ActionKind.GYROACTION
    with pytest.raises(DomainError):
        classical_action(Rydberg(), 0)


@pytest.mark.parametrize("bad", [dict(total_energy=float("inf"), com_mass=1.0, central_quantum_number=1),
                                 dict(total_energy=1.0, com_mass=0.0, central_quantum_number=1),
                                 dict(total_energy=1.0, com_mass=1.0, central_quantum_number=-1),
                                 dict(total_energy=1.0, com_mass=1.0, central_quantum_number=1,
                                      pitch_angle=math.pi / 2)])
def test_beam_spec_invariants(bad):
    with pytest.raises(DomainError):
        BeamSpec(**bad)


def test_injected_beam_sets_level_from_perpendicular_energy():
    system = Landau.from_field(100.0)
    beam = BeamSpec.injected(system, 1000 * E_CHARGE, math.radians(30), M_ELECTRON)
    expected = landau_quantum_number(1000 * E_CHARGE * 0.25, system.gyro_frequency)
    assert math.isclose(beam.central_quantum_number, expected, rel_tol=1e-12)
    with pytest.raises(DomainError):
        BeamSpec.injected(Rydberg(), 1.0, 0.1, 1.0)


def test_rydberg_requires_n_at_least_one():
    with pytest.raises(DomainError):
        internal_energy(Rydberg(), 0)
    with pytest.raises(DomainError):
        effective_frequency(Rotational(1.0, 1.0), 0)
