import pytest

from macrowave.physcore import CODATA, BeamSpec, Landau, Vibrational, amu_to_kg


@pytest.fixture
def landau_100g():
    return Landau.from_field(100.0)


@pytest.fixture
def electron_beam_500ev(landau_100g):
    """Electron in Landau level 10 with 500 eV of parallel kinetic energy."""
    return BeamSpec.from_kinetic_energy(landau_100g, 500.0 * CODATA.electron_charge,
                                        CODATA.electron_mass, 10)


@pytest.fixture
def diatomic():
    return Vibrational.from_wavenumber(2000.0, amu_to_kg(7.0))


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, title, ok, detail, seconds)``."""

    def record(number, title, ok, detail, seconds=None):
        timing = "" if seconds is None else f" [{seconds:.3f} s]"
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} -- {detail}{timing}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
