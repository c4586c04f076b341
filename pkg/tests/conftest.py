import json
from pathlib import Path

import pytest

from buildings.building import Building
from buildings.constructions import cayley_building, fano_building
from buildings.coxeter import dihedral

DATA = Path(__file__).resolve().parents[1] / "data"

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(n: int, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[n] = (passed, detail)
    print(f"criterion {n}: {'PASS' if passed else 'FAIL'} {detail}".rstrip())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


def load_building(name: str) -> Building:
    return Building.from_json(json.loads((DATA / name).read_text()))


@pytest.fixture(scope="session")
def hexagon():
    return load_building("hexagon.json")


@pytest.fixture(scope="session")
def thin_hexagon():
    """Cayley building of I2(3), chambers labelled by ShortLex words."""
    return cayley_building(dihedral(3))


@pytest.fixture(scope="session")
def square():
    return cayley_building(dihedral(2))


@pytest.fixture(scope="session")
def fano():
    return fano_building()
