import pathlib

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "homcolor",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("homcolor")

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


def load(name: str):
    from homcolor.serialize import load_presentation_file

    presentation, _ = load_presentation_file(FIXTURES / name)
    return presentation


@pytest.fixture(scope="session")
def assoc_3dim():
    return load("assoc_3dim.json")


@pytest.fixture(scope="session")
def novikov_3dim():
    return load("novikov_3dim.json")


@pytest.fixture(scope="session")
def novikov_4dim():
    return load("novikov_4dim.json")


@pytest.fixture(scope="session")
def hnp_4dim():
    return load("hnp_4dim.json")


@pytest.fixture(scope="session")
def hnp_transposed_4dim():
    return load("hnp_transposed_4dim.json")


@pytest.fixture(scope="session")
def hnp_admissible_4dim():
    return load("hnp_admissible_4dim.json")


@pytest.fixture(scope="session")
def hnp_mult_4dim():
    return load("hnp_admissible_multiplicative_4dim.json")


@pytest.fixture(scope="session")
def hnp_mult_synth_4dim():
    return load("hnp_admissible_mult_synth_4dim.json")


@pytest.fixture(scope="session")
def gd_4dim():
    return load("gd_4dim.json")


@pytest.fixture(scope="session")
def hnp_to_gd_4dim():
    return load("hnp_to_gd_4dim.json")


@pytest.fixture(scope="session")
def gd_mult_4dim():
    return load("gd_multiplicative_4dim.json")


@pytest.fixture(scope="session")
def zero_2dim():
    return load("zero_2dim.json")


@pytest.fixture(scope="session")
def poly_deriv_3dim():
    return load("poly_deriv_3dim.json")
