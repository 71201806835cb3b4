"""Shared fixtures: the two reference models and their solved profiles."""

import pytest

import kestenlab as kl


def criterion_line(num: int, ok: bool, detail: str) -> None:
    """One pass/fail line per acceptance criterion (visible with pytest -s)."""
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}",
          flush=True)


@pytest.fixture(scope="session")
def model15():
    return kl.SREModel(kl.LognormalA(-0.25, 1.0 / 3.0), kl.ConstB(1.0))


@pytest.fixture(scope="session")
def model25():
    return kl.SREModel(kl.LognormalA(-0.25, 0.2), kl.ConstB(1.0))


@pytest.fixture(scope="session")
def prof15(model15):
    return kl.solve_profile(model15)


@pytest.fixture(scope="session")
def prof25(model25):
    return kl.solve_profile(model25)


@pytest.fixture(scope="session")
def uniform_model():
    return kl.SREModel(kl.UniformA(2.0), kl.ConstB(1.0))


@pytest.fixture(scope="session")
def uniform_profile(uniform_model):
    return kl.solve_profile(uniform_model)
