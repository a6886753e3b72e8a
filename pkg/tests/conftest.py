"""Pytest configuration and fixtures for tests."""

import os

import pytest

# settings are read at import time, so quiet logging before src is imported
os.environ.setdefault("LOG_LEVEL", "ERROR")
os.environ.setdefault("ARCHIVE_RUNS", "false")

from src.core.scalar import Scalar  # noqa: E402
from src.gallery.builders import gallery  # noqa: E402


@pytest.fixture(scope="session", autouse=True)
def setup_test_environment():
    """Set up test environment variables before any run."""
    os.environ["LOG_LEVEL"] = "ERROR"  # Reduce log noise in tests
    os.environ["ARCHIVE_RUNS"] = "false"
    os.environ["DATABASE_URL"] = "sqlite:///:memory:"

    yield


@pytest.fixture
def sqrt2():
    return Scalar.sqrt(2)


@pytest.fixture
def a_default():
    """a = 1 + sqrt(2)."""
    return Scalar(1) + Scalar.sqrt(2)


@pytest.fixture
def b_default():
    return Scalar(1) / 3


@pytest.fixture(scope="session")
def h_ab():
    return gallery("H_ab")


@pytest.fixture(scope="session")
def h_thm2():
    return gallery("H_thm2")


@pytest.fixture(scope="session")
def h_thm11():
    return gallery("H_thm11")


@pytest.fixture(scope="session")
def taletoti():
    return gallery("taletoti")


@pytest.fixture(scope="session")
def joj5_a():
    return gallery("joj5_A")


@pytest.fixture(scope="session")
def joj5_b():
    return gallery("joj5_B")


@pytest.fixture(scope="session")
def counterexample():
    return gallery("counterexample")


@pytest.fixture(scope="session")
def tent():
    return gallery("tent")


@pytest.fixture(scope="session")
def full_shift():
    return gallery("F4")
