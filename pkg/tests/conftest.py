from __future__ import annotations

import importlib.resources

import pytest

from flckit import builtin_definition, serialize


@pytest.fixture(scope="session")
def washer_def():
    return builtin_definition()


@pytest.fixture(scope="session")
def washer_text(washer_def) -> str:
    return serialize(washer_def)


@pytest.fixture(scope="session")
def washer_fixture_bytes() -> bytes:
    return (
        importlib.resources.files("flckit")
        .joinpath("data/washer.flc")
        .read_bytes()
    )
